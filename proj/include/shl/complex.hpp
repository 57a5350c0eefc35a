#pragma once

// Weight-truncated Chevalley-Eilenberg complex O^{<=N}(A) (x) E over Q.

#include "shl/linalg.hpp"
#include "shl/module.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shl {

struct NonzeroCurvature : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct NotACocycle : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct CohomologyResult {
	int degree = 0;
	int dim = 0;
	int cochains = 0, cocycles = 0, boundaries = 0;
	std::vector<Poly<Q>> reps;
	bool exact = false; // same answer for every larger N
};

// z = d(y) + sum coords_i rep_i
struct ClassCoords {
	std::vector<Q> coords;
	Poly<Q> primitive;
};

class TruncatedComplex {
public:
	TruncatedComplex(const Module<Q>& m, int max_weight);

	const Module<Q>& module() const { return m_; }
	int max_weight() const { return N_; }

	// cochains of total degree n: A^vee monomial followed by one module generator
	const std::vector<Mono>& basis(int n) const;
	MatQ differential(int n) const; // C^n -> C^{n+1}
	VecQ to_vec(int n, const Poly<Q>& c) const; // terms above weight N dropped
	Poly<Q> from_vec(int n, const VecQ& v) const;
	Poly<Q> d(const Poly<Q>& c) const; // truncated

	bool d_squared_zero(int n) const;
	// true when the truncation does not change degrees <= n + 1
	bool exact_through(int n) const;

	CohomologyResult cohomology(int n) const;
	// primitive y with d y = z on the truncation; nullopt when the system is inconsistent
	std::optional<Poly<Q>> solve_coboundary(int n, const Poly<Q>& z) const;
	std::optional<ClassCoords> class_coords(int n, const Poly<Q>& z, const CohomologyResult& h) const;

private:
	Module<Q> m_;
	int N_;
	std::vector<Mono> amonos_; // A^vee monomials of weight <= N
	mutable std::map<int, std::vector<Mono>> basis_;
	mutable std::map<int, std::map<Mono, int>> index_;
	mutable std::map<int, MatQ> diff_;

	void build(int n) const;
};

} // namespace shl
