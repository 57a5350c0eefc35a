#pragma once

#include "shl/scalar.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shl {

struct BasisVector {
	std::string name;
	int degree = 0;
};

struct GradedSpace {
	std::string name;
	std::vector<BasisVector> basis;

	int dim() const { return static_cast<int>(basis.size()); }
	int degree(int i) const { return basis[i].degree; }
	std::vector<int> degrees() const;
	int index_of(const std::string& n) const; // -1 when absent
};

// (V[k])^n = V^{n+k}: a vector of degree d moves to d - k
GradedSpace shift(const GradedSpace& v, int k);
// basis vector of degree d gives a dual vector named "<name>^" of degree -d
GradedSpace dual(const GradedSpace& v);

// sigma stored 0-based: sigma[i] is the original position placed at slot i
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& p);
// v_1...v_n = eps * v_{sigma(1)}...v_{sigma(n)}
int koszul_sign(const Permutation& sigma, const std::vector<int>& degrees);
// increasing inside each consecutive block, lexicographic in images
std::vector<Permutation> unshuffles(const std::vector<int>& block_sizes);

struct NormalMonomial {
	std::vector<int> indices;
	int sign = 1;
};
// nullopt when an odd generator repeats
std::optional<NormalMonomial> normalize_monomial(const std::vector<int>& degrees, std::vector<int> seq);

inline bool odd(int d) { return (d & 1) != 0; }

} // namespace shl
