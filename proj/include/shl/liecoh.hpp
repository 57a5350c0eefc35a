#pragma once

// Atiyah operators alpha^E(x) r, the bracket on H(A, B[-2]) and its action on H(A, E[-2]),
// with the homotopy witnesses P (skew-symmetry) and T = delta(alpha^E) (Jacobi).

#include "shl/atiyah.hpp"

#include <string>
#include <vector>

namespace shl {

// x in O(A) (x) B contracted into the block of B^vee generators starting at boff of `a`
Poly<Q> contract_b(const Alphabet& a, int boff, int nA, const Poly<Q>& x, const Poly<Q>& f);

// every A^vee monomial of weight <= maxw times a module generator
std::vector<Poly<Q>> basis_cochains(const Module<Q>& m, int maxw);

// <phi, r> for phi over E^vee and r over E, landing in O(A)
Poly<Q> pair_cochains(const Module<Q>& ev, const Module<Q>& e, const Poly<Q>& phi, const Poly<Q>& r);

struct AtiyahOperator {
	SHLiePair pair;
	Module<Q> b; // x lives on b.alpha
	Module<Q> e;
	AtiyahData data;

	Poly<Q> image(const Poly<Q>& r) const; // alpha(r) on data.tower.alpha
	Poly<Q> operator()(const Poly<Q>& x, const Poly<Q>& r) const; // on e.alpha
	// x contracted into delta(r); for closed x, r: alpha(x)r = (-1)^{|x|} d(primitive(x, r))
	Poly<Q> primitive(const Poly<Q>& x, const Poly<Q>& r) const;
	Poly<Q> d_b(const Poly<Q>& x) const { return apply(b.alpha, b.nabla(), x); }
	Poly<Q> d_e(const Poly<Q>& r) const { return apply(e.alpha, e.nabla(), r); }
};

AtiyahOperator atiyah_operator(const SHLiePair& p, const Module<Q>& e);
Poly<Q> atiyah_operator(const SHLiePair& p, const Module<Q>& e, const Poly<Q>& x, const Poly<Q>& r);

// alpha = [delta, d] on cochains and d(alpha(x)r) = alpha(dx)r + (-1)^{|x|} alpha(x)(dr)
Report operator_checks(const AtiyahOperator& op, int max_weight = 2);

// tensor Leibniz, dual anti-compatibility and the Hom commutator on basis triples
Report leibniz_checks(const SHLiePair& p, const Module<Q>& e, const Module<Q>& f, int max_weight = 3);

struct SkewWitness {
	Op<Q> p;    // B^vee -> [A^vee, B^vee, B^vee]
	Op<Q> sym;  // alpha^{B^vee} + (1 (x) tau) alpha^{B^vee}
	Report rep;
};
SkewWitness skew_witness(const SHLiePair& p);

struct JacobiWitness {
	Op<Q> t;  // E -> [A^vee, B^vee, B^vee, E]; the first B^vee comes from delta
	Report rep;
};
JacobiWitness jacobi_witness(const SHLiePair& p, const Module<Q>& e, int max_weight = 2);

// [x, y] on classes of B[-2] (or x acting on E[-2]); degrees are the shifted ones
struct BracketTable {
	std::string module;
	int n1 = 0, n2 = 0, max_weight = 0;
	std::vector<Poly<Q>> left, right, target; // representatives
	// out[i][j] = coordinates of [left_i, right_j] on target
	std::vector<std::vector<std::vector<Q>>> out;
	std::vector<std::vector<Poly<Q>>> cochains; // raw cochain values
	// alpha(x)r on the bare generators of shifted degrees n1, n2 (not necessarily closed)
	struct Entry {
		int left, right;
		Poly<Q> value;
	};
	std::vector<Entry> generators;
	bool exact = false;
	Report checks;
};

BracketTable bracket_table(const SHLiePair& p, int n1, int n2, int max_weight);
BracketTable action_table(const SHLiePair& p, const Module<Q>& e, int n1, int n2, int max_weight);
BracketTable h0_lie_algebra(const SHLiePair& p, int max_weight);

// for a module morphism phi: E -> F of degree 0,
// alpha^F(x) phi(r) = phi(alpha^E(x) r) + (dW)(x (x) r) with W = delta(phi)
Report functor_check(const SHLiePair& p, const Module<Q>& e, const Module<Q>& f, const Op<Q>& phi, int max_weight = 2);
// closed degree-0 operators E -> F found on the weight-N truncation and verified exactly
std::vector<Op<Q>> module_morphisms(const Module<Q>& e, const Module<Q>& f, int max_weight);

} // namespace shl
