#pragma once

// L-infinity[1] algebras given by brackets, SH Lie pairs with a fixed splitting,
// their canonical modules, and structure checks.

#include "shl/module.hpp"
#include "shl/multilinear.hpp"

#include <string>
#include <vector>

namespace shl {

struct Report {
	std::string name;
	bool ok = true;
	long checked = 0;
	long failures = 0;
	std::vector<std::string> details; // the first few failures

	void fail(const std::string& what);
	void note(const std::string& what) { details.push_back(what); }
	void merge(const Report& o);
};

std::string vec_str(const GradedSpace& sp, const Vec<Q>& v);

// all sorted index tuples of length n from [lo, hi), odd indices never repeated
std::vector<Mono> canonical_tuples(const std::vector<int>& deg, int n, int lo, int hi);

struct LInfty {
	GradedSpace space;
	std::vector<SymMap<Q>> lam; // lam[k] has arity k; lam[0] holds lambda_0 under the empty key

	int kmax() const { return static_cast<int>(lam.size()) - 1; }
	Vec<Q> bracket(const std::vector<Vec<Q>>& args) const;
	Vec<Q> lambda0() const;
	Alphabet dual() const { return dual_alphabet(space); }
	Derivation<Q> q() const { return derivation_from_brackets(space, lam); }
};

std::vector<SymMap<Q>> empty_brackets(const GradedSpace& sp, int kmax);
LInfty linfty_from_derivation(const GradedSpace& sp, const Derivation<Q>& q);
int derivation_arity(const Derivation<Q>& q);

// generalized Jacobi identities on every canonical basis tuple with n <= nmax
// (default 2 k_max - 1)
Report check_jacobi(const LInfty& l, int nmax = -1);

// The basis of L is ordered with A first: indices [0, nA) span A.
struct SHLiePair {
	LInfty l;
	int nA = 0;

	int nB() const { return l.space.dim() - nA; }
	Alphabet lv() const { return l.dual(); }
	Derivation<Q> ql() const { return l.q(); }
	LInfty a() const;
	GradedSpace b_space() const;
	Derivation<Q> qa() const;
};

Report check_pair(const SHLiePair& p);

struct QDecomposition {
	Derivation<Q> qa, delta, r, dperp;
	std::map<int, Derivation<Q>> t; // T_i, i >= 2
	std::vector<int> stray; // B^vee generators with a B^vee-free image
};

QDecomposition decompose_Q(const SHLiePair& p);
Derivation<Q> recompose(const QDecomposition& d);

// part of a polynomial on L^vee with exactly c generators from B^vee
Poly<Q> b_part(const SHLiePair& p, const Poly<Q>& f, int c);
Derivation<Q> delta_of(const SHLiePair& p);

// O(A)-module data of A
Module<Q> base_module(const LInfty& a, const std::string& name, const GradedSpace& sp);
Module<Q> module_from_actions(const LInfty& a, const std::string& name, const GradedSpace& sp,
	const std::vector<SymMap<Q>>& m);
std::vector<SymMap<Q>> module_actions(const Module<Q>& m);

Module<Q> quotient_module(const SHLiePair& p); // B = L/A with m_k = pr_B lambda_k
Module<Q> perp_module(const SHLiePair& p);     // B^vee = A^perp with D^perp
Module<Q> adjoint_module(const LInfty& a);
// J: O(L) -> O(A) (x) L^vee on the alphabet [A^vee, L^vee slot]
Poly<Q> J_map(const SHLiePair& p, const Poly<Q>& f);
Poly<Q> I_map(int nA, const Alphabet& av, const Poly<Q>& f); // de Rham operator of O(A)
Module<Q> lvee_module(const SHLiePair& p); // L^vee with J o Q_L

// module relation on basis tuples plus flatness of Q_A + D
Report check_module(const LInfty& a, const Module<Q>& m, int nmax = -1);

SHLiePair abelian_extension(const LInfty& a, const Module<Q>& m);

// f[k]: S^k(L) -> L', degree 0; f[0] holds f_0 under the empty key
struct MorphismData {
	std::vector<SymMap<Q>> f;
};

struct MorphismVerdict {
	Report multilinear; // f_0 relation and morphism relation
	Report algebra;     // phi o Q_L' = Q_L o phi on generators
	bool agree() const { return multilinear.ok == algebra.ok; }
};

// phi: O(L') -> O(L) as images of the generators of L'^vee
std::vector<Poly<Q>> algebra_map(const MorphismData& f, const LInfty& src, const LInfty& dst);
MorphismData components_of(const std::vector<Poly<Q>>& phi, const LInfty& src, const LInfty& dst);
MorphismVerdict check_morphism(const MorphismData& f, const LInfty& src, const LInfty& dst, int nmax = -1);

} // namespace shl
