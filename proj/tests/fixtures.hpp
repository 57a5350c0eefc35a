#pragma once

// Hand-built pairs and modules shared by the unit and acceptance tests.

#include "shl/atiyah.hpp"
#include "shl/random.hpp"

namespace fx {

using namespace shl;

inline GradedSpace space(const std::string& name, std::initializer_list<std::pair<const char*, int>> gens)
{
	GradedSpace s;
	s.name = name;
	for (auto [n, d] : gens)
		s.basis.push_back({n, d});
	return s;
}

inline Poly<Q> term(Mono m, Q c)
{
	Poly<Q> p;
	add_term(p, m, c);
	return p;
}

inline SHLiePair from_q(const GradedSpace& l, int nA, const Derivation<Q>& q)
{
	SHLiePair p;
	p.nA = nA;
	p.l = linfty_from_derivation(l, q);
	return p;
}

// A = span{a1,a2} in degree -1, B = span{b} in degree 0, delta(a_i^) = k_i a1^ a2^ b^
inline SHLiePair k_pair(Q k1, Q k2)
{
	GradedSpace l = space("L", {{"a1", -1}, {"a2", -1}, {"b", 0}});
	Derivation<Q> q;
	q.degree = 1;
	q.set(0, term({0, 1, 2}, k1));
	q.set(1, term({0, 1, 2}, k2));
	return from_q(l, 2, q);
}

// E = span{e} in degree 0 with m_2(a1,e) = -k3 e, m_2(a2,e) = -k4 e
inline Module<Q> k_module(const SHLiePair& p, Q k3, Q k4)
{
	SymMap<Q> m2;
	m2.arity = 1;
	m2.src_deg = {-1, -1};
	m2.has_slot = true;
	m2.slot_deg = {0};
	m2.map_degree = 1;
	m2.add({0, 0}, 0, -k3);
	m2.add({1, 0}, 0, -k4);
	return module_from_actions(p.a(), "E", space("E", {{"e", 0}}), {SymMap<Q>{}, m2});
}

// A = span{a0,a1,c}, B = span{b}; Q_A(a1^) = -a0^a1^, D^perp(b^) = a0^b^,
// delta(xi) = (-1)^{|xi|} Delta(xi) b^ with Delta(a0^) = a1^, Delta(a1^) = a0^c^
inline SHLiePair delta_pair()
{
	GradedSpace l = space("L", {{"a0", -1}, {"a1", -1}, {"c", 0}, {"b", -1}});
	Derivation<Q> q;
	q.degree = 1;
	q.set(0, term({1, 3}, Q(-1)));
	q.set(1, term({0, 1}, Q(-1)) + term({0, 2, 3}, Q(-1)));
	q.set(3, term({0, 3}, Q(1)));
	return from_q(l, 3, q);
}

// g = span{x,y}, [x,y] = y, A = span{x}, everything shifted to degree -1
inline SHLiePair lie_pair()
{
	GradedSpace l = space("L", {{"x", -1}, {"y", -1}});
	SHLiePair p;
	p.nA = 1;
	p.l.space = l;
	p.l.lam = empty_brackets(l, 2);
	p.l.lam[2].add({0, 1}, 1, Q(1));
	return p;
}

// like the delta pair but with a pure differential lambda_1(b) = c, so delta(c^) = b^;
// E = span{e0, e1} with D(e0) = c^ e1 has an action that changes parity
inline SHLiePair cb_pair()
{
	GradedSpace l = space("L", {{"a0", -1}, {"a1", -1}, {"c", 0}, {"b", -1}});
	Derivation<Q> q;
	q.degree = 1;
	q.set(1, term({0, 1}, Q(-1)));
	q.set(2, term({3}, Q(1)));
	return from_q(l, 3, q);
}

inline Module<Q> cb_module(const SHLiePair& p)
{
	Module<Q> e = empty_module<Q>("E", p.a().dual(), p.nA, p.qa(), space("E", {{"e0", 0}, {"e1", 1}}));
	e.d[p.nA] = term({2, p.nA + 1}, Q(1));
	return e;
}

} // namespace fx

namespace fx {

// phi(xi_i) = xi_i + q_i, homogeneous, q_i in generators placed earlier in `order`;
// B^vee images stay in the ideal of B^vee
struct Twist {
	std::vector<Poly<Q>> phi, psi;
};

inline std::vector<Mono> monomials_over(const Alphabet& a, const std::vector<int>& gens, int maxw, int degree)
{
	std::vector<Mono> out;
	Mono cur;
	auto rec = [&](auto&& self, size_t start, int deg) -> void {
		if (deg == degree && !cur.empty())
			out.push_back(cur);
		if (static_cast<int>(cur.size()) == maxw)
			return;
		for (size_t i = start; i < gens.size(); ++i) {
			int g = gens[i];
			if (!cur.empty() && cur.back() == g && odd(a.deg[g]))
				continue;
			cur.push_back(g);
			self(self, i, deg + a.deg[g]);
			cur.pop_back();
		}
	};
	rec(rec, 0, 0);
	for (auto& m : out)
		std::sort(m.begin(), m.end());
	return out;
}

// mix = false: A^vee first, B^vee images are nonlinear in earlier generators.
// mix = true: B^vee is fixed and A^vee images may involve B^vee (a change of splitting).
inline Twist random_twist(std::mt19937& rng, const Alphabet& a, int nA, int terms = 1, bool mix = false)
{
	const int n = a.size();
	Twist t;
	t.phi.resize(n);
	t.psi.resize(n);
	std::vector<int> order;
	for (int i = 0; i < n; ++i)
		order.push_back(mix ? (i + nA) % n : i);
	std::vector<int> seen;
	for (int i : order) {
		Poly<Q> q;
		if (i < nA || !mix) {
			std::vector<Mono> keep;
			for (auto& m : monomials_over(a, seen, 2, a.deg[i])) {
				bool has_b = mono_count_in(m, nA, n) > 0;
				if (i >= nA ? (has_b && m.size() >= 2) : (mix ? has_b : m.size() >= 2))
					keep.push_back(m);
			}
			q = random_poly(rng, keep, terms);
		}
		t.phi[i] = gen_poly<Q>(i) + q;
		// psi(xi_i) = xi_i - psi(q_i); q_i only involves earlier generators
		t.psi[i] = gen_poly<Q>(i) - substitute(a, t.psi, q);
		seen.push_back(i);
	}
	return t;
}

inline Derivation<Q> conjugate(const Alphabet& a, const Twist& t, const Derivation<Q>& q)
{
	Derivation<Q> r;
	r.degree = q.degree;
	for (int i = 0; i < a.size(); ++i) {
		Poly<Q> x = substitute(a, t.psi, gen_poly<Q>(i));
		Poly<Q> y = apply(a, q, x);
		r.set(i, substitute(a, t.phi, y));
	}
	return r;
}

} // namespace fx

namespace fx {

// same connection, every module degree moved by k (flatness does not see the degrees of E)
inline Module<Q> shifted(const Module<Q>& m, int k)
{
	Module<Q> r = m;
	r.name = m.name + "[" + std::to_string(k) + "]";
	r.space = shift(m.space, k);
	for (int j = 0; j < m.dim(); ++j)
		r.alpha.deg[m.nA + j] = r.space.degree(j);
	return r;
}

// a small module over the A of one of the fixed pairs, chosen at random
inline Module<Q> random_module(std::mt19937& rng, const SHLiePair& base)
{
	LInfty a = base.a();
	std::vector<Module<Q>> pool{adjoint_module(a), dual_module(adjoint_module(a))};
	if (base.nA == 3) {
		pool.push_back(quotient_module(base));
		pool.push_back(perp_module(base));
		pool.push_back(cb_module(base));
	} else {
		pool.push_back(k_module(base, random_coeff(rng), random_coeff(rng)));
		pool.push_back(dual_module(k_module(base, random_coeff(rng), random_coeff(rng))));
	}
	std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
	std::uniform_int_distribution<int> sh(-2, 1);
	return shifted(pool[pick(rng)], sh(rng));
}

// abelian extension A + E twisted by a random automorphism preserving the ideal of B^vee
inline SHLiePair random_pair(std::mt19937& rng, bool twist = true, bool need_delta = false, int max_dim = 6)
{
	for (;;) {
		std::uniform_int_distribution<int> which(0, 2);
		int w = which(rng);
		SHLiePair base = w == 0 ? k_pair(random_coeff(rng), random_coeff(rng)) : (w == 1 ? delta_pair() : cb_pair());
		Module<Q> e = random_module(rng, base);
		if (base.nA + e.dim() > max_dim)
			continue;
		SHLiePair p = abelian_extension(base.a(), e);
		if (!twist)
			return p;
		Alphabet a = p.lv();
		Derivation<Q> q = conjugate(a, random_twist(rng, a, p.nA, 2), p.ql());
		q = conjugate(a, random_twist(rng, a, p.nA, 2, true), q);
		if (derivation_arity(q) > 3)
			continue;
		SHLiePair r = from_q(p.l.space, p.nA, q);
		if (need_delta && delta_of(r).img.empty())
			continue;
		return r;
	}
}

} // namespace fx
