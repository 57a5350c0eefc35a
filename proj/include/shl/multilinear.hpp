#pragma once

// Sparse graded-symmetric multilinear maps and the translation between
// bracket families and derivations of the dual polynomial algebra.

#include "shl/graded.hpp"
#include "shl/poly.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace shl {

template <class S>
using Vec = std::map<int, S>;

template <class S>
void add_to(Vec<S>& v, int i, const S& c)
{
	if (is_zero(c))
		return;
	auto it = v.find(i);
	if (it == v.end()) {
		v.emplace(i, c);
		return;
	}
	it->second += c;
	if (is_zero(it->second))
		v.erase(it);
}

template <class S>
void axpy(Vec<S>& y, const S& a, const Vec<S>& x)
{
	for (const auto& [i, c] : x)
		add_to(y, i, a * c);
}

template <class S>
Vec<S> unit_vec(int i)
{
	return Vec<S>{{i, S(1)}};
}

// S^k(source) [x slot] -> target. Keys are canonical sorted source indices, with the
// slot basis index appended when has_slot is set.
template <class S>
struct SymMap {
	int arity = 0; // number of symmetric inputs
	std::vector<int> src_deg;
	bool has_slot = false;
	std::vector<int> slot_deg;
	int map_degree = 0;
	std::map<Mono, Vec<S>> coeffs;

	void add(const Mono& key, int out, const S& c)
	{
		auto& v = coeffs[key];
		add_to(v, out, c);
		if (v.empty())
			coeffs.erase(key);
	}
	const Vec<S>* find(const Mono& key) const
	{
		auto it = coeffs.find(key);
		return it == coeffs.end() ? nullptr : &it->second;
	}
	bool empty() const { return coeffs.empty(); }
};

// Value on a basis tuple given in any order; slot < 0 when the map has no slot.
template <class S>
Vec<S> eval_basis(const SymMap<S>& f, const std::vector<int>& inputs, int slot = -1)
{
	if (static_cast<int>(inputs.size()) != f.arity || (slot >= 0) != f.has_slot)
		throw std::invalid_argument("SymMap eval: arity mismatch");
	auto nm = normalize_monomial(f.src_deg, inputs);
	if (!nm)
		return {};
	Mono key = nm->indices;
	if (slot >= 0)
		key.push_back(slot);
	const Vec<S>* v = f.find(key);
	if (!v)
		return {};
	Vec<S> r;
	axpy(r, S(nm->sign), *v);
	return r;
}

// Multilinear extension. Coefficients are scalars so no extra Koszul signs arise.
template <class S>
Vec<S> eval(const SymMap<S>& f, const std::vector<Vec<S>>& args, const Vec<S>* slot = nullptr)
{
	if (static_cast<int>(args.size()) != f.arity || (slot != nullptr) != f.has_slot)
		throw std::invalid_argument("SymMap eval: arity mismatch");
	Vec<S> out;
	std::vector<int> cur(args.size());
	std::vector<typename Vec<S>::const_iterator> its(args.size());
	for (const auto& a : args)
		if (a.empty())
			return out;
	Vec<S> one{{0, S(1)}};
	const Vec<S>& sl = slot ? *slot : one;
	for (const auto& [si, sc] : sl) {
		for (size_t i = 0; i < args.size(); ++i)
			its[i] = args[i].begin();
		while (true) {
			S c = sc;
			for (size_t i = 0; i < args.size(); ++i) {
				cur[i] = its[i]->first;
				c = c * its[i]->second;
			}
			axpy(out, c, eval_basis(f, cur, slot ? si : -1));
			size_t i = 0;
			for (; i < args.size(); ++i) {
				if (++its[i] != args[i].end())
					break;
				its[i] = args[i].begin();
			}
			if (i == args.size())
				break;
		}
	}
	return out;
}

// Alphabet of V^vee: generator i has degree -|v_i|
Alphabet dual_alphabet(const GradedSpace& v);

// <v_1 ... v_k, P> = iota_{v_1} ... iota_{v_k} P, constant part. us are generator indices.
template <class S>
S pair_left(const Alphabet& a, const std::vector<int>& us, Poly<S> p)
{
	for (auto it = us.rbegin(); it != us.rend(); ++it) {
		p = left_contract(a, *it, p);
		if (p.empty())
			return S(0);
	}
	return constant_term(p);
}

// P contracted on the right by v_1, then v_2, ...
template <class S>
Poly<S> contract_right_seq(const Alphabet& a, Poly<S> p, const std::vector<int>& us)
{
	for (int u : us) {
		p = right_contract(a, p, u);
		if (p.empty())
			break;
	}
	return p;
}

// Brackets read off a degree-1 derivation through the pairing
// <xi, lambda_k(u)> = (-1)^{|xi|+k} <Q(xi), u_1...u_k>.
template <class S>
std::vector<SymMap<S>> brackets_by_pairing(const GradedSpace& L, const Derivation<S>& q, int kmax)
{
	Alphabet a = dual_alphabet(L);
	std::vector<SymMap<S>> lam(kmax + 1);
	for (int k = 0; k <= kmax; ++k) {
		lam[k].arity = k;
		lam[k].src_deg = L.degrees();
		lam[k].map_degree = 1;
	}
	for (const auto& [i, img] : q.img) {
		int xi = a.deg[i];
		for (const auto& [m, c] : img) {
			int k = static_cast<int>(m.size());
			if (k > kmax)
				throw std::invalid_argument("derivation image exceeds k_max");
			int sv = -mono_degree(a, m);
			S val = pair_left(a, m, Poly<S>{{m, c}});
			if (odd(sv) && odd(xi + 1))
				val = -val;
			if (odd(xi + k))
				val = -val;
			lam[k].add(m, i, val);
		}
	}
	return lam;
}

// lambda_k(u) = iota^{-1}([[Q, iota_{u_1}], ..., iota_{u_k}]) on the tuples that can be nonzero.
template <class S>
std::vector<SymMap<S>> brackets_from_derivation(const GradedSpace& L, const Derivation<S>& q, int kmax)
{
	Alphabet a = dual_alphabet(L);
	std::vector<SymMap<S>> lam(kmax + 1);
	for (int k = 0; k <= kmax; ++k) {
		lam[k].arity = k;
		lam[k].src_deg = L.degrees();
		lam[k].map_degree = 1;
	}
	std::map<Mono, bool> keys;
	for (const auto& [i, img] : q.img)
		for (const auto& kv : img)
			keys[kv.first] = true;
	for (const auto& kv : keys) {
		const Mono& us = kv.first;
		int k = static_cast<int>(us.size());
		if (k > kmax)
			throw std::invalid_argument("derivation image exceeds k_max");
		Derivation<S> d = q;
		for (int u : us)
			d = commutator(a, d, contraction_derivation<S>(a, u));
		for (int i = 0; i < a.size(); ++i) {
			const Poly<S>* im = d.image(i);
			if (!im)
				continue;
			S v = constant_term(*im);
			if (odd(L.degree(i)))
				v = -v;
			lam[k].add(us, i, v);
		}
	}
	return lam;
}

// Inverse of brackets_by_pairing.
template <class S>
Derivation<S> derivation_from_brackets(const GradedSpace& L, const std::vector<SymMap<S>>& lam)
{
	Alphabet a = dual_alphabet(L);
	Derivation<S> q;
	q.degree = 1;
	for (const auto& f : lam) {
		if (f.map_degree != 1)
			throw std::invalid_argument("bracket of degree != 1");
		int k = f.arity;
		for (const auto& [m, out] : f.coeffs) {
			int sv = 0;
			for (int u : m)
				sv += L.degree(u);
			S pm = pair_left(a, m, Poly<S>{{m, S(1)}});
			for (const auto& [i, c] : out) {
				int xi = a.deg[i];
				S val = c;
				if (odd(sv) && odd(xi + 1))
					val = -val;
				if (odd(xi + k))
					val = -val;
				Poly<S> p = q.img.count(i) ? q.img[i] : Poly<S>{};
				add_term(p, m, val / pm);
				q.set(i, std::move(p));
			}
		}
	}
	return q;
}

// Actions m_{k+1}: S^k(base) x E -> E and the derivation D^E(e) in O(base)[E].
// The alphabet is [base^vee, E] with E generators starting at offset nb.
// m_{k+1}(u_1..u_k, e) = (-1)^{(|e|+1) *_k + k + 1} D^E(e) contracted on the right by u_1..u_k,
// *_k = |u_1| + .. + |u_k|; the contraction also passes the output generator.
// The sign keeps flatness <=> module relation under odd shifts of E.
template <class S>
std::vector<SymMap<S>> actions_from_derivation(const Alphabet& a, int nb, const std::map<int, Poly<S>>& de, int mmax)
{
	int ne = a.size() - nb;
	std::vector<SymMap<S>> m(mmax + 1);
	std::vector<int> bdeg, edeg;
	for (int i = 0; i < nb; ++i)
		bdeg.push_back(-a.deg[i]);
	for (int j = 0; j < ne; ++j)
		edeg.push_back(a.deg[nb + j]);
	for (int k = 1; k <= mmax; ++k) {
		m[k].arity = k - 1;
		m[k].src_deg = bdeg;
		m[k].has_slot = true;
		m[k].slot_deg = edeg;
		m[k].map_degree = 1;
	}
	for (const auto& [g, img] : de) {
		int j = g - nb;
		for (const auto& [mono, c] : img) {
			Mono us(mono.begin(), mono.end() - 1);
			int k = static_cast<int>(us.size());
			if (k + 1 > mmax)
				throw std::invalid_argument("module derivation exceeds m_max");
			Poly<S> p = contract_right_seq(a, Poly<S>{{mono, c}}, us);
			int st = 0;
			for (int u : us)
				st += bdeg[u];
			bool neg = odd((edeg[j] + 1) * st + k + 1);
			Mono key = us;
			key.push_back(j);
			for (const auto& [rm, rc] : p)
				if (rm.size() == 1 && rm[0] >= nb)
					m[k + 1].add(key, rm[0] - nb, neg ? -rc : rc);
		}
	}
	return m;
}

// coefficient of the single generator g in a linear poly, as a constant poly
template <class S>
Poly<S> right_contract_free(const Poly<S>& p, int g)
{
	Poly<S> r;
	auto it = p.find(Mono{g});
	if (it != p.end())
		add_term(r, Mono{}, it->second);
	return r;
}

template <class S>
std::map<int, Poly<S>> derivation_from_actions(const Alphabet& a, int nb, const std::vector<SymMap<S>>& m)
{
	std::map<int, Poly<S>> de;
	for (const auto& f : m) {
		if (!f.has_slot)
			throw std::invalid_argument("action map without module slot");
		for (const auto& [key, out] : f.coeffs) {
			Mono us(key.begin(), key.end() - 1);
			int j = key.back();
			int k = static_cast<int>(us.size());
			int st = 0;
			for (int u : us)
				st += f.src_deg[u];
			bool neg = odd((f.slot_deg[j] + 1) * st + k + 1);
			for (const auto& [e2, c] : out) {
				Mono mono = us;
				mono.push_back(nb + e2);
				Poly<S> p = contract_right_seq(a, Poly<S>{{mono, S(1)}}, us);
				S r = constant_term(right_contract_free(p, nb + e2));
				if (is_zero(r))
					throw std::invalid_argument("action key vanishes in O(A)");
				S v = c / r;
				add_term(de[nb + j], mono, neg ? -v : v);
			}
		}
	}
	for (auto it = de.begin(); it != de.end();)
		it = it->second.empty() ? de.erase(it) : std::next(it);
	return de;
}

} // namespace shl
