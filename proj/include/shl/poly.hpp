#pragma once

// Super-commutative polynomials over an ordered alphabet of graded generators.
// A monomial is a sorted index list; odd generators never repeat. Products carry
// the Koszul sign of the odd-odd inversions needed to sort.

#include "shl/graded.hpp"
#include "shl/scalar.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace shl {

struct Alphabet {
	std::vector<int> deg;
	std::vector<std::string> name;

	int size() const { return static_cast<int>(deg.size()); }
	int add(const std::string& n, int d)
	{
		deg.push_back(d);
		name.push_back(n);
		return size() - 1;
	}
	// append all generators of another alphabet, returns the offset
	int append(const Alphabet& o)
	{
		int off = size();
		deg.insert(deg.end(), o.deg.begin(), o.deg.end());
		name.insert(name.end(), o.name.begin(), o.name.end());
		return off;
	}
};

using Mono = std::vector<int>;

template <class S>
using Poly = std::map<Mono, S>;

int mono_degree(const Alphabet& a, const Mono& m);
int mono_count_in(const Mono& m, int lo, int hi);
// 0 when the product vanishes, otherwise the sign; product written to out
int mono_mul(const Alphabet& a, const Mono& x, const Mono& y, Mono& out);
std::string mono_str(const Alphabet& a, const Mono& m);

template <class S>
void add_term(Poly<S>& p, const Mono& m, const S& c)
{
	if (is_zero(c))
		return;
	auto it = p.find(m);
	if (it == p.end()) {
		p.emplace(m, c);
		return;
	}
	it->second += c;
	if (is_zero(it->second))
		p.erase(it);
}

template <class S>
void axpy(Poly<S>& y, const S& a, const Poly<S>& x)
{
	for (const auto& [m, c] : x)
		add_term(y, m, a * c);
}

template <class S>
Poly<S> operator+(Poly<S> a, const Poly<S>& b)
{
	axpy(a, S(1), b);
	return a;
}

template <class S>
Poly<S> operator-(Poly<S> a, const Poly<S>& b)
{
	axpy(a, S(-1), b);
	return a;
}

template <class S>
Poly<S> scaled(const Poly<S>& p, const S& c)
{
	Poly<S> r;
	if (is_zero(c))
		return r;
	for (const auto& [m, v] : p)
		add_term(r, m, v * c);
	return r;
}

template <class S>
Poly<S> gen_poly(int g)
{
	return Poly<S>{{Mono{g}, S(1)}};
}

template <class S>
Poly<S> const_poly(const S& c)
{
	Poly<S> r;
	add_term(r, Mono{}, c);
	return r;
}

template <class S>
Poly<S> mul(const Alphabet& a, const Poly<S>& x, const Poly<S>& y)
{
	Poly<S> r;
	Mono out;
	for (const auto& [mx, cx] : x)
		for (const auto& [my, cy] : y) {
			int s = mono_mul(a, mx, my, out);
			if (s != 0)
				add_term(r, out, s > 0 ? cx * cy : -(cx * cy));
		}
	return r;
}

template <class S>
Poly<S> filter(const Poly<S>& p, const std::function<bool(const Mono&)>& keep)
{
	Poly<S> r;
	for (const auto& [m, c] : p)
		if (keep(m))
			r.emplace(m, c);
	return r;
}

// number of generators of m inside [lo,hi)
template <class S>
Poly<S> part_with_count(const Poly<S>& p, int lo, int hi, int count)
{
	return filter<S>(p, [&](const Mono& m) { return mono_count_in(m, lo, hi) == count; });
}

template <class S>
int poly_degree(const Alphabet& a, const Poly<S>& p)
{
	return p.empty() ? 0 : mono_degree(a, p.begin()->first);
}

template <class S>
bool homogeneous(const Alphabet& a, const Poly<S>& p)
{
	if (p.empty())
		return true;
	int d = poly_degree(a, p);
	for (const auto& kv : p)
		if (mono_degree(a, kv.first) != d)
			return false;
	return true;
}

template <class S>
std::string poly_str(const Alphabet& a, const Poly<S>& p)
{
	if (p.empty())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (const auto& [m, c] : p) {
		if (!first)
			os << " + ";
		first = false;
		os << c;
		if (!m.empty())
			os << "*" << mono_str(a, m);
	}
	return os.str();
}

// Derivation given by generator images; generators absent from img map to zero.
template <class S>
struct Derivation {
	int degree = 0;
	std::map<int, Poly<S>> img;

	const Poly<S>* image(int g) const
	{
		auto it = img.find(g);
		return it == img.end() ? nullptr : &it->second;
	}
	void set(int g, Poly<S> p)
	{
		if (p.empty())
			img.erase(g);
		else
			img[g] = std::move(p);
	}
	bool is_zero() const
	{
		for (const auto& kv : img)
			if (!kv.second.empty())
				return false;
		return true;
	}
};

template <class S>
Poly<S> apply(const Alphabet& a, const Derivation<S>& d, const Poly<S>& p)
{
	Poly<S> r;
	Mono left, tmp, out;
	for (const auto& [m, c] : p) {
		int pre = 0;
		for (size_t i = 0; i < m.size(); ++i) {
			const Poly<S>* im = d.image(m[i]);
			if (im) {
				left.assign(m.begin(), m.begin() + i);
				Mono right(m.begin() + i + 1, m.end());
				S base = odd(d.degree) && odd(pre) ? -c : c;
				for (const auto& [mi, ci] : *im) {
					int s1 = mono_mul(a, left, mi, tmp);
					if (!s1)
						continue;
					int s2 = mono_mul(a, tmp, right, out);
					if (!s2)
						continue;
					add_term(r, out, (s1 * s2 > 0) ? base * ci : -(base * ci));
				}
			}
			pre += a.deg[m[i]];
		}
	}
	return r;
}

template <class S>
Derivation<S> operator+(Derivation<S> x, const Derivation<S>& y)
{
	for (const auto& [g, p] : y.img)
		x.set(g, x.img.count(g) ? x.img[g] + p : p);
	return x;
}

template <class S>
Derivation<S> scaled(const Derivation<S>& d, const S& c)
{
	Derivation<S> r;
	r.degree = d.degree;
	for (const auto& [g, p] : d.img)
		r.set(g, scaled(p, c));
	return r;
}

template <class S>
Derivation<S> operator-(const Derivation<S>& x, const Derivation<S>& y)
{
	return x + scaled(y, S(-1));
}

// [D1,D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1
template <class S>
Derivation<S> commutator(const Alphabet& a, const Derivation<S>& d1, const Derivation<S>& d2)
{
	Derivation<S> r;
	r.degree = d1.degree + d2.degree;
	S sg = (odd(d1.degree) && odd(d2.degree)) ? S(-1) : S(1);
	for (int g = 0; g < a.size(); ++g) {
		Poly<S> v;
		if (auto im = d2.image(g))
			v = apply(a, d1, *im);
		if (auto im = d1.image(g))
			axpy(v, -sg, apply(a, d2, *im));
		r.set(g, std::move(v));
	}
	return r;
}

// Algebra morphism sending generator g of src to images[g] (a poly over dst).
template <class S>
Poly<S> substitute(const Alphabet& dst, const std::vector<Poly<S>>& images, const Poly<S>& p)
{
	Poly<S> r;
	for (const auto& [m, c] : p) {
		Poly<S> acc = const_poly(c);
		for (int g : m) {
			acc = mul(dst, acc, images[g]);
			if (acc.empty())
				break;
		}
		axpy(r, S(1), acc);
	}
	return r;
}

// Rename generators (gmap[g] in dst), re-sorting with the Koszul sign.
template <class S>
Poly<S> remap(const Alphabet& dst, const Poly<S>& p, const std::vector<int>& gmap)
{
	Poly<S> r;
	for (const auto& [m, c] : p) {
		std::vector<int> seq;
		seq.reserve(m.size());
		for (int g : m)
			seq.push_back(gmap[g]);
		auto nm = normalize_monomial(dst.deg, seq);
		if (nm)
			add_term(r, nm->indices, nm->sign > 0 ? c : -c);
	}
	return r;
}

// iota_v for v dual to generator g: derivation of degree -deg(g), iota_v(xi_g) = (-1)^{deg g}
template <class S>
Derivation<S> contraction_derivation(const Alphabet& a, int g)
{
	Derivation<S> d;
	d.degree = -a.deg[g];
	d.set(g, const_poly(odd(a.deg[g]) ? S(-1) : S(1)));
	return d;
}

template <class S>
Poly<S> left_contract(const Alphabet& a, int g, const Poly<S>& p)
{
	return apply(a, contraction_derivation<S>(a, g), p);
}

// (xi eta) contracted on the right by v: (-1)^{|v||eta|}(xi.v) eta + xi (eta.v)
template <class S>
Poly<S> right_contract(const Alphabet& a, const Poly<S>& p, int g)
{
	Poly<S> r;
	bool vodd = odd(a.deg[g]);
	for (const auto& [m, c] : p) {
		int post = 0;
		for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) {
			if (m[i] == g) {
				Mono mm(m);
				mm.erase(mm.begin() + i);
				add_term(r, mm, (vodd && odd(post)) ? -c : c);
			}
			post += a.deg[m[i]];
		}
	}
	return r;
}

template <class S>
S constant_term(const Poly<S>& p)
{
	auto it = p.find(Mono{});
	return it == p.end() ? S(0) : it->second;
}

} // namespace shl
