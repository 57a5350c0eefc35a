#pragma once

// A-modules as flat connections Q_A + D on O(A) (x) E, tensor towers of modules,
// and O(A)-linear operator cochains between them.

#include "shl/multilinear.hpp"
#include "shl/poly.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace shl {

template <class T, class S>
Poly<T> convert(const Poly<S>& p)
{
	Poly<T> r;
	for (const auto& [m, c] : p)
		add_term(r, m, T(c));
	return r;
}

template <class T, class S>
Derivation<T> convert(const Derivation<S>& d)
{
	Derivation<T> r;
	r.degree = d.degree;
	for (const auto& [g, p] : d.img)
		r.set(g, convert<T>(p));
	return r;
}

// Alphabet is [A^vee (nA generators), module basis]. D maps module generator nA+j to
// a polynomial linear in the module generators.
template <class S>
struct Module {
	std::string name;
	GradedSpace space;
	int nA = 0;
	Alphabet alpha;
	Derivation<S> qa;
	std::map<int, Poly<S>> d;

	int dim() const { return space.dim(); }
	int gen(int j) const { return nA + j; }
	Derivation<S> nabla() const
	{
		Derivation<S> r = qa;
		r.degree = 1;
		for (const auto& [g, p] : d)
			r.set(g, p);
		return r;
	}
};

template <class S>
Module<S> empty_module(const std::string& name, const Alphabet& av, int nA, const Derivation<S>& qa, const GradedSpace& sp)
{
	Module<S> m;
	m.name = name;
	m.space = sp;
	m.nA = nA;
	for (int i = 0; i < nA; ++i)
		m.alpha.add(av.name[i], av.deg[i]);
	for (const auto& b : sp.basis)
		m.alpha.add(b.name, b.degree);
	m.qa = qa;
	m.qa.degree = 1;
	return m;
}

template <class T, class S>
Module<T> convert(const Module<S>& m)
{
	Module<T> r;
	r.name = m.name;
	r.space = m.space;
	r.nA = m.nA;
	r.alpha = m.alpha;
	r.qa = convert<T>(m.qa);
	for (const auto& [g, p] : m.d)
		r.d[g] = convert<T>(p);
	return r;
}

// nabla^2 on every module generator and on A^vee; empty when flat
template <class S>
std::map<int, Poly<S>> flatness_residual(const Module<S>& m)
{
	std::map<int, Poly<S>> res;
	Derivation<S> n = m.nabla();
	for (int g = 0; g < m.alpha.size(); ++g) {
		Poly<S> v = apply(m.alpha, n, apply(m.alpha, n, gen_poly<S>(g)));
		if (!v.empty())
			res[g] = v;
	}
	return res;
}

// D(f_j) = sum_i w_ji f_i  gives  D(f_i^) = sum_j eta_ij f_j^ with
// eta_ij = -(-1)^{|f_i^|} (-1)^{|f_i^||w_ji|} w_ji, so that <., .> is a chain pairing.
template <class S>
Module<S> dual_module(const Module<S>& m)
{
	Module<S> r = empty_module(m.name + "^", m.alpha, m.nA, m.qa, dual(m.space));
	for (const auto& [g, p] : m.d) {
		int j = g - m.nA;
		for (const auto& [mono, c] : p) {
			int i = mono.back() - m.nA;
			Mono w(mono.begin(), mono.end() - 1);
			int gi = -m.space.degree(i);
			int wd = mono_degree(m.alpha, w);
			bool neg = !odd(gi);
			if (odd(gi) && odd(wd))
				neg = !neg;
			Mono out = w;
			out.push_back(m.nA + j);
			add_term(r.d[m.nA + i], out, neg ? -c : c);
		}
	}
	for (auto it = r.d.begin(); it != r.d.end();)
		it = it->second.empty() ? r.d.erase(it) : std::next(it);
	return r;
}

// [A^vee, block_1, ..., block_r] with the connection acting on every block.
template <class S>
struct Tower {
	Alphabet alpha;
	int nA = 0;
	std::vector<int> off, len;
	std::vector<std::string> block_names;
	Derivation<S> nabla;
	std::vector<Mono> tuples; // one generator per block, sorted
	std::map<Mono, int> index;

	int blocks() const { return static_cast<int>(off.size()); }
	int tuple_degree(int t) const { return mono_degree(alpha, tuples[t]); }
	int block_of(int g) const
	{
		for (int b = 0; b < blocks(); ++b)
			if (g >= off[b] && g < off[b] + len[b])
				return b;
		return -1;
	}
};

template <class S>
Poly<S> lift_block(const Module<S>& m, int off, const Alphabet& dst, const Poly<S>& p)
{
	std::vector<int> gmap(m.alpha.size());
	for (int i = 0; i < m.nA; ++i)
		gmap[i] = i;
	for (int j = 0; j < m.dim(); ++j)
		gmap[m.nA + j] = off + j;
	return remap(dst, p, gmap);
}

template <class S>
Tower<S> make_tower(const std::vector<const Module<S>*>& blocks)
{
	if (blocks.empty())
		throw std::invalid_argument("tower without blocks");
	Tower<S> t;
	const Module<S>& first = *blocks.front();
	t.nA = first.nA;
	for (int i = 0; i < first.nA; ++i)
		t.alpha.add(first.alpha.name[i], first.alpha.deg[i]);
	t.nabla = first.qa;
	t.nabla.degree = 1;
	for (const Module<S>* m : blocks) {
		if (m->nA != t.nA)
			throw std::invalid_argument("tower blocks over different bases");
		t.off.push_back(t.alpha.size());
		t.len.push_back(m->dim());
		t.block_names.push_back(m->name);
		for (const auto& b : m->space.basis)
			t.alpha.add(b.name, b.degree);
	}
	for (size_t b = 0; b < blocks.size(); ++b)
		for (const auto& [g, p] : blocks[b]->d)
			t.nabla.set(t.off[b] + g - t.nA, lift_block(*blocks[b], t.off[b], t.alpha, p));
	std::vector<Mono> acc{Mono{}};
	for (size_t b = 0; b < blocks.size(); ++b) {
		std::vector<Mono> next;
		for (const auto& m : acc)
			for (int j = 0; j < t.len[b]; ++j) {
				Mono x = m;
				x.push_back(t.off[b] + j);
				next.push_back(std::move(x));
			}
		acc = std::move(next);
	}
	t.tuples = acc;
	for (size_t i = 0; i < t.tuples.size(); ++i)
		t.index[t.tuples[i]] = static_cast<int>(i);
	return t;
}

template <class S>
std::string tuple_name(const Tower<S>& t, int i)
{
	std::string s;
	for (int g : t.tuples[i]) {
		if (!s.empty())
			s += "(x)";
		s += t.alpha.name[g];
	}
	return s;
}

// Split a tower monomial into its A^vee prefix and its tuple id; -1 when not multilinear.
template <class S>
int split_tower_mono(const Tower<S>& t, const Mono& m, Mono& prefix)
{
	prefix.clear();
	Mono rest;
	for (int g : m)
		(g < t.nA ? prefix : rest).push_back(g);
	auto it = t.index.find(rest);
	return it == t.index.end() ? -1 : it->second;
}

// Polynomial over the tower, multilinear in the blocks, as a module cochain.
template <class S>
Poly<S> tower_to_module(const Tower<S>& t, int nA, const Poly<S>& p)
{
	Poly<S> r;
	Mono prefix;
	for (const auto& [m, c] : p) {
		int id = split_tower_mono(t, m, prefix);
		if (id < 0)
			throw std::invalid_argument("tower polynomial is not block-multilinear");
		prefix.push_back(nA + id);
		add_term(r, prefix, c);
	}
	return r;
}

template <class S>
Poly<S> module_to_tower(const Tower<S>& t, const Poly<S>& p)
{
	Poly<S> r;
	for (const auto& [m, c] : p) {
		Mono out(m.begin(), m.end() - 1);
		const Mono& tu = t.tuples[m.back() - t.nA];
		out.insert(out.end(), tu.begin(), tu.end());
		add_term(r, out, c);
	}
	return r;
}

template <class S>
Module<S> module_from_tower(const Tower<S>& t, const std::string& name)
{
	GradedSpace sp;
	sp.name = name;
	for (size_t i = 0; i < t.tuples.size(); ++i)
		sp.basis.push_back({tuple_name(t, static_cast<int>(i)), t.tuple_degree(static_cast<int>(i))});
	Module<S> m = empty_module(name, t.alpha, t.nA, t.nabla, sp);
	for (size_t i = 0; i < t.tuples.size(); ++i) {
		Poly<S> v = apply(t.alpha, t.nabla, Poly<S>{{t.tuples[i], S(1)}});
		Poly<S> w = tower_to_module(t, t.nA, v);
		if (!w.empty())
			m.d[t.nA + static_cast<int>(i)] = std::move(w);
	}
	m.qa = t.nabla;
	for (int g = t.nA; g < t.alpha.size(); ++g)
		m.qa.img.erase(g);
	return m;
}

template <class S>
Module<S> tensor_module(const Module<S>& a, const Module<S>& b)
{
	return module_from_tower(make_tower<S>({&a, &b}), a.name + "(x)" + b.name);
}

// O(A)-linear map from a module into a tower: source basis index -> tower polynomial.
template <class S>
struct Op {
	int degree = 0;
	std::map<int, Poly<S>> img;

	const Poly<S>* image(int j) const
	{
		auto it = img.find(j);
		return it == img.end() ? nullptr : &it->second;
	}
	void set(int j, Poly<S> p)
	{
		if (p.empty())
			img.erase(j);
		else
			img[j] = std::move(p);
	}
	bool is_zero() const { return img.empty(); }
};

template <class S>
Op<S> operator-(const Op<S>& a, const Op<S>& b)
{
	Op<S> r = a;
	for (const auto& [j, p] : b.img)
		r.set(j, r.img.count(j) ? r.img[j] - p : scaled(p, S(-1)));
	return r;
}

template <class S>
Op<S> operator+(const Op<S>& a, const Op<S>& b)
{
	Op<S> r = a;
	for (const auto& [j, p] : b.img)
		r.set(j, r.img.count(j) ? r.img[j] + p : p);
	return r;
}

template <class S>
Op<S> scaled(const Op<S>& a, const S& c)
{
	Op<S> r;
	r.degree = a.degree;
	for (const auto& [j, p] : a.img)
		r.set(j, scaled(p, c));
	return r;
}

// H(w e) = (-1)^{|H||w|} w H(e). r is a cochain over src.alpha; the result lives on dst.
template <class S>
Poly<S> op_apply(const Module<S>& src, const Alphabet& dst, const Op<S>& h, const Poly<S>& r)
{
	Poly<S> out;
	for (const auto& [m, c] : r) {
		int e = m.back() - src.nA;
		const Poly<S>* im = h.image(e);
		if (!im)
			continue;
		Mono w(m.begin(), m.end() - 1);
		S cc = (odd(h.degree) && odd(mono_degree(src.alpha, w))) ? -c : c;
		axpy(out, S(1), mul(dst, Poly<S>{{w, cc}}, *im));
	}
	return out;
}

// (dH)(e) = nabla^X(H(e)) - (-1)^{|H|} H(D^E e)
template <class S>
Op<S> op_differential(const Module<S>& src, const Tower<S>& tgt, const Op<S>& h)
{
	Op<S> r;
	r.degree = h.degree + 1;
	S sg = odd(h.degree) ? S(-1) : S(1);
	for (int j = 0; j < src.dim(); ++j) {
		Poly<S> v;
		if (const Poly<S>* im = h.image(j))
			v = apply(tgt.alpha, tgt.nabla, *im);
		auto it = src.d.find(src.gen(j));
		if (it != src.d.end())
			axpy(v, -sg, op_apply(src, tgt.alpha, h, it->second));
		r.set(j, std::move(v));
	}
	return r;
}

// Hom(E, X) for a tower X: generator h_{j,t} sends e_j to tuple t.
template <class S>
struct HomModule {
	Module<S> m;
	Tower<S> tgt;
	int src_dim = 0;
	std::vector<std::pair<int, int>> gens; // (source index, tuple)
	std::map<std::pair<int, int>, int> gen_index;

	Poly<S> from_op(const Op<S>& h) const
	{
		Poly<S> r;
		Mono prefix;
		for (const auto& [j, p] : h.img)
			for (const auto& [mono, c] : p) {
				int t = split_tower_mono(tgt, mono, prefix);
				if (t < 0)
					throw std::invalid_argument("operator image is not block-multilinear");
				prefix.push_back(m.nA + gen_index.at({j, t}));
				add_term(r, prefix, c);
			}
		return r;
	}
	Op<S> to_op(const Poly<S>& p, int degree) const
	{
		Op<S> h;
		h.degree = degree;
		for (const auto& [mono, c] : p) {
			auto [j, t] = gens[mono.back() - m.nA];
			Mono out(mono.begin(), mono.end() - 1);
			out.insert(out.end(), tgt.tuples[t].begin(), tgt.tuples[t].end());
			Poly<S> cur = h.img.count(j) ? h.img[j] : Poly<S>{};
			add_term(cur, out, c);
			h.set(j, std::move(cur));
		}
		return h;
	}
};

template <class S>
HomModule<S> hom_module(const Module<S>& src, const Tower<S>& tgt, const std::string& name)
{
	HomModule<S> h;
	h.tgt = tgt;
	h.src_dim = src.dim();
	GradedSpace sp;
	sp.name = name;
	for (int j = 0; j < src.dim(); ++j)
		for (size_t t = 0; t < tgt.tuples.size(); ++t) {
			h.gen_index[{j, static_cast<int>(t)}] = static_cast<int>(h.gens.size());
			h.gens.push_back({j, static_cast<int>(t)});
			sp.basis.push_back({src.space.basis[j].name + "->" + tuple_name(tgt, static_cast<int>(t)),
				tgt.tuple_degree(static_cast<int>(t)) - src.space.degree(j)});
		}
	h.m = empty_module(name, src.alpha, src.nA, src.qa, sp);
	for (size_t g = 0; g < h.gens.size(); ++g) {
		auto [j, t] = h.gens[g];
		Op<S> e;
		e.degree = sp.degree(static_cast<int>(g));
		e.set(j, Poly<S>{{tgt.tuples[t], S(1)}});
		Poly<S> v = h.from_op(op_differential(src, tgt, e));
		if (!v.empty())
			h.m.d[h.m.gen(static_cast<int>(g))] = std::move(v);
	}
	return h;
}

template <class S>
HomModule<S> hom_module(const Module<S>& src, const Module<S>& dst)
{
	return hom_module(src, make_tower<S>({&dst}), "Hom(" + src.name + "," + dst.name + ")");
}

// polynomial over any alphabet whose first nA generators are A^vee
inline int weight(const Mono& m, int nA)
{
	return mono_count_in(m, 0, nA);
}

} // namespace shl
