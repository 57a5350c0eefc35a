#include "shl/deform.hpp"

#include "shl/complex.hpp"
#include "shl/linalg.hpp"
#include "shl/random.hpp"

namespace shl {

namespace {

int n_l(const SHLiePair& p) { return p.l.space.dim(); }

int b_count(const SHLiePair& p, const Mono& m) { return mono_count_in(m, p.nA, n_l(p)); }

Derivation<Q> weight_derivation(const SHLiePair& p)
{
	Derivation<Q> e;
	for (int g = p.nA; g < n_l(p); ++g)
		e.set(g, gen_poly<Q>(g));
	return e;
}

// the part of every image with exactly c generators from B^vee
template <class S>
Derivation<S> count_part(const SHLiePair& p, const Derivation<S>& d, bool on_a, int c)
{
	Derivation<S> out;
	out.degree = d.degree;
	for (const auto& [g, f] : d.img)
		if ((g < p.nA) == on_a)
			out.set(g, filter<S>(f, [&](const Mono& m) { return b_count(p, m) == c; }));
	return out;
}

Op<Q> apply_to_connection(const SHLiePair& p, const Module<Q>& e, const Derivation<Q>& d, int degree)
{
	Connection c = trivial_connection(p, e);
	Op<Q> a;
	a.degree = degree;
	for (const auto& [g, f] : c.m.d)
		a.set(g - n_l(p), apply(c.m.alpha, d, f));
	return a;
}

std::string der_str(const Alphabet& a, const Derivation<Q>& d)
{
	std::string s;
	for (const auto& [g, f] : d.img)
		s += (s.empty() ? "" : "; ") + a.name[g] + " -> " + poly_str(a, f);
	return s.size() > 200 ? s.substr(0, 200) + "..." : s;
}

} // namespace

Derivation<Q> GaugeMap::lambda() const
{
	Derivation<Q> l;
	for (const auto& [k, d] : psi)
		l = l + d;
	l.degree = 0;
	return l;
}

Derivation<Q> GaugeMap::psi1() const
{
	auto it = psi.find(1);
	return it == psi.end() ? Derivation<Q>{} : it->second;
}

DeformationParts decompose_plus(const SHLiePair& p, const Deformation& d)
{
	DeformationParts out;
	out.delta.degree = out.r.degree = 1;
	for (const auto& [g, f] : d.q_plus.img) {
		if (g < p.nA) {
			out.delta.set(g, b_part(p, f, 1));
			out.r.set(g, filter<Q>(f, [&](const Mono& m) { return b_count(p, m) >= 2; }));
		} else {
			for (const auto& [m, c] : f) {
				auto& t = out.t[b_count(p, m)];
				t.degree = 1;
				Poly<Q> cur = t.img.count(g) ? t.img[g] : Poly<Q>{};
				add_term(cur, m, c);
				t.set(g, std::move(cur));
			}
		}
	}
	return out;
}

Derivation<QH> deformed_q(const SHLiePair& p, const Deformation& d)
{
	Derivation<QH> q = convert<QH>(p.ql());
	Derivation<QH> plus = convert<QH>(d.q_plus);
	return q + scaled(plus, QH::hbar());
}

Report check_compatible(const SHLiePair& p, const Deformation& d)
{
	Report rep;
	rep.name = "compatibility of " + d.name;
	const Alphabet lv = p.lv();
	for (const auto& [g, f] : d.q_plus.img) {
		++rep.checked;
		if (!homogeneous(lv, f) || poly_degree(lv, f) != lv.deg[g] + 1)
			rep.fail("Q_+(" + lv.name[g] + ") is not of degree " + std::to_string(lv.deg[g] + 1));
		const int need = g < p.nA ? 1 : 2;
		Poly<Q> bad = filter<Q>(f, [&](const Mono& m) { return b_count(p, m) < need; });
		if (!bad.empty())
			rep.fail(std::string(g < p.nA ? "A is deformed" : "the module B is deformed") + " at " + lv.name[g] +
				": " + poly_str(lv, bad));
	}
	Derivation<Q> ql = p.ql();
	Derivation<Q> c = commutator(lv, ql, d.q_plus);
	++rep.checked;
	if (!c.is_zero())
		rep.fail("[Q_L, Q_+] != 0: " + der_str(lv, c));

	// the same over dual numbers
	Derivation<QH> qh = deformed_q(p, d);
	Derivation<QH> sq = commutator(lv, qh, qh);
	++rep.checked;
	bool soul = false, body = false;
	for (const auto& [g, f] : sq.img)
		for (const auto& [m, x] : f) {
			body = body || !is_zero(x.body);
			soul = soul || !is_zero(x.soul);
		}
	if (body || soul != !c.is_zero())
		rep.fail("Q(h)^2 over dual numbers disagrees with [Q_L, Q_+]");

	// delta_+ read off over dual numbers matches the direct split
	++rep.checked;
	Derivation<QH> d1 = count_part(p, qh, true, 1);
	DeformationParts parts = decompose_plus(p, d);
	Derivation<Q> delta = delta_of(p);
	for (int g = 0; g < p.nA; ++g) {
		Poly<Q> b, s;
		if (auto* f = d1.image(g))
			for (const auto& [m, x] : *f) {
				add_term(b, m, x.body);
				add_term(s, m, x.soul);
			}
		Poly<Q> want_b = delta.image(g) ? *delta.image(g) : Poly<Q>{};
		Poly<Q> want_s = parts.delta.image(g) ? *parts.delta.image(g) : Poly<Q>{};
		if (!(b - want_b).empty() || !(s - want_s).empty())
			rep.fail("delta + h delta_+ split disagrees at " + lv.name[g]);
	}
	return rep;
}

Report check_gauge_map(const SHLiePair& p, const GaugeMap& g)
{
	Report rep;
	rep.name = "gauge map " + g.name;
	const Alphabet lv = p.lv();
	for (const auto& [k, d] : g.psi) {
		if (k < 1)
			rep.fail("Psi_" + std::to_string(k) + " is not allowed");
		for (const auto& [x, f] : d.img) {
			++rep.checked;
			if (x >= p.nA)
				rep.fail("Psi_" + std::to_string(k) + " moves " + lv.name[x] + ", which lies in B^vee");
			if (!homogeneous(lv, f) || poly_degree(lv, f) != lv.deg[x])
				rep.fail("Psi_" + std::to_string(k) + "(" + lv.name[x] + ") is not of degree 0");
			for (const auto& [m, c] : f)
				if (b_count(p, m) != k) {
					rep.fail("Psi_" + std::to_string(k) + "(" + lv.name[x] + ") has a term outside O(A) (x) S^" +
						std::to_string(k) + "(B^vee): " + mono_str(lv, m));
					break;
				}
		}
	}
	return rep;
}

Report check_gauge(const SHLiePair& p, const Deformation& d1, const Deformation& d2, const GaugeMap& g)
{
	Report rep;
	rep.name = "gauge " + g.name + ": " + d1.name + " ~ " + d2.name;
	rep.merge(check_gauge_map(p, g));
	const Alphabet lv = p.lv();
	Derivation<Q> res = d1.q_plus - d2.q_plus - commutator(lv, p.ql(), g.lambda());
	rep.checked += n_l(p);
	for (const auto& [x, f] : res.img)
		rep.fail("Q_+ - Qbar_+ - [Q_L, lambda] at " + lv.name[x] + ": " + poly_str(lv, f));
	return rep;
}

Deformation inner_deformation(const SHLiePair& p, const GaugeMap& g, const std::string& name)
{
	Deformation d;
	d.name = name;
	d.q_plus = commutator(p.lv(), p.ql(), g.lambda());
	d.q_plus.degree = 1;
	return d;
}

Deformation weight_deformation(const SHLiePair& p, const std::string& name)
{
	Deformation d;
	d.name = name;
	d.q_plus = commutator(p.lv(), p.ql(), weight_derivation(p));
	d.q_plus.degree = 1;
	return d;
}

DeformedAtiyah deformed_atiyah(const SHLiePair& p, const Module<Q>& e, const Deformation& d)
{
	DeformedAtiyah out;
	out.rep.name = "deformed atiyah " + e.name + " by " + d.name;
	out.rep.merge(check_compatible(p, d));
	out.data.perp = perp_module(p);
	out.data.tower = atiyah_tower(p, e);
	out.body = alpha_by_operator(p, e);
	out.data.op = out.body;
	out.soul = apply_to_connection(p, e, decompose_plus(p, d).delta, 2);

	out.cocycle.degree = 2;
	for (int j = 0; j < e.dim(); ++j) {
		Poly<QH> v = convert<QH>(out.body.image(j) ? *out.body.image(j) : Poly<Q>{});
		if (auto* s = out.soul.image(j))
			v = v + scaled(convert<QH>(*s), QH::hbar());
		out.cocycle.set(j, std::move(v));
	}
	Report soul = check_cocycle(p, e, out.soul);
	soul.name = "soul cocycle";
	out.rep.merge(soul);

	// closed for the h-extended differential
	Module<QH> eh = convert<QH>(e), ph = convert<QH>(out.data.perp);
	Tower<QH> th = make_tower<QH>({&ph, &eh});
	Op<QH> dc = op_differential(eh, th, out.cocycle);
	out.rep.checked += e.dim();
	for (const auto& [j, v] : dc.img)
		out.rep.fail("d(alpha + h alpha_+) on " + e.space.basis[j].name + " is nonzero");
	return out;
}

GaugeWitness verify_gauge_invariance(const SHLiePair& p, const Module<Q>& e, const Deformation& d1,
	const Deformation& d2, const GaugeMap& g)
{
	Report gauge = check_gauge(p, d1, d2, g);
	if (!gauge.ok)
		throw GaugeCheckFailed(gauge.details.empty() ? gauge.name : gauge.details.front());
	GaugeWitness out;
	out.rep.name = "gauge invariance on " + e.name;
	out.rep.merge(gauge);
	const Alphabet lv = p.lv();
	Derivation<Q> psi1 = g.psi1();

	// delta_+ - deltabar_+ = Q_A Psi_1 - Psi_1 Q_A + D^perp Psi_1 on A^vee
	Derivation<Q> qa = p.qa(), dperp = decompose_Q(p).dperp;
	Derivation<Q> dd = decompose_plus(p, d1).delta - decompose_plus(p, d2).delta;
	for (int x = 0; x < p.nA; ++x) {
		++out.rep.checked;
		Poly<Q> psi = psi1.image(x) ? *psi1.image(x) : Poly<Q>{};
		Poly<Q> qx = qa.image(x) ? *qa.image(x) : Poly<Q>{};
		Poly<Q> rhs = apply(lv, qa, psi) - apply(lv, psi1, qx) + apply(lv, dperp, psi);
		Poly<Q> lhs = dd.image(x) ? *dd.image(x) : Poly<Q>{};
		if (!(lhs - rhs).empty())
			out.rep.fail("delta_+ - deltabar_+ differs from [Q_A + D^perp, Psi_1] at " + lv.name[x]);
	}

	DeformedAtiyah a1 = deformed_atiyah(p, e, d1), a2 = deformed_atiyah(p, e, d2);
	out.rep.merge(a1.rep);
	out.rep.merge(a2.rep);
	out.w = apply_to_connection(p, e, psi1, 1);
	out.dw = op_differential(e, a1.data.tower, out.w);
	out.difference = a1.soul - a2.soul;
	out.rep.checked += e.dim();
	Op<Q> res = out.difference - out.dw;
	for (const auto& [j, v] : res.img)
		out.rep.fail("alpha - alphabar != h d W on " + e.space.basis[j].name + ": " + poly_str(a1.data.tower.alpha, v));
	return out;
}

Report dual_cohomology_check(const SHLiePair& p, const Module<Q>& e, int degree, int max_weight)
{
	Report rep;
	rep.name = "cohomology over dual numbers";
	HomModule<Q> h = atiyah_hom(p, e);
	TruncatedComplex c(h.m, max_weight);
	Module<QH> mh = convert<QH>(h.m);
	Derivation<QH> nb = mh.nabla();
	// d over Q[h] in the basis {x, h x}; rows split into body and soul coordinates
	auto dual_d = [&](int n) {
		const auto& src = c.basis(n);
		const auto& dst = c.basis(n + 1);
		std::map<Mono, int> ix;
		for (size_t i = 0; i < dst.size(); ++i)
			ix[dst[i]] = static_cast<int>(i);
		const Eigen::Index rows = static_cast<Eigen::Index>(2 * dst.size());
		MatQ d = zero_mat(rows, static_cast<Eigen::Index>(2 * src.size()));
		for (size_t j = 0; j < src.size(); ++j)
			for (int s = 0; s < 2; ++s) {
				QH unit = s ? QH::hbar() : QH(1);
				Poly<QH> img = apply(mh.alpha, nb, Poly<QH>{{src[j], unit}});
				for (const auto& [m, x] : img) {
					if (weight(m, h.m.nA) > max_weight)
						continue;
					const Eigen::Index r = ix.at(m), col = static_cast<Eigen::Index>(2 * j + s);
					d(2 * r, col) += x.body;
					d(2 * r + 1, col) += x.soul;
				}
			}
		return d;
	};
	auto dim = [&](const MatQ& out, const MatQ& in) {
		return static_cast<long>(out.cols()) - (out.rows() && out.cols() ? rank(out) : 0) -
			(in.rows() && in.cols() ? rank(in) : 0);
	};
	long over_q = dim(c.differential(degree), c.differential(degree - 1));
	long over_h = dim(dual_d(degree), dual_d(degree - 1));
	++rep.checked;
	rep.note("degree " + std::to_string(degree) + ": dim over Q = " + std::to_string(over_q) +
		", over Q[h] as a Q-space = " + std::to_string(over_h));
	if (over_h != 2 * over_q)
		rep.fail("dimension over dual numbers is not twice the rational one");
	return rep;
}

GaugeMap random_gauge_map(std::mt19937& rng, const SHLiePair& p, int kmax, int terms)
{
	GaugeMap g;
	g.name = "random";
	const Alphabet lv = p.lv();
	for (int k = 1; k <= kmax; ++k) {
		Derivation<Q> d;
		for (int x = 0; x < p.nA; ++x) {
			std::vector<Mono> pool;
			for (auto& m : monomials_of_degree(lv, 0, n_l(p), k + 1, lv.deg[x]))
				if (b_count(p, m) == k)
					pool.push_back(m);
			d.set(x, random_poly(rng, pool, terms));
		}
		if (!d.is_zero())
			g.psi[k] = d;
	}
	return g;
}

} // namespace shl
