#include "shl/atiyah.hpp"
#include "shl/random.hpp"

#include <algorithm>

namespace shl {

namespace {

int n_l(const SHLiePair& p) { return p.l.space.dim(); }

bool same_op(const Op<Q>& a, const Op<Q>& b)
{
	return (a - b).is_zero();
}

std::string op_str(const Module<Q>& src, const Alphabet& dst, const Op<Q>& h)
{
	std::string s;
	for (const auto& [j, p] : h.img) {
		if (!s.empty())
			s += "; ";
		s += src.space.basis[j].name + " -> " + poly_str(dst, p);
	}
	return s.empty() ? "0" : s;
}

// a module whose alphabet is an arbitrary tower prefix followed by one block
Module<Q> frame(const Alphabet& a, int block_off)
{
	Module<Q> m;
	m.alpha = a;
	m.nA = block_off;
	return m;
}

} // namespace

Poly<Q> lift_to_L(const SHLiePair& p, const Module<Q>& e, const Poly<Q>& f)
{
	Alphabet dst = p.lv();
	for (int j = 0; j < e.dim(); ++j)
		dst.add(e.alpha.name[e.gen(j)], e.alpha.deg[e.gen(j)]);
	std::vector<int> gmap(e.alpha.size());
	for (int i = 0; i < e.nA; ++i)
		gmap[i] = i;
	for (int j = 0; j < e.dim(); ++j)
		gmap[e.gen(j)] = n_l(p) + j;
	return remap(dst, f, gmap);
}

Connection trivial_connection(const SHLiePair& p, const Module<Q>& e)
{
	return perturbed_connection(p, e, {});
}

Connection perturbed_connection(const SHLiePair& p, const Module<Q>& e, const std::map<int, Poly<Q>>& extra)
{
	if (e.nA != p.nA)
		throw ExtensionMismatch("module " + e.name + " is not over A");
	Connection c;
	c.m = empty_module<Q>("nabla^" + e.name, p.lv(), n_l(p), p.ql(), e.space);
	for (const auto& [g, f] : e.d) {
		Poly<Q> v = lift_to_L(p, e, f);
		if (!v.empty())
			c.m.d[n_l(p) + g - e.nA] = v;
	}
	for (const auto& [g, f] : extra) {
		Poly<Q> v = c.m.d.count(g) ? c.m.d[g] + f : f;
		if (v.empty())
			c.m.d.erase(g);
		else
			c.m.d[g] = v;
	}
	return c;
}

void require_extends(const SHLiePair& p, const Module<Q>& e, const Connection& c)
{
	const int nL = n_l(p);
	for (int j = 0; j < e.dim(); ++j) {
		Poly<Q> want;
		if (auto it = e.d.find(e.gen(j)); it != e.d.end())
			want = lift_to_L(p, e, it->second);
		Poly<Q> have;
		if (auto it = c.m.d.find(nL + j); it != c.m.d.end())
			have = b_part(p, it->second, 0);
		if (!(have - want).empty())
			throw ExtensionMismatch("connection does not restrict to D^{A,E} on " + e.space.basis[j].name);
	}
}

std::map<int, Poly<Q>> curvature(const Connection& c)
{
	std::map<int, Poly<Q>> r;
	Derivation<Q> n = c.m.nabla();
	for (int j = 0; j < c.m.dim(); ++j) {
		Poly<Q> v = apply(c.m.alpha, n, apply(c.m.alpha, n, gen_poly<Q>(c.m.gen(j))));
		if (!v.empty())
			r[j] = v;
	}
	return r;
}

Report bianchi(const Connection& c)
{
	Report rep;
	rep.name = "bianchi";
	Op<Q> r;
	r.degree = 2;
	for (auto& [j, v] : curvature(c))
		r.set(j, v);
	Tower<Q> t = make_tower<Q>({&c.m});
	Op<Q> res = op_differential(c.m, t, r);
	rep.checked = c.m.dim();
	for (const auto& [j, v] : res.img)
		rep.fail("on " + c.m.space.basis[j].name + ": " + poly_str(t.alpha, v));
	return rep;
}

Tower<Q> atiyah_tower(const SHLiePair& p, const Module<Q>& e)
{
	Module<Q> perp = perp_module(p);
	return make_tower<Q>({&perp, &e});
}

Op<Q> alpha_by_curvature(const SHLiePair& p, const Module<Q>& e, const Connection& c)
{
	(void)e;
	Op<Q> a;
	a.degree = 2;
	for (auto& [j, v] : curvature(c))
		a.set(j, b_part(p, v, 1));
	return a;
}

Op<Q> alpha_by_operator(const SHLiePair& p, const Module<Q>& e)
{
	Connection c = trivial_connection(p, e);
	Derivation<Q> delta = delta_of(p);
	Op<Q> a;
	a.degree = 2;
	for (const auto& [g, f] : c.m.d)
		a.set(g - n_l(p), apply(c.m.alpha, delta, f));
	return a;
}

int alpha_kmax(const SHLiePair& p, const Module<Q>& e)
{
	int mmax = static_cast<int>(module_actions(e).size()) - 1;
	return std::max(0, p.l.kmax() + mmax - 3);
}

namespace {
SymMap<Q> alpha_shell(const SHLiePair& p, const Module<Q>& e, int k)
{
	SymMap<Q> f;
	f.arity = k;
	for (int i = 0; i < p.nA; ++i)
		f.src_deg.push_back(p.l.space.degree(i));
	f.has_slot = true;
	for (int b = 0; b < p.nB(); ++b)
		for (int j = 0; j < e.dim(); ++j)
			f.slot_deg.push_back(p.l.space.degree(p.nA + b) + e.space.degree(j));
	f.map_degree = 2;
	return f;
}
} // namespace

std::vector<SymMap<Q>> alpha_split(const SHLiePair& p, const Module<Q>& e)
{
	const int K = alpha_kmax(p, e);
	auto m = module_actions(e);
	const int mmax = static_cast<int>(m.size()) - 1;
	const int nE = e.dim();
	std::vector<int> adeg;
	for (int i = 0; i < p.nA; ++i)
		adeg.push_back(p.l.space.degree(i));
	std::vector<SymMap<Q>> out;
	for (int k = 0; k <= K; ++k) {
		SymMap<Q> f = alpha_shell(p, e, k);
		for (const Mono& as : canonical_tuples(adeg, k, 0, p.nA)) {
			std::vector<int> ds;
			int star = 0;
			for (int a : as) {
				ds.push_back(adeg[a]);
				star += adeg[a];
			}
			for (int b = 0; b < p.nB(); ++b) {
				const int bdeg = p.l.space.degree(p.nA + b);
				for (int j = 0; j < nE; ++j) {
					Vec<Q> tot, ej = unit_vec<Q>(j);
					for (int pp = 0; pp <= k; ++pp) {
						if (pp + 1 > p.l.kmax() || k - pp + 2 > mmax)
							continue;
						for (const auto& sig : unshuffles({pp, k - pp})) {
							std::vector<Vec<Q>> largs;
							int dag = 0;
							for (int t = 0; t < pp; ++t) {
								largs.push_back(unit_vec<Q>(as[sig[t]]));
								dag += ds[sig[t]];
							}
							largs.push_back(unit_vec<Q>(p.nA + b));
							Vec<Q> inner;
							for (const auto& [i, c] : p.l.bracket(largs))
								if (i < p.nA)
									inner[i] = c;
							if (inner.empty())
								continue;
							std::vector<Vec<Q>> margs{inner};
							for (int t = pp; t < k; ++t)
								margs.push_back(unit_vec<Q>(as[sig[t]]));
							Q s(koszul_sign(sig, ds));
							if (odd(bdeg) && odd(star - dag))
								s = -s;
							axpy(tot, s, eval(m[k - pp + 2], margs, &ej));
						}
					}
					if (odd(k + 1))
						for (auto& [i, c] : tot)
							c = -c;
					for (const auto& [i, c] : tot) {
						Mono key = as;
						key.push_back(b * nE + j);
						f.add(key, i, c);
					}
				}
			}
		}
		out.push_back(std::move(f));
	}
	return out;
}

std::vector<SymMap<Q>> alpha_components(const SHLiePair& p, const Module<Q>& e, const Op<Q>& alpha)
{
	Tower<Q> t = atiyah_tower(p, e);
	const int nE = e.dim(), eoff = t.off[1];
	std::vector<SymMap<Q>> out;
	for (int k = 0; k <= alpha_kmax(p, e); ++k)
		out.push_back(alpha_shell(p, e, k));
	for (const auto& [j, poly] : alpha.img)
		for (const auto& [mono, c] : poly) {
			Mono us;
			int bg = -1, eg = -1;
			for (int g : mono) {
				if (g < p.nA)
					us.push_back(g);
				else if (g < eoff)
					bg = g;
				else
					eg = g;
			}
			const int k = static_cast<int>(us.size());
			while (static_cast<int>(out.size()) <= k)
				out.push_back(alpha_shell(p, e, static_cast<int>(out.size())));
			Mono seq = us;
			seq.push_back(bg);
			Poly<Q> rest = contract_right_seq(t.alpha, Poly<Q>{{mono, c}}, seq);
			Q v = constant_term(right_contract_free(rest, eg));
			const int b = bg - p.nA;
			int star = p.l.space.degree(bg);
			for (int u : us)
				star += p.l.space.degree(u);
			if (odd(star * (e.space.degree(j) + 1)))
				v = -v;
			Mono key = us;
			key.push_back(b * nE + j);
			out[k].add(key, eg - eoff, v);
		}
	return out;
}

bool same_components(const std::vector<SymMap<Q>>& x, const std::vector<SymMap<Q>>& y)
{
	size_t n = std::max(x.size(), y.size());
	for (size_t k = 0; k < n; ++k) {
		bool ex = k >= x.size() || x[k].empty(), ey = k >= y.size() || y[k].empty();
		if (ex && ey)
			continue;
		if (ex != ey || x[k].coeffs != y[k].coeffs)
			return false;
	}
	return true;
}

HomModule<Q> atiyah_hom(const SHLiePair& p, const Module<Q>& e)
{
	return hom_module(e, atiyah_tower(p, e), "Hom(" + e.name + ",B^(x)" + e.name + ")");
}

Report check_cocycle(const SHLiePair& p, const Module<Q>& e, const Op<Q>& alpha)
{
	Report rep;
	rep.name = "cocycle";
	Tower<Q> t = atiyah_tower(p, e);
	Op<Q> d = op_differential(e, t, alpha);
	rep.checked = e.dim();
	for (const auto& [j, v] : d.img)
		rep.fail("d(alpha) on " + e.space.basis[j].name + ": " + poly_str(t.alpha, v));
	return rep;
}

AtiyahReport atiyah(const SHLiePair& p, const Module<Q>& e)
{
	AtiyahReport r;
	r.checks.name = "atiyah";
	r.data.perp = perp_module(p);
	r.data.tower = make_tower<Q>({&r.data.perp, &e});
	Connection c = trivial_connection(p, e);
	Op<Q> by_curv = alpha_by_curvature(p, e, c);
	r.data.op = alpha_by_operator(p, e);
	r.split = alpha_split(p, e);
	r.from_operator = alpha_components(p, e, r.data.op);
	r.from_curvature = alpha_components(p, e, by_curv);

	Report flat;
	flat.name = "curvature restricted to A";
	for (auto& [j, v] : curvature(c)) {
		Poly<Q> a = b_part(p, v, 0);
		if (!a.empty())
			flat.fail("on " + e.space.basis[j].name + ": " + poly_str(c.m.alpha, a));
	}
	flat.checked = e.dim();
	r.checks.merge(flat);
	r.checks.merge(bianchi(c));

	Report routes;
	routes.name = "routes";
	routes.checked = 3;
	if (!same_op(by_curv, r.data.op))
		routes.fail("(J(x)1)(R) = " + op_str(e, r.data.tower.alpha, by_curv) + " but delta(D) = "
			+ op_str(e, r.data.tower.alpha, r.data.op));
	if (!same_components(r.split, r.from_operator))
		routes.fail("split formula components differ from delta(D)");
	if (!same_components(r.split, r.from_curvature))
		routes.fail("split formula components differ from (J(x)1)(R)");
	r.checks.merge(routes);
	r.checks.merge(check_cocycle(p, e, r.data.op));
	return r;
}

ConnectionComparison compare_connections(const SHLiePair& p, const Module<Q>& e, const Connection& c1, const Connection& c2)
{
	require_extends(p, e, c1);
	require_extends(p, e, c2);
	ConnectionComparison out;
	out.rep.name = "connection independence";
	const int nL = n_l(p);
	out.witness.degree = 1;
	for (int j = 0; j < e.dim(); ++j) {
		Poly<Q> a = c1.m.d.count(nL + j) ? c1.m.d.at(nL + j) : Poly<Q>{};
		Poly<Q> b = c2.m.d.count(nL + j) ? c2.m.d.at(nL + j) : Poly<Q>{};
		out.witness.set(j, b_part(p, a - b, 1));
	}
	out.difference = alpha_by_curvature(p, e, c1) - alpha_by_curvature(p, e, c2);
	out.difference.degree = 2;
	Tower<Q> t = atiyah_tower(p, e);
	Op<Q> dw = op_differential(e, t, out.witness);
	out.rep.checked = e.dim();
	Op<Q> res = out.difference - dw;
	for (const auto& [j, v] : res.img)
		out.rep.fail("alpha_1 - alpha_2 - d(w) on " + e.space.basis[j].name + ": " + poly_str(t.alpha, v));
	return out;
}

std::string VanishingVerdict::verdict() const
{
	const std::string n = std::to_string(max_weight);
	if (zero_cocycle)
		return "VANISHING (zero cocycle)";
	if (vanishes && verified)
		return "VANISHING (primitive verified)";
	if (vanishes)
		return "PRIMITIVE UP TO WEIGHT " + n + " (not verified on full polynomials)";
	if (exact)
		return "NONVANISHING (exact)";
	return "NoSolutionUpToWeight(" + n + ")";
}

VanishingVerdict class_vanishes(const SHLiePair& p, const Module<Q>& e, int max_weight)
{
	VanishingVerdict v;
	v.max_weight = max_weight;
	Op<Q> alpha = alpha_by_operator(p, e);
	v.primitive.degree = 1;
	if (alpha.is_zero()) {
		v.zero_cocycle = v.vanishes = v.verified = v.exact = true;
		return v;
	}
	HomModule<Q> h = atiyah_hom(p, e);
	TruncatedComplex cx(h.m, max_weight);
	v.exact = cx.exact_through(2);
	auto y = cx.solve_coboundary(2, h.from_op(alpha));
	if (!y)
		return v;
	v.vanishes = true;
	v.primitive = h.to_op(*y, 1);
	Op<Q> dy = op_differential(e, h.tgt, v.primitive);
	v.verified = same_op(dy, alpha);
	return v;
}

Poly<Q> J_tensor(const SHLiePair& p, const Poly<Q>& f)
{
	const int nL = n_l(p);
	Poly<Q> r;
	for (const auto& [m, c] : f) {
		Mono w(m.begin(), m.end() - 1);
		const int eg = m.back() - nL + p.nA + nL;
		for (const auto& [jm, jc] : J_map(p, Poly<Q>{{w, c}})) {
			Mono x = jm;
			x.push_back(eg);
			add_term(r, x, jc);
		}
	}
	return r;
}

namespace {

// I^A (x) 1 on [A^vee, E] into [A^vee, L^vee slot, E]
Poly<Q> I_tensor(const SHLiePair& p, const Module<Q>& e, const Poly<Q>& f)
{
	const int nL = n_l(p);
	Alphabet av;
	for (int i = 0; i < p.nA; ++i)
		av.add(e.alpha.name[i], e.alpha.deg[i]);
	Poly<Q> r;
	for (const auto& [m, c] : f) {
		Mono w(m.begin(), m.end() - 1);
		const int eg = m.back() - e.nA + p.nA + nL;
		for (const auto& [im, ic] : I_map(p.nA, av, Poly<Q>{{w, c}})) {
			Mono x = im;
			x.push_back(eg);
			add_term(r, x, ic);
		}
	}
	return r;
}

Poly<Q> drop_b(const SHLiePair& p, const Poly<Q>& f)
{
	return b_part(p, f, 0);
}

Op<Q> random_op(std::mt19937& rng, const SHLiePair& p, const Module<Q>& e, const Alphabet& ca, int degree)
{
	const int nL = n_l(p);
	Op<Q> h;
	h.degree = degree;
	for (int j = 0; j < e.dim(); ++j) {
		Poly<Q> v;
		for (int t = 0; t < e.dim(); ++t) {
			int need = degree + e.space.degree(j) - e.space.degree(t);
			auto pool = monomials_of_degree(ca, 0, nL, 2, need);
			for (const auto& [m, c] : random_poly(rng, pool, 2)) {
				Mono x = m;
				x.push_back(nL + t);
				add_term(v, x, c);
			}
		}
		h.set(j, v);
	}
	return h;
}

} // namespace

Report connecting_check(const SHLiePair& p, const Module<Q>& e, int samples, unsigned seed)
{
	Report rep;
	rep.name = "connecting map";
	const int nL = n_l(p);
	Module<Q> lv = lvee_module(p);
	Module<Q> perp = perp_module(p);
	Tower<Q> t2 = make_tower<Q>({&lv, &e});
	Connection c = trivial_connection(p, e);

	// beta = (J (x) 1)(D^{L,E}) lifts (I^A (x) 1)(D^{A,E})
	Op<Q> beta;
	beta.degree = 1;
	for (int j = 0; j < e.dim(); ++j)
		if (auto it = c.m.d.find(nL + j); it != c.m.d.end())
			beta.set(j, J_tensor(p, it->second));
	Report lift;
	lift.name = "beta lifts I^A(D)";
	for (int j = 0; j < e.dim(); ++j) {
		Poly<Q> b = beta.image(j) ? *beta.image(j) : Poly<Q>{};
		Poly<Q> a_part = filter<Q>(b, [&](const Mono& m) { return mono_count_in(m, p.nA, 2 * p.nA) == 1; });
		Poly<Q> want = e.d.count(e.gen(j)) ? I_tensor(p, e, e.d.at(e.gen(j))) : Poly<Q>{};
		++lift.checked;
		if (!(a_part - want).empty())
			lift.fail("on " + e.space.basis[j].name + ": " + poly_str(t2.alpha, a_part - want));
	}
	rep.merge(lift);

	// d(beta) = alpha inside Hom(E, L^vee (x) E)
	Report conn;
	conn.name = "d(beta) = alpha";
	{
		Tower<Q> t = atiyah_tower(p, e);
		Op<Q> alpha = alpha_by_operator(p, e);
		std::vector<int> gmap(t.alpha.size());
		for (int i = 0; i < p.nA; ++i)
			gmap[i] = i;
		for (int b = 0; b < p.nB(); ++b)
			gmap[p.nA + b] = 2 * p.nA + b;
		for (int j = 0; j < e.dim(); ++j)
			gmap[t.off[1] + j] = t2.off[1] + j;
		Op<Q> db = op_differential(e, t2, beta);
		for (int j = 0; j < e.dim(); ++j) {
			Poly<Q> want = alpha.image(j) ? remap(t2.alpha, *alpha.image(j), gmap) : Poly<Q>{};
			Poly<Q> have = db.image(j) ? *db.image(j) : Poly<Q>{};
			++conn.checked;
			if (!(have - want).empty())
				conn.fail("on " + e.space.basis[j].name + ": " + poly_str(t2.alpha, have - want));
		}
	}
	rep.merge(conn);

	std::mt19937 rng(seed);
	Alphabet la = p.lv();
	Derivation<Q> ql = p.ql();
	Derivation<Q> nlv = lv.nabla(), nperp = perp.nabla();
	std::vector<Poly<Q>> omegas;
	for (int g = 0; g < nL; ++g)
		omegas.push_back(gen_poly<Q>(g));
	std::uniform_int_distribution<int> dd(-2, 3);
	while (static_cast<int>(omegas.size()) < nL + samples) {
		auto pool = monomials_of_degree(la, 0, nL, 3, dd(rng));
		Poly<Q> w = random_poly(rng, pool, 3);
		if (!w.empty())
			omegas.push_back(w);
	}
	Alphabet av;
	for (int i = 0; i < p.nA; ++i)
		av.add(la.name[i], la.deg[i]);

	Report ij, kr2, jder, key;
	ij.name = "IJ";
	kr2.name = "d^{L^vee} J = J Q_L";
	jder.name = "J derivation";
	key.name = "key relation";
	for (const auto& w : omegas) {
		Poly<Q> jw = J_map(p, w);
		Poly<Q> lhs = filter<Q>(jw, [&](const Mono& m) { return m.back() < 2 * p.nA; });
		Poly<Q> rhs = I_map(p.nA, av, drop_b(p, w));
		++ij.checked;
		if (!(lhs - rhs).empty())
			ij.fail("on " + poly_str(la, w) + ": " + poly_str(lv.alpha, lhs - rhs));
		Poly<Q> a = apply(lv.alpha, nlv, jw);
		Poly<Q> b = J_map(p, apply(la, ql, w));
		++kr2.checked;
		if (!(a - b).empty())
			kr2.fail("on " + poly_str(la, w) + ": " + poly_str(lv.alpha, a - b));
	}
	for (size_t i = 0; i < omegas.size(); ++i) {
		const auto& w1 = omegas[i];
		const auto& w2 = omegas[(i * 7 + 3) % omegas.size()];
		if (!homogeneous(la, w1) || !homogeneous(la, w2))
			continue;
		Poly<Q> lhs = J_map(p, mul(la, w1, w2));
		Poly<Q> rhs = mul(lv.alpha, drop_b(p, w1), J_map(p, w2));
		Poly<Q> t = mul(lv.alpha, drop_b(p, w2), J_map(p, w1));
		axpy(rhs, odd(poly_degree(la, w1) * poly_degree(la, w2)) ? Q(-1) : Q(1), t);
		++jder.checked;
		if (!(lhs - rhs).empty())
			jder.fail("on " + poly_str(la, w1) + " , " + poly_str(la, w2));
		// elements of ker j^vee
		for (int b = 0; b < p.nB(); ++b) {
			Poly<Q> w = mul(la, w1, gen_poly<Q>(p.nA + b));
			if (w.empty())
				continue;
			Poly<Q> jw = J_map(p, w);
			std::vector<int> gmap(lv.alpha.size(), -1);
			for (int g = 0; g < p.nA; ++g)
				gmap[g] = g;
			for (int bb = 0; bb < p.nB(); ++bb)
				gmap[2 * p.nA + bb] = p.nA + bb;
			bool in_perp = true;
			for (const auto& kv : jw)
				if (kv.first.back() < 2 * p.nA)
					in_perp = false;
			Poly<Q> jq = J_map(p, apply(la, ql, w));
			for (const auto& kv : jq)
				if (kv.first.back() < 2 * p.nA)
					in_perp = false;
			++key.checked;
			if (!in_perp) {
				key.fail("J(" + poly_str(la, w) + ") leaves A^perp");
				continue;
			}
			Poly<Q> lhs2 = apply(perp.alpha, nperp, remap(perp.alpha, jw, gmap));
			Poly<Q> rhs2 = remap(perp.alpha, jq, gmap);
			if (!(lhs2 - rhs2).empty())
				key.fail("on " + poly_str(la, w) + ": " + poly_str(perp.alpha, lhs2 - rhs2));
		}
	}
	rep.merge(ij);
	rep.merge(kr2);
	rep.merge(jder);
	rep.merge(key);

	// (J (x) 1)(phi o psi) = (j^vee phi) o (J psi) + (J phi) o (j^vee psi)
	Report j1;
	j1.name = "J1";
	for (int s = 0; s < std::max(2, samples / 3); ++s) {
		std::uniform_int_distribution<int> dg(0, 2);
		Op<Q> phi = random_op(rng, p, e, c.m.alpha, dg(rng));
		Op<Q> psi = random_op(rng, p, e, c.m.alpha, dg(rng));
		std::vector<int> emap(c.m.alpha.size());
		for (int g = 0; g < nL; ++g)
			emap[g] = g;
		for (int j = 0; j < e.dim(); ++j)
			emap[nL + j] = t2.off[1] + j;
		Op<Q> jphi, jvphi;
		jphi.degree = jvphi.degree = phi.degree;
		for (const auto& [j, v] : phi.img) {
			jphi.set(j, J_tensor(p, v));
			jvphi.set(j, remap(t2.alpha, drop_b(p, v), emap));
		}
		Module<Q> on_t2 = frame(t2.alpha, t2.off[1]);
		Module<Q> on_ae = frame(t2.alpha, t2.off[1]);
		for (int j = 0; j < e.dim(); ++j) {
			Poly<Q> pj = psi.image(j) ? *psi.image(j) : Poly<Q>{};
			Poly<Q> comp = op_apply(c.m, c.m.alpha, phi, pj);
			Poly<Q> lhs = J_tensor(p, comp);
			Poly<Q> rhs = op_apply(on_t2, t2.alpha, jvphi, J_tensor(p, pj));
			axpy(rhs, Q(1), op_apply(on_ae, t2.alpha, jphi, remap(t2.alpha, drop_b(p, pj), emap)));
			++j1.checked;
			if (!(lhs - rhs).empty())
				j1.fail("sample " + std::to_string(s) + " on " + e.space.basis[j].name + ": " + poly_str(t2.alpha, lhs - rhs));
		}
	}
	rep.merge(j1);
	return rep;
}

} // namespace shl
