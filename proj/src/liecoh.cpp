#include "shl/liecoh.hpp"

#include <functional>

namespace shl {

namespace {

// polynomial on a tower that only involves A^vee and one block, moved to that block's module
Poly<Q> block_to_module(const Tower<Q>& t, int block, const Module<Q>& m, const Poly<Q>& p)
{
	std::vector<int> gmap(t.alpha.size(), -1);
	for (int i = 0; i < t.nA; ++i)
		gmap[i] = i;
	for (int j = 0; j < t.len[block]; ++j)
		gmap[t.off[block] + j] = m.nA + j;
	for (const auto& [mono, c] : p)
		for (int g : mono)
			if (gmap[g] < 0)
				throw std::logic_error("stray generator " + t.alpha.name[g] + " after contraction");
	return remap(m.alpha, p, gmap);
}

Q sign(bool neg) { return neg ? Q(-1) : Q(1); }

std::string short_str(const Alphabet& a, const Poly<Q>& p)
{
	std::string s = poly_str(a, p);
	return s.size() > 160 ? s.substr(0, 160) + "..." : s;
}

// all basis cochains up to weight w, sorted by weight
struct Basis {
	std::vector<Poly<Q>> c;
	std::vector<int> w, d;
};

Basis basis_of(const Module<Q>& m, int maxw)
{
	Basis b;
	for (auto& p : basis_cochains(m, maxw)) {
		b.w.push_back(weight(p.begin()->first, m.nA));
		b.d.push_back(poly_degree(m.alpha, p));
		b.c.push_back(std::move(p));
	}
	return b;
}

} // namespace

Poly<Q> contract_b(const Alphabet& a, int boff, int nA, const Poly<Q>& x, const Poly<Q>& f)
{
	Poly<Q> r;
	for (const auto& [m, c] : x) {
		Mono xi(m.begin(), m.end() - 1);
		Poly<Q> in = left_contract(a, boff + m.back() - nA, f);
		if (!in.empty())
			axpy(r, c, mul(a, Poly<Q>{{xi, Q(1)}}, in));
	}
	return r;
}

std::vector<Poly<Q>> basis_cochains(const Module<Q>& m, int maxw)
{
	std::vector<Poly<Q>> out;
	Mono cur;
	std::function<void(int)> rec = [&](int start) {
		for (int j = 0; j < m.dim(); ++j) {
			Mono x = cur;
			x.push_back(m.gen(j));
			out.push_back(Poly<Q>{{x, Q(1)}});
		}
		if (static_cast<int>(cur.size()) == maxw)
			return;
		for (int i = start; i < m.nA; ++i) {
			if (!cur.empty() && cur.back() == i && odd(m.alpha.deg[i]))
				continue;
			cur.push_back(i);
			rec(i);
			cur.pop_back();
		}
	};
	rec(0);
	return out;
}

Poly<Q> pair_cochains(const Module<Q>& ev, const Module<Q>& e, const Poly<Q>& phi, const Poly<Q>& r)
{
	Tower<Q> t = make_tower<Q>({&ev, &e});
	Poly<Q> prod = mul(t.alpha, lift_block(ev, t.off[0], t.alpha, phi), lift_block(e, t.off[1], t.alpha, r));
	Poly<Q> out;
	for (const auto& [m, c] : prod) {
		// omega f_i^ f_j, <f_i^, f_j> = delta_ij
		const int n = static_cast<int>(m.size());
		if (n < 2 || m[n - 2] - t.off[0] != m[n - 1] - t.off[1])
			continue;
		add_term(out, Mono(m.begin(), m.end() - 2), c);
	}
	return out;
}

Poly<Q> AtiyahOperator::image(const Poly<Q>& r) const
{
	return op_apply(e, data.tower.alpha, data.op, r);
}

Poly<Q> AtiyahOperator::operator()(const Poly<Q>& x, const Poly<Q>& r) const
{
	const Tower<Q>& t = data.tower;
	return block_to_module(t, 1, e, contract_b(t.alpha, t.off[0], pair.nA, x, image(r)));
}

Poly<Q> AtiyahOperator::primitive(const Poly<Q>& x, const Poly<Q>& r) const
{
	const Tower<Q>& t = data.tower;
	Poly<Q> w = apply(t.alpha, delta_of(pair), lift_block(e, t.off[1], t.alpha, r));
	return block_to_module(t, 1, e, contract_b(t.alpha, t.off[0], pair.nA, x, w));
}

AtiyahOperator atiyah_operator(const SHLiePair& p, const Module<Q>& e)
{
	AtiyahOperator op;
	op.pair = p;
	op.b = quotient_module(p);
	op.e = e;
	op.data.perp = perp_module(p);
	op.data.tower = atiyah_tower(p, e);
	op.data.op = alpha_by_operator(p, e);
	return op;
}

Poly<Q> atiyah_operator(const SHLiePair& p, const Module<Q>& e, const Poly<Q>& x, const Poly<Q>& r)
{
	return atiyah_operator(p, e)(x, r);
}

Report operator_checks(const AtiyahOperator& op, int max_weight)
{
	Report rep;
	rep.name = "atiyah operator on " + op.e.name;
	const Tower<Q>& t = op.data.tower;
	Derivation<Q> delta = delta_of(op.pair);
	Basis rs = basis_of(op.e, max_weight), xs = basis_of(op.b, max_weight);
	for (const auto& r : rs.c) {
		++rep.checked;
		// [delta, d] = alpha
		Poly<Q> lhs = apply(t.alpha, delta, lift_block(op.e, t.off[1], t.alpha, op.d_e(r)));
		lhs = lhs + apply(t.alpha, t.nabla, apply(t.alpha, delta, lift_block(op.e, t.off[1], t.alpha, r)));
		if (!(lhs - op.image(r)).empty())
			rep.fail("[delta, d] != alpha on " + poly_str(op.e.alpha, r));
	}
	for (size_t i = 0; i < xs.c.size(); ++i)
		for (size_t j = 0; j < rs.c.size(); ++j) {
			if (xs.w[i] + rs.w[j] > max_weight)
				continue;
			++rep.checked;
			const Poly<Q>& x = xs.c[i];
			const Poly<Q>& r = rs.c[j];
			Poly<Q> lhs = op.d_e(op(x, r));
			Poly<Q> rhs = op(op.d_b(x), r) + scaled(op(x, op.d_e(r)), sign(odd(xs.d[i])));
			if (!(lhs - rhs).empty())
				rep.fail("d(alpha(x)r) != alpha(dx)r +- alpha(x)dr at x = " + poly_str(op.b.alpha, x) +
					", r = " + poly_str(op.e.alpha, r));
			++rep.checked;
			// alpha(x)r = P(x, dr) + (-1)^{|x|} (d P(x, r) - P(dx, r)), P = primitive
			Poly<Q> viaP = op.primitive(x, op.d_e(r)) +
				scaled(op.d_e(op.primitive(x, r)) - op.primitive(op.d_b(x), r), sign(odd(xs.d[i])));
			if (!(op(x, r) - viaP).empty())
				rep.fail("alpha(x)r differs from its primitive formula at x = " + poly_str(op.b.alpha, x) +
					", r = " + poly_str(op.e.alpha, r));
		}
	return rep;
}

Report leibniz_checks(const SHLiePair& p, const Module<Q>& e, const Module<Q>& f, int max_weight)
{
	Report rep;
	rep.name = "Leibniz identities for " + e.name + ", " + f.name;
	AtiyahOperator oe = atiyah_operator(p, e), of = atiyah_operator(p, f);
	Basis xs = basis_of(oe.b, max_weight), rs = basis_of(e, max_weight), ss = basis_of(f, max_weight);

	// tensor
	Tower<Q> tw = make_tower<Q>({&e, &f});
	AtiyahOperator oef = atiyah_operator(p, tensor_module(e, f));
	auto tensor = [&](const Poly<Q>& r, const Poly<Q>& s) {
		Poly<Q> m = mul(tw.alpha, lift_block(e, tw.off[0], tw.alpha, r), lift_block(f, tw.off[1], tw.alpha, s));
		return tower_to_module(tw, p.nA, m);
	};
	for (size_t i = 0; i < xs.c.size(); ++i)
		for (size_t j = 0; j < rs.c.size(); ++j)
			for (size_t k = 0; k < ss.c.size(); ++k) {
				if (xs.w[i] + rs.w[j] + ss.w[k] > max_weight)
					continue;
				++rep.checked;
				const Poly<Q>&x = xs.c[i], &r = rs.c[j], &s = ss.c[k];
				Poly<Q> lhs = oef(x, tensor(r, s));
				Poly<Q> rhs = tensor(oe(x, r), s) + scaled(tensor(r, of(x, s)), sign(odd(xs.d[i]) && odd(rs.d[j])));
				if (!(lhs - rhs).empty())
					rep.fail("tensor identity fails at x = " + poly_str(oe.b.alpha, x) + ", r = " +
						poly_str(e.alpha, r) + ", s = " + poly_str(f.alpha, s));
			}

	// dual
	Module<Q> ev = dual_module(e);
	AtiyahOperator oev = atiyah_operator(p, ev);
	Basis ps = basis_of(ev, max_weight);
	for (size_t i = 0; i < xs.c.size(); ++i)
		for (size_t j = 0; j < ps.c.size(); ++j)
			for (size_t k = 0; k < rs.c.size(); ++k) {
				if (xs.w[i] + ps.w[j] + rs.w[k] > max_weight)
					continue;
				++rep.checked;
				const Poly<Q>&x = xs.c[i], &phi = ps.c[j], &r = rs.c[k];
				Poly<Q> lhs = pair_cochains(ev, e, oev(x, phi), r);
				Poly<Q> rhs = scaled(pair_cochains(ev, e, phi, oe(x, r)), sign(!(odd(xs.d[i]) && odd(ps.d[j]))));
				if (!(lhs - rhs).empty())
					rep.fail("dual identity fails at x = " + poly_str(oe.b.alpha, x) + ", phi = " +
						poly_str(ev.alpha, phi) + ", r = " + poly_str(e.alpha, r));
			}

	// Hom(E, F)
	HomModule<Q> h = hom_module(e, f);
	AtiyahOperator oh = atiyah_operator(p, h.m);
	Basis ks = basis_of(h.m, max_weight);
	auto eval = [&](const Poly<Q>& kappa, const Poly<Q>& r) {
		Poly<Q> out;
		for (const auto& [m, c] : kappa) {
			int g = m.back() - h.m.nA;
			Op<Q> one;
			one.degree = h.m.space.degree(g);
			one.set(h.gens[g].first, Poly<Q>{{h.tgt.tuples[h.gens[g].second], Q(1)}});
			Mono w(m.begin(), m.end() - 1);
			axpy(out, c, mul(f.alpha, Poly<Q>{{w, Q(1)}}, op_apply(e, f.alpha, one, r)));
		}
		return out;
	};
	for (size_t i = 0; i < xs.c.size(); ++i)
		for (size_t j = 0; j < ks.c.size(); ++j)
			for (size_t k = 0; k < rs.c.size(); ++k) {
				if (xs.w[i] + ks.w[j] + rs.w[k] > max_weight)
					continue;
				++rep.checked;
				const Poly<Q>&x = xs.c[i], &kappa = ks.c[j], &r = rs.c[k];
				Poly<Q> lhs = eval(oh(x, kappa), r);
				Poly<Q> rhs = of(x, eval(kappa, r)) - scaled(eval(kappa, oe(x, r)), sign(odd(xs.d[i]) && odd(ks.d[j])));
				if (!(lhs - rhs).empty())
					rep.fail("Hom identity fails at x = " + poly_str(oe.b.alpha, x) + ", kappa = " +
						poly_str(h.m.alpha, kappa) + ", r = " + poly_str(e.alpha, r));
			}
	return rep;
}

SkewWitness skew_witness(const SHLiePair& p)
{
	SkewWitness w;
	w.rep.name = "skew witness";
	Module<Q> perp = perp_module(p);
	Tower<Q> t = atiyah_tower(p, perp);
	Op<Q> alpha = alpha_by_operator(p, perp);
	const int nB = p.nB();
	std::vector<int> swap(t.alpha.size());
	std::vector<Poly<Q>> split(p.l.space.dim());
	for (int i = 0; i < p.nA; ++i) {
		swap[i] = i;
		split[i] = gen_poly<Q>(i);
	}
	for (int i = 0; i < nB; ++i) {
		swap[t.off[0] + i] = t.off[1] + i;
		swap[t.off[1] + i] = t.off[0] + i;
		split[p.nA + i] = gen_poly<Q>(t.off[0] + i) + gen_poly<Q>(t.off[1] + i);
	}
	w.sym.degree = 2;
	for (const auto& [j, f] : alpha.img)
		w.sym.set(j, f + remap(t.alpha, f, swap));

	QDecomposition dq = decompose_Q(p);
	w.p.degree = 1;
	if (dq.t.count(2))
		for (const auto& [g, f] : dq.t.at(2).img) {
			// -2 (1 (x) s^{-1} (x) 1) T_2: the mixed part of b^ -> b^ (x) 1 + 1 (x) b^
			Poly<Q> mixed = filter<Q>(substitute(t.alpha, split, f), [&](const Mono& m) {
				return mono_count_in(m, t.off[0], t.off[0] + nB) == 1 && mono_count_in(m, t.off[1], t.off[1] + nB) == 1;
			});
			w.p.set(g - p.nA, scaled(mixed, Q(-1)));
		}
	Op<Q> dp = op_differential(perp, t, w.p);
	w.rep.checked = perp.dim();
	for (int j = 0; j < perp.dim(); ++j) {
		Poly<Q> a = w.sym.image(j) ? *w.sym.image(j) : Poly<Q>{};
		Poly<Q> b = dp.image(j) ? *dp.image(j) : Poly<Q>{};
		if (!(a - b).empty())
			w.rep.fail("alpha + (1 (x) tau) alpha != dP on " + perp.space.basis[j].name + ": " +
				short_str(t.alpha, a) + " vs " + short_str(t.alpha, b));
	}
	return w;
}

JacobiWitness jacobi_witness(const SHLiePair& p, const Module<Q>& e, int max_weight)
{
	JacobiWitness w;
	w.rep.name = "Jacobi witness on " + e.name;
	AtiyahOperator oe = atiyah_operator(p, e), ob = atiyah_operator(p, oe.b);
	Module<Q> perp = oe.data.perp;
	Tower<Q> t4 = make_tower<Q>({&perp, &perp, &e});
	const Tower<Q>& t3 = oe.data.tower;
	std::vector<int> up(t3.alpha.size());
	for (int i = 0; i < p.nA; ++i)
		up[i] = i;
	for (int i = 0; i < p.nB(); ++i)
		up[t3.off[0] + i] = t4.off[1] + i;
	for (int j = 0; j < e.dim(); ++j)
		up[t3.off[1] + j] = t4.off[2] + j;
	// delta lands in the first B^vee block, whose indices agree with L^vee
	Derivation<Q> delta = delta_of(p);
	w.t.degree = 3;
	for (const auto& [j, f] : oe.data.op.img)
		w.t.set(j, apply(t4.alpha, delta, remap(t4.alpha, f, up)));
	Op<Q> dt = op_differential(e, t4, w.t);

	Basis xs = basis_of(oe.b, max_weight), rs = basis_of(e, max_weight);
	for (size_t i = 0; i < xs.c.size(); ++i)
		for (size_t j = 0; j < xs.c.size(); ++j)
			for (size_t k = 0; k < rs.c.size(); ++k) {
				if (xs.w[i] + xs.w[j] + rs.w[k] > max_weight)
					continue;
				++w.rep.checked;
				const Poly<Q>&x = xs.c[i], &y = xs.c[j], &r = rs.c[k];
				Poly<Q> lhs = oe(x, oe(y, r)) - scaled(oe(y, oe(x, r)), sign(odd(xs.d[i]) && odd(xs.d[j])));
				Poly<Q> tr = op_apply(e, t4.alpha, dt, r);
				tr = contract_b(t4.alpha, t4.off[0], p.nA, x, contract_b(t4.alpha, t4.off[1], p.nA, y, tr));
				Poly<Q> rhs = oe(ob(x, y), r) + block_to_module(t4, 2, e, tr);
				if (!(lhs - rhs).empty())
					w.rep.fail("Jacobi witness identity fails at x = " + poly_str(oe.b.alpha, x) + ", y = " +
						poly_str(oe.b.alpha, y) + ", r = " + poly_str(e.alpha, r));
			}
	return w;
}

namespace {

Poly<Q> truncated(const Poly<Q>& f, int nA, int n)
{
	return filter<Q>(f, [&](const Mono& m) { return weight(m, nA) <= n; });
}

void reduce_checks(BracketTable& t, const TruncatedComplex& target, int tdeg, const Poly<Q>& z, const std::string& what)
{
	++t.checks.checked;
	try {
		if (!target.solve_coboundary(tdeg, truncated(z, target.module().nA, target.max_weight())))
			t.checks.fail(what + " is not a coboundary");
	} catch (const NotACocycle&) {
		t.checks.fail(what + " is not closed");
	}
}

BracketTable table(const SHLiePair& p, const AtiyahOperator& ob, const AtiyahOperator& oe, bool same, int n1, int n2, int N)
{
	BracketTable t;
	t.module = oe.e.name;
	t.n1 = n1;
	t.n2 = n2;
	t.max_weight = N;
	t.checks.name = "bracket table " + oe.e.name + " (" + std::to_string(n1) + ", " + std::to_string(n2) + ")";
	TruncatedComplex cb(ob.e, N), ce(oe.e, N);
	const int d1 = n1 - 2, d2 = n2 - 2, d3 = n1 + n2 - 2;
	CohomologyResult h1 = cb.cohomology(d1), h2 = ce.cohomology(d2), h3 = ce.cohomology(d3);
	t.exact = h1.exact && h2.exact && h3.exact;
	t.left = h1.reps;
	t.right = h2.reps;
	t.target = h3.reps;
	const int nA = p.nA;
	auto act = [&](const Poly<Q>& x, const Poly<Q>& r) { return truncated(oe(x, r), nA, N); };
	for (const auto& x : t.left) {
		t.out.emplace_back();
		t.cochains.emplace_back();
		for (const auto& y : t.right) {
			Poly<Q> z = act(x, y);
			t.cochains.back().push_back(z);
			// truly closed representatives bracket to (-1)^{|x|} d(x contracted into delta y)
			if (ob.d_b(x).empty() && oe.d_e(y).empty()) {
				++t.checks.checked;
				Poly<Q> full = oe(x, y), prim = oe.primitive(x, y);
				if (!(full - scaled(oe.d_e(prim), sign(odd(d1)))).empty())
					t.checks.fail("bracket differs from d of its primitive: " + short_str(oe.e.alpha, full));
			}
			auto cc = ce.class_coords(d3, z, h3);
			if (!cc) {
				t.checks.fail("bracket of representatives is not a class: " + poly_str(oe.e.alpha, z));
				t.out.back().emplace_back();
			} else {
				t.out.back().push_back(cc->coords);
			}
		}
	}
	for (int i = 0; i < ob.e.dim(); ++i)
		for (int j = 0; j < oe.e.dim(); ++j)
			if (ob.e.space.degree(i) == d1 && oe.e.space.degree(j) == d2)
				t.generators.push_back({i, j, oe(gen_poly<Q>(ob.e.gen(i)), gen_poly<Q>(oe.e.gen(j)))});
	auto bra = [&](const Poly<Q>& x, const Poly<Q>& y) { return truncated(ob(x, y), nA, N); };
	if (same) {
		// [x, y] + (-1)^{|x||y|} [y, x] and Jacobi modulo d
		std::vector<std::pair<Poly<Q>, int>> all;
		for (const auto& x : h1.reps)
			all.push_back({x, n1});
		if (n2 != n1)
			for (const auto& y : h2.reps)
				all.push_back({y, n2});
		for (const auto& [x, a] : all)
			for (const auto& [y, b] : all) {
				Poly<Q> z = bra(x, y) + scaled(bra(y, x), sign(odd(a) && odd(b)));
				reduce_checks(t, cb, a + b - 2, z, "[x,y] + (-1)^{|x||y|}[y,x]");
			}
		for (const auto& [x, a] : all)
			for (const auto& [y, b] : all)
				for (const auto& [z, c] : all) {
					Poly<Q> j = bra(x, bra(y, z)) - bra(bra(x, y), z) - scaled(bra(y, bra(x, z)), sign(odd(a) && odd(b)));
					reduce_checks(t, cb, a + b + c - 4, j, "Jacobiator");
				}
	} else {
		// x > (y > r) - (-1)^{|x||y|} y > (x > r) = [x, y] > r modulo d
		std::vector<std::pair<Poly<Q>, int>> xs;
		for (const auto& x : h1.reps)
			xs.push_back({x, n1});
		for (const auto& [x, a] : xs)
			for (const auto& [y, b] : xs)
				for (const auto& r : h2.reps) {
					Poly<Q> z = act(x, act(y, r)) - scaled(act(y, act(x, r)), sign(odd(a) && odd(b))) - act(bra(x, y), r);
					reduce_checks(t, ce, a + b + n2 - 4, z, "action defect");
				}
	}
	return t;
}

} // namespace

BracketTable bracket_table(const SHLiePair& p, int n1, int n2, int max_weight)
{
	AtiyahOperator ob = atiyah_operator(p, quotient_module(p));
	return table(p, ob, ob, true, n1, n2, max_weight);
}

BracketTable action_table(const SHLiePair& p, const Module<Q>& e, int n1, int n2, int max_weight)
{
	AtiyahOperator ob = atiyah_operator(p, quotient_module(p));
	return table(p, ob, atiyah_operator(p, e), false, n1, n2, max_weight);
}

BracketTable h0_lie_algebra(const SHLiePair& p, int max_weight)
{
	return bracket_table(p, 0, 0, max_weight);
}

Report functor_check(const SHLiePair& p, const Module<Q>& e, const Module<Q>& f, const Op<Q>& phi, int max_weight)
{
	Report rep;
	rep.name = "functor check " + e.name + " -> " + f.name;
	Tower<Q> tf = make_tower<Q>({&f});
	Op<Q> dphi = op_differential(e, tf, phi);
	if (!dphi.is_zero()) {
		rep.fail("phi is not a module morphism");
		return rep;
	}
	AtiyahOperator oe = atiyah_operator(p, e), of = atiyah_operator(p, f);
	const Tower<Q>& t = of.data.tower;
	Derivation<Q> delta = delta_of(p);
	Op<Q> w;
	w.degree = phi.degree + 1;
	for (const auto& [j, im] : phi.img)
		w.set(j, apply(t.alpha, delta, lift_block(f, t.off[1], t.alpha, im)));
	Op<Q> dw = op_differential(e, t, w);
	Basis xs = basis_of(oe.b, max_weight), rs = basis_of(e, max_weight);
	for (size_t i = 0; i < xs.c.size(); ++i)
		for (size_t k = 0; k < rs.c.size(); ++k) {
			if (xs.w[i] + rs.w[k] > max_weight)
				continue;
			++rep.checked;
			const Poly<Q>&x = xs.c[i], &r = rs.c[k];
			Poly<Q> lhs = of(x, op_apply(e, f.alpha, phi, r));
			Poly<Q> rhs = op_apply(e, f.alpha, phi, oe(x, r)) +
				block_to_module(t, 1, f, contract_b(t.alpha, t.off[0], p.nA, x, op_apply(e, t.alpha, dw, r)));
			if (!(lhs - rhs).empty())
				rep.fail("functor identity fails at x = " + poly_str(oe.b.alpha, x) + ", r = " + poly_str(e.alpha, r));
		}
	return rep;
}

std::vector<Op<Q>> module_morphisms(const Module<Q>& e, const Module<Q>& f, int max_weight)
{
	HomModule<Q> h = hom_module(e, f);
	TruncatedComplex c(h.m, max_weight);
	MatQ d = c.differential(0);
	MatQ ker = kernel_basis(rref(d), d.cols());
	std::vector<Op<Q>> out;
	Tower<Q> tf = make_tower<Q>({&f});
	for (Eigen::Index i = 0; i < ker.cols(); ++i) {
		Op<Q> phi = h.to_op(c.from_vec(0, ker.col(i)), 0);
		if (op_differential(e, tf, phi).is_zero())
			out.push_back(std::move(phi));
	}
	return out;
}

} // namespace shl
