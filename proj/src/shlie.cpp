#include "shl/shlie.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace shl {

void Report::fail(const std::string& what)
{
	ok = false;
	++failures;
	if (details.size() < 12)
		details.push_back(what);
}

void Report::merge(const Report& o)
{
	ok = ok && o.ok;
	checked += o.checked;
	failures += o.failures;
	for (const auto& d : o.details)
		if (details.size() < 24)
			details.push_back(o.name.empty() ? d : o.name + ": " + d);
}

std::string vec_str(const GradedSpace& sp, const Vec<Q>& v)
{
	if (v.empty())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (const auto& [i, c] : v) {
		if (!first)
			os << " + ";
		first = false;
		os << c << "*" << sp.basis[i].name;
	}
	return os.str();
}

std::vector<Mono> canonical_tuples(const std::vector<int>& deg, int n, int lo, int hi)
{
	std::vector<Mono> out;
	Mono cur;
	std::function<void(int, int)> rec = [&](int start, int left) {
		if (left == 0) {
			out.push_back(cur);
			return;
		}
		for (int i = start; i < hi; ++i) {
			if (!cur.empty() && cur.back() == i && odd(deg[i]))
				continue;
			cur.push_back(i);
			rec(i, left - 1);
			cur.pop_back();
		}
	};
	rec(lo, n);
	return out;
}

namespace {
std::string tuple_str(const GradedSpace& sp, const Mono& t)
{
	std::string s = "(";
	for (size_t i = 0; i < t.size(); ++i) {
		if (i)
			s += ",";
		s += sp.basis[t[i]].name;
	}
	return s + ")";
}

std::vector<Vec<Q>> units(const Mono& us, const std::vector<int>& idx)
{
	std::vector<Vec<Q>> r;
	for (int i : idx)
		r.push_back(unit_vec<Q>(us[i]));
	return r;
}

std::vector<int> degrees_of(const GradedSpace& sp, const Mono& us)
{
	std::vector<int> d;
	for (int u : us)
		d.push_back(sp.degree(u));
	return d;
}
} // namespace

Vec<Q> LInfty::bracket(const std::vector<Vec<Q>>& args) const
{
	if (static_cast<int>(args.size()) > kmax())
		return {};
	return eval(lam[args.size()], args);
}

Vec<Q> LInfty::lambda0() const
{
	if (lam.empty())
		return {};
	const Vec<Q>* v = lam[0].find(Mono{});
	return v ? *v : Vec<Q>{};
}

std::vector<SymMap<Q>> empty_brackets(const GradedSpace& sp, int kmax)
{
	std::vector<SymMap<Q>> lam(kmax + 1);
	for (int k = 0; k <= kmax; ++k) {
		lam[k].arity = k;
		lam[k].src_deg = sp.degrees();
		lam[k].map_degree = 1;
	}
	return lam;
}

int derivation_arity(const Derivation<Q>& q)
{
	int k = 0;
	for (const auto& [g, p] : q.img)
		for (const auto& kv : p)
			k = std::max(k, static_cast<int>(kv.first.size()));
	return k;
}

LInfty linfty_from_derivation(const GradedSpace& sp, const Derivation<Q>& q)
{
	LInfty l;
	l.space = sp;
	l.lam = brackets_by_pairing(sp, q, std::max(derivation_arity(q), 1));
	return l;
}

Report check_jacobi(const LInfty& l, int nmax)
{
	Report rep;
	rep.name = "jacobi";
	const int K = l.kmax();
	if (nmax < 0)
		nmax = std::max(0, 2 * K - 1);
	const auto deg = l.space.degrees();
	for (int n = 0; n <= nmax; ++n) {
		for (const Mono& us : canonical_tuples(deg, n, 0, l.space.dim())) {
			auto ds = degrees_of(l.space, us);
			Vec<Q> tot;
			for (int p = 0; p <= n; ++p) {
				if (p > K || n - p + 1 > K)
					continue;
				for (const auto& sig : unshuffles({p, n - p})) {
					std::vector<int> first(sig.begin(), sig.begin() + p), rest(sig.begin() + p, sig.end());
					Vec<Q> inner = l.bracket(units(us, first));
					if (inner.empty())
						continue;
					std::vector<Vec<Q>> args{inner};
					for (auto& v : units(us, rest))
						args.push_back(std::move(v));
					axpy(tot, Q(koszul_sign(sig, ds)), l.bracket(args));
				}
			}
			++rep.checked;
			if (!tot.empty())
				rep.fail("n=" + std::to_string(n) + " " + tuple_str(l.space, us) + " -> " + vec_str(l.space, tot));
		}
	}
	return rep;
}

LInfty SHLiePair::a() const
{
	LInfty r;
	r.space.name = "A";
	r.space.basis.assign(l.space.basis.begin(), l.space.basis.begin() + nA);
	r.lam = empty_brackets(r.space, l.kmax());
	for (int k = 0; k <= l.kmax(); ++k)
		for (const auto& [key, out] : l.lam[k].coeffs) {
			if (std::any_of(key.begin(), key.end(), [&](int i) { return i >= nA; }))
				continue;
			for (const auto& [i, c] : out)
				if (i < nA)
					r.lam[k].add(key, i, c);
		}
	return r;
}

GradedSpace SHLiePair::b_space() const
{
	GradedSpace b;
	b.name = "B";
	b.basis.assign(l.space.basis.begin() + nA, l.space.basis.end());
	return b;
}

Derivation<Q> SHLiePair::qa() const
{
	Derivation<Q> q = ql();
	Derivation<Q> r;
	r.degree = 1;
	for (const auto& [g, p] : q.img)
		if (g < nA)
			r.set(g, b_part(*this, p, 0));
	return r;
}

Report check_pair(const SHLiePair& p)
{
	Report rep;
	rep.name = "pair";
	for (int k = 0; k <= p.l.kmax(); ++k)
		for (const auto& [key, out] : p.l.lam[k].coeffs) {
			if (std::any_of(key.begin(), key.end(), [&](int i) { return i >= p.nA; }))
				continue;
			++rep.checked;
			for (const auto& [i, c] : out)
				if (i >= p.nA) {
					rep.fail("lambda_" + std::to_string(k) + tuple_str(p.l.space, key) + " has component "
						+ c.str() + "*" + p.l.space.basis[i].name + " outside A");
					break;
				}
		}
	return rep;
}

Poly<Q> b_part(const SHLiePair& p, const Poly<Q>& f, int c)
{
	const int hi = p.l.space.dim();
	return filter<Q>(f, [&](const Mono& m) { return mono_count_in(m, p.nA, hi) == c; });
}

QDecomposition decompose_Q(const SHLiePair& p)
{
	QDecomposition d;
	for (auto* x : {&d.qa, &d.delta, &d.r, &d.dperp})
		x->degree = 1;
	const int hi = p.l.space.dim();
	Derivation<Q> q = p.ql();
	for (const auto& [g, img] : q.img) {
		std::map<int, Poly<Q>> by;
		for (const auto& [m, c] : img)
			add_term(by[mono_count_in(m, p.nA, hi)], m, c);
		for (auto& [w, part] : by) {
			if (g < p.nA) {
				Derivation<Q>& t = w == 0 ? d.qa : (w == 1 ? d.delta : d.r);
				t.set(g, t.img.count(g) ? t.img[g] + part : part);
			} else if (w == 0) {
				d.stray.push_back(g);
			} else if (w == 1) {
				d.dperp.set(g, part);
			} else {
				d.t[w].degree = 1;
				d.t[w].set(g, part);
			}
		}
	}
	return d;
}

Derivation<Q> recompose(const QDecomposition& d)
{
	Derivation<Q> r = d.qa + d.delta + d.r + d.dperp;
	for (const auto& [w, t] : d.t)
		r = r + t;
	r.degree = 1;
	return r;
}

Derivation<Q> delta_of(const SHLiePair& p)
{
	return decompose_Q(p).delta;
}

Module<Q> base_module(const LInfty& a, const std::string& name, const GradedSpace& sp)
{
	Alphabet av = a.dual();
	return empty_module<Q>(name, av, av.size(), a.q(), sp);
}

Module<Q> module_from_actions(const LInfty& a, const std::string& name, const GradedSpace& sp,
	const std::vector<SymMap<Q>>& m)
{
	Module<Q> r = base_module(a, name, sp);
	std::vector<SymMap<Q>> ms;
	for (const auto& f : m)
		if (f.has_slot)
			ms.push_back(f);
	r.d = derivation_from_actions(r.alpha, r.nA, ms);
	return r;
}

std::vector<SymMap<Q>> module_actions(const Module<Q>& m)
{
	int w = 0;
	for (const auto& [g, p] : m.d)
		for (const auto& kv : p)
			w = std::max(w, static_cast<int>(kv.first.size()));
	return actions_from_derivation(m.alpha, m.nA, m.d, std::max(w, 1));
}

Module<Q> quotient_module(const SHLiePair& p)
{
	LInfty a = p.a();
	GradedSpace b = p.b_space();
	std::vector<SymMap<Q>> m(p.l.kmax() + 1);
	for (int k = 1; k <= p.l.kmax(); ++k) {
		m[k].arity = k - 1;
		m[k].src_deg = a.space.degrees();
		m[k].has_slot = true;
		m[k].slot_deg = b.degrees();
		m[k].map_degree = 1;
		for (const auto& [key, out] : p.l.lam[k].coeffs) {
			// sorted keys put the unique B input last
			if (mono_count_in(key, p.nA, p.l.space.dim()) != 1)
				continue;
			Mono mk = key;
			mk.back() -= p.nA;
			for (const auto& [i, c] : out)
				if (i >= p.nA)
					m[k].add(mk, i - p.nA, c);
		}
	}
	return module_from_actions(a, "B", b, m);
}

Module<Q> perp_module(const SHLiePair& p)
{
	Alphabet lv = p.lv();
	GradedSpace bv = dual(p.b_space());
	bv.name = "B^";
	Module<Q> m = empty_module<Q>("B^", lv, p.nA, p.qa(), bv);
	QDecomposition d = decompose_Q(p);
	for (const auto& [g, img] : d.dperp.img)
		m.d[g] = img;
	return m;
}

Module<Q> adjoint_module(const LInfty& a)
{
	const int n = a.space.dim();
	std::vector<SymMap<Q>> m(a.kmax() + 1);
	for (int k = 1; k <= a.kmax(); ++k) {
		m[k].arity = k - 1;
		m[k].src_deg = a.space.degrees();
		m[k].has_slot = true;
		m[k].slot_deg = a.space.degrees();
		m[k].map_degree = 1;
		for (const auto& [key, out] : a.lam[k].coeffs)
			for (size_t s = 0; s < key.size(); ++s) {
				if (s > 0 && key[s] == key[s - 1])
					continue;
				Mono rest = key;
				rest.erase(rest.begin() + static_cast<long>(s));
				std::vector<int> seq = rest;
				seq.push_back(key[s]);
				auto nm = normalize_monomial(a.space.degrees(), seq);
				if (!nm)
					continue;
				Mono mk = rest;
				mk.push_back(key[s]);
				for (const auto& [i, c] : out)
					m[k].add(mk, i, nm->sign > 0 ? c : -c);
			}
	}
	(void)n;
	GradedSpace sp = a.space;
	sp.name = "ad";
	for (auto& b : sp.basis)
		b.name = "ad_" + b.name;
	return module_from_actions(a, "ad", sp, m);
}

Poly<Q> J_map(const SHLiePair& p, const Poly<Q>& f)
{
	Alphabet lv = p.lv();
	const int n = lv.size();
	Alphabet out;
	for (int i = 0; i < p.nA; ++i)
		out.add(lv.name[i], lv.deg[i]);
	Poly<Q> r;
	for (const auto& [m, c] : f) {
		for (size_t i = 0; i < m.size(); ++i) {
			if (i > 0 && m[i] == m[i - 1])
				continue;
			Mono rest = m;
			rest.erase(rest.begin() + static_cast<long>(i));
			if (mono_count_in(rest, p.nA, n) > 0)
				continue;
			// multiplicity of an even generator; the copies give equal terms
			int mult = static_cast<int>(std::count(m.begin(), m.end(), m[i]));
			int after = 0;
			for (size_t j = i + 1; j < m.size(); ++j)
				if (m[j] != m[i])
					after += lv.deg[m[j]];
			bool neg = odd(lv.deg[m[i]]) && odd(after);
			rest.push_back(p.nA + m[i]);
			add_term(r, rest, neg ? -(c * Q(mult)) : c * Q(mult));
		}
	}
	(void)out;
	return r;
}

Poly<Q> I_map(int nA, const Alphabet& av, const Poly<Q>& f)
{
	Poly<Q> r;
	for (const auto& [m, c] : f)
		for (size_t i = 0; i < m.size(); ++i) {
			if (i > 0 && m[i] == m[i - 1])
				continue;
			Mono rest = m;
			rest.erase(rest.begin() + static_cast<long>(i));
			int mult = static_cast<int>(std::count(m.begin(), m.end(), m[i]));
			int after = 0;
			for (size_t j = i + 1; j < m.size(); ++j)
				if (m[j] != m[i])
					after += av.deg[m[j]];
			bool neg = odd(av.deg[m[i]]) && odd(after);
			rest.push_back(nA + m[i]);
			add_term(r, rest, neg ? -(c * Q(mult)) : c * Q(mult));
		}
	return r;
}

Module<Q> lvee_module(const SHLiePair& p)
{
	Alphabet lv = p.lv();
	GradedSpace sp = dual(p.l.space);
	sp.name = "L^";
	for (auto& b : sp.basis)
		b.name = "d" + b.name;
	Module<Q> m = empty_module<Q>("L^", lv, p.nA, p.qa(), sp);
	Derivation<Q> q = p.ql();
	for (const auto& [g, img] : q.img) {
		Poly<Q> v = J_map(p, img);
		if (!v.empty())
			m.d[p.nA + g] = std::move(v);
	}
	return m;
}

Report check_module(const LInfty& a, const Module<Q>& mod, int nmax)
{
	Report rep;
	rep.name = "module " + mod.name;
	auto m = module_actions(mod);
	const int mmax = static_cast<int>(m.size()) - 1;
	if (nmax < 0)
		nmax = 2 * std::max(a.kmax(), mmax);
	const auto deg = a.space.degrees();
	auto m_eval = [&](const std::vector<Vec<Q>>& args, const Vec<Q>& e) -> Vec<Q> {
		int k = static_cast<int>(args.size()) + 1;
		if (k > mmax)
			return {};
		return eval(m[k], args, &e);
	};
	for (int n = 0; n <= nmax; ++n)
		for (const Mono& us : canonical_tuples(deg, n, 0, a.space.dim())) {
			auto ds = degrees_of(a.space, us);
			for (int j = 0; j < mod.dim(); ++j) {
				Vec<Q> ej = unit_vec<Q>(j), tot;
				for (int l = 0; l <= n; ++l)
					for (const auto& sig : unshuffles({l, n - l})) {
						std::vector<int> first(sig.begin(), sig.begin() + l), rest(sig.begin() + l, sig.end());
						Vec<Q> inner = a.bracket(units(us, first));
						if (inner.empty())
							continue;
						std::vector<Vec<Q>> args{inner};
						for (auto& v : units(us, rest))
							args.push_back(std::move(v));
						axpy(tot, Q(koszul_sign(sig, ds)), m_eval(args, ej));
					}
				for (int k = 0; k <= n; ++k)
					for (const auto& tau : unshuffles({k, n - k})) {
						std::vector<int> first(tau.begin(), tau.begin() + k), rest(tau.begin() + k, tau.end());
						Vec<Q> inner = m_eval(units(us, rest), ej);
						if (inner.empty())
							continue;
						int dag = 0;
						for (int t : first)
							dag += ds[t];
						Q s(koszul_sign(tau, ds));
						if (odd(dag))
							s = -s;
						axpy(tot, s, m_eval(units(us, first), inner));
					}
				++rep.checked;
				if (!tot.empty())
					rep.fail("n=" + std::to_string(n) + " " + tuple_str(a.space, us) + " on "
						+ mod.space.basis[j].name + " -> " + vec_str(mod.space, tot));
			}
		}
	for (const auto& [g, v] : flatness_residual(mod)) {
		rep.fail("curvature on " + mod.alpha.name[g] + ": " + poly_str(mod.alpha, v));
	}
	return rep;
}

SHLiePair abelian_extension(const LInfty& a, const Module<Q>& mod)
{
	SHLiePair p;
	p.nA = a.space.dim();
	p.l.space.name = "L";
	p.l.space.basis = a.space.basis;
	for (const auto& b : mod.space.basis)
		p.l.space.basis.push_back(b);
	auto m = module_actions(mod);
	int kmax = std::max(a.kmax(), static_cast<int>(m.size()) - 1);
	p.l.lam = empty_brackets(p.l.space, kmax);
	for (int k = 0; k <= a.kmax(); ++k)
		for (const auto& [key, out] : a.lam[k].coeffs)
			for (const auto& [i, c] : out)
				p.l.lam[k].add(key, i, c);
	for (int k = 1; k < static_cast<int>(m.size()); ++k)
		for (const auto& [key, out] : m[k].coeffs) {
			Mono mk = key;
			mk.back() += p.nA;
			for (const auto& [i, c] : out)
				p.l.lam[k].add(mk, p.nA + i, c);
		}
	return p;
}

// ---- morphisms ----

namespace {

Q factorial(int n)
{
	Q r(1);
	for (int i = 2; i <= n; ++i)
		r *= Q(i);
	return r;
}

// <xi, f_k(u)> = (-1)^{k+1} (-1)^{|u|} <phi_k(xi), u>
Q morphism_pair_sign(int k, int udeg)
{
	return (odd(k + 1) != odd(udeg)) ? Q(-1) : Q(1);
}

int fmax_of(const MorphismData& f)
{
	return static_cast<int>(f.f.size()) - 1;
}

Vec<Q> f_eval(const MorphismData& f, const std::vector<Vec<Q>>& args)
{
	if (static_cast<int>(args.size()) > fmax_of(f))
		return {};
	return eval(f.f[args.size()], args);
}

// ordered compositions of n into r positive parts
void compositions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
	if (n == 0) {
		if (!cur.empty())
			out.push_back(cur);
		return;
	}
	for (int i = 1; i <= n; ++i) {
		cur.push_back(i);
		compositions(n - i, cur, out);
		cur.pop_back();
	}
}

} // namespace

std::vector<Poly<Q>> algebra_map(const MorphismData& f, const LInfty& src, const LInfty& dst)
{
	Alphabet av = src.dual();
	const int nd = dst.space.dim();
	std::vector<Poly<Q>> phi(nd);
	for (int k = 0; k <= fmax_of(f); ++k)
		for (const auto& [key, out] : f.f[k].coeffs) {
			int ud = 0;
			for (int u : key)
				ud += src.space.degree(u);
			Q pm = pair_left(av, key, Poly<Q>{{key, Q(1)}});
			for (const auto& [i, c] : out)
				add_term(phi[i], key, c * morphism_pair_sign(k, ud) / pm);
		}
	return phi;
}

MorphismData components_of(const std::vector<Poly<Q>>& phi, const LInfty& src, const LInfty& dst)
{
	Alphabet av = src.dual();
	int kmax = 0;
	for (const auto& p : phi)
		for (const auto& kv : p)
			kmax = std::max(kmax, static_cast<int>(kv.first.size()));
	MorphismData f;
	f.f.resize(kmax + 1);
	for (int k = 0; k <= kmax; ++k) {
		f.f[k].arity = k;
		f.f[k].src_deg = src.space.degrees();
		f.f[k].map_degree = 0;
	}
	for (int i = 0; i < dst.space.dim(); ++i)
		for (const auto& [key, c] : phi[i]) {
			int k = static_cast<int>(key.size());
			int ud = 0;
			for (int u : key)
				ud += src.space.degree(u);
			Q pm = pair_left(av, key, Poly<Q>{{key, Q(1)}});
			f.f[k].add(key, i, c * pm * morphism_pair_sign(k, ud));
		}
	return f;
}

MorphismVerdict check_morphism(const MorphismData& f, const LInfty& src, const LInfty& dst, int nmax)
{
	MorphismVerdict v;
	v.multilinear.name = "morphism relations";
	v.algebra.name = "algebra map";
	const int K = src.kmax(), Kp = dst.kmax(), F = fmax_of(f);
	if (nmax < 0)
		nmax = std::max(K + F - 1, Kp * std::max(F, 1));

	Vec<Q> f0;
	if (F >= 0)
		if (const Vec<Q>* z = f.f[0].find(Mono{}))
			f0 = *z;

	// f_0 relation
	{
		Vec<Q> lhs = dst.lambda0();
		for (int k = 1; k <= Kp; ++k) {
			if (f0.empty())
				break;
			std::vector<Vec<Q>> args(k, f0);
			axpy(lhs, Q(1) / factorial(k), dst.bracket(args));
		}
		Vec<Q> rhs = f_eval(f, {src.lambda0()});
		if (src.lambda0().empty())
			rhs.clear();
		axpy(lhs, Q(-1), rhs);
		++v.multilinear.checked;
		if (!lhs.empty())
			v.multilinear.fail("f_0 relation -> " + vec_str(dst.space, lhs));
	}

	const auto deg = src.space.degrees();
	for (int n = 1; n <= nmax; ++n)
		for (const Mono& us : canonical_tuples(deg, n, 0, src.space.dim())) {
			auto ds = degrees_of(src.space, us);
			Vec<Q> tot;
			for (int l = 0; l <= n; ++l) {
				if (l > K || n - l + 1 > F)
					continue;
				for (const auto& sig : unshuffles({l, n - l})) {
					std::vector<int> first(sig.begin(), sig.begin() + l), rest(sig.begin() + l, sig.end());
					Vec<Q> inner = src.bracket(units(us, first));
					if (inner.empty())
						continue;
					std::vector<Vec<Q>> args{inner};
					for (auto& x : units(us, rest))
						args.push_back(std::move(x));
					axpy(tot, Q(koszul_sign(sig, ds)), f_eval(f, args));
				}
			}
			std::vector<std::vector<int>> comps;
			std::vector<int> cur;
			compositions(n, cur, comps);
			for (const auto& comp : comps) {
				const int r = static_cast<int>(comp.size());
				bool ok = true;
				for (int i : comp)
					ok = ok && i <= F;
				if (!ok || r > Kp)
					continue;
				for (const auto& tau : unshuffles(comp)) {
					std::vector<Vec<Q>> outs;
					int pos = 0;
					for (int i : comp) {
						std::vector<int> idx(tau.begin() + pos, tau.begin() + pos + i);
						pos += i;
						outs.push_back(f_eval(f, units(us, idx)));
					}
					if (std::any_of(outs.begin(), outs.end(), [](const Vec<Q>& x) { return x.empty(); }))
						continue;
					Q eps(koszul_sign(tau, ds));
					for (int j = 0; r + j <= Kp; ++j) {
						if (j > 0 && f0.empty())
							break;
						std::vector<Vec<Q>> args(j, f0);
						args.insert(args.end(), outs.begin(), outs.end());
						axpy(tot, -eps / (factorial(j) * factorial(r)), dst.bracket(args));
					}
				}
			}
			++v.multilinear.checked;
			if (!tot.empty())
				v.multilinear.fail("n=" + std::to_string(n) + " " + tuple_str(src.space, us) + " -> "
					+ vec_str(dst.space, tot));
		}

	// phi o Q' = Q o phi on generators of L'^vee
	Alphabet av = src.dual(), bv = dst.dual();
	auto phi = algebra_map(f, src, dst);
	Derivation<Q> qs = src.q(), qd = dst.q();
	for (int i = 0; i < dst.space.dim(); ++i) {
		Poly<Q> lhs = substitute(av, phi, qd.image(i) ? *qd.image(i) : Poly<Q>{});
		Poly<Q> rhs = apply(av, qs, phi[i]);
		Poly<Q> diff = lhs - rhs;
		++v.algebra.checked;
		if (!diff.empty())
			v.algebra.fail("on " + bv.name[i] + ": " + poly_str(av, diff));
	}
	return v;
}

} // namespace shl
