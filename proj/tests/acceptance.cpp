// One line per acceptance criterion. Exit status is nonzero when any line fails.

#include "fixtures.hpp"
#include "shl/cli.hpp"
#include "shl/complex.hpp"
#include "shl/deform.hpp"
#include "shl/io.hpp"
#include "shl/liecoh.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace shl;

namespace {

struct Verdict {
	bool ok = true;
	std::string summary;
	std::vector<std::string> why;

	void need(bool c, const std::string& what)
	{
		if (c)
			return;
		ok = false;
		if (why.size() < 6)
			why.push_back(what);
	}
	void need(const Report& r, const std::string& what)
	{
		need(r.ok, what + ": " + (r.details.empty() ? r.name : r.details.front()));
	}
};

std::string examples_dir() { return SHL_EXAMPLES; }

struct Cli {
	int code;
	std::string out;
};

Cli cli(std::vector<std::string> args)
{
	std::ostringstream out, err;
	int c = run_cli(args, out, err);
	return {c, out.str() + err.str()};
}

bool has(const std::string& text, const std::string& what) { return text.find(what) != std::string::npos; }

std::vector<Definition> shipped()
{
	std::vector<std::string> paths;
	for (const auto& f : std::filesystem::directory_iterator(examples_dir()))
		if (f.path().extension() == ".shl")
			paths.push_back(f.path().string());
	std::sort(paths.begin(), paths.end());
	std::vector<Definition> out;
	for (const auto& p : paths)
		out.push_back(load_definition(p));
	return out;
}

std::vector<Module<Q>> modules_of(const Definition& d)
{
	std::vector<Module<Q>> out{find_module(d, "B"), find_module(d, "B^"), find_module(d, "ad")};
	for (const auto& n : d.module_order)
		out.push_back(d.modules.at(n));
	return out;
}

Q random_rational(std::mt19937& rng)
{
	std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
	return Q(num(rng), den(rng));
}

// the only nonzero component of the k pair class is alpha_2(a1, a2, b, e)
bool k_components(const std::vector<SymMap<Q>>& split, const Q& want)
{
	for (size_t k = 0; k < split.size(); ++k) {
		if (k == 2)
			continue;
		if (!split[k].empty())
			return false;
	}
	if (split.size() < 3)
		return want == 0;
	if (want == 0)
		return split[2].empty();
	return split[2].coeffs.size() == 1 && split[2].find(Mono{0, 1, 0}) &&
		*split[2].find(Mono{0, 1, 0}) == Vec<Q>{{0, want}};
}

bool square_zero(const Alphabet& a, const Derivation<Q>& q)
{
	for (const auto& [g, v] : q.img)
		if (!apply(a, q, v).empty())
			return false;
	return true;
}

// a second connection: the trivial one plus terms with at least one B^vee factor
Connection random_connection(std::mt19937& rng, const SHLiePair& p, const Module<Q>& e, int terms = 2)
{
	const int nL = p.l.space.dim();
	Connection c0 = trivial_connection(p, e);
	std::map<int, Poly<Q>> extra;
	for (int j = 0; j < e.dim(); ++j) {
		std::vector<Mono> pool;
		for (auto& m : monomials_of_degree(c0.m.alpha, 0, nL + e.dim(), 3, c0.m.alpha.deg[nL + j] + 1))
			if (mono_count_in(m, nL, nL + e.dim()) == 1 && mono_count_in(m, p.nA, nL) >= 1)
				pool.push_back(m);
		Poly<Q> f = random_poly(rng, pool, terms);
		if (!f.empty())
			extra[nL + j] = f;
	}
	return perturbed_connection(p, e, extra);
}

std::vector<SHLiePair> fixed_pairs()
{
	return {fx::k_pair(Q(1), Q(2)), fx::delta_pair(), fx::lie_pair(), fx::cb_pair()};
}

// ---------------------------------------------------------------------------

Verdict k_golden()
{
	Verdict v;
	Cli r = cli({"atiyah", examples_dir() + "/k-pair.shl", "--module", "E"});
	v.need(r.code == 0, "atiyah exit code " + std::to_string(r.code));
	v.need(has(r.out, "alpha_2(a1,a2,b,e) = -13*e"), "alpha_2 line missing");
	v.need(has(r.out, "all other components zero"), "other components not reported zero");

	SHLiePair p = fx::k_pair(Q(1), Q(2));
	v.need(k_components(alpha_split(p, fx::k_module(p, Q(3), Q(5))), Q(-13)), "split at (1,2,3,5)");

	std::mt19937 rng(101);
	int n = 0;
	for (int it = 0; it < 20; ++it) {
		Q k1 = random_rational(rng), k2 = random_rational(rng), k3 = random_rational(rng), k4 = random_rational(rng);
		SHLiePair kp = fx::k_pair(k1, k2);
		Module<Q> e = fx::k_module(kp, k3, k4);
		AtiyahReport a = atiyah(kp, e);
		Q want = -(k1 * k3 + k2 * k4);
		bool ok = k_components(a.split, want) && a.checks.ok;
		v.need(ok, "tuple (" + k1.str() + "," + k2.str() + "," + k3.str() + "," + k4.str() + ")");
		n += ok;
	}
	v.summary = "alpha_2 = -13 e on k-pair.shl, " + std::to_string(n) + "/20 rational tuples give -(k1k3+k2k4)";
	return v;
}

Verdict k_class()
{
	Verdict v;
	Cli r = cli({"class", examples_dir() + "/k-pair.shl", "--module", "E"});
	v.need(r.code == 0 && has(r.out, "NONVANISHING"), "class on k-pair.shl: " + r.out);

	std::mt19937 rng(202);
	int nz = 0, z = 0;
	for (int it = 0; it < 20; ++it) {
		Q k1 = random_rational(rng), k2 = random_rational(rng), k3, k4;
		if (it % 4 == 3) {
			Q t = random_rational(rng);
			k3 = k2 * t;
			k4 = -(k1 * t);
		} else {
			k3 = random_rational(rng);
			k4 = random_rational(rng);
		}
		SHLiePair p = fx::k_pair(k1, k2);
		VanishingVerdict c = class_vanishes(p, fx::k_module(p, k3, k4), 3);
		const bool zero = k1 * k3 + k2 * k4 == 0;
		if (zero) {
			v.need(c.zero_cocycle, "zero case reported " + c.verdict());
			++z;
		} else {
			v.need(!c.vanishes && c.exact && c.verdict() == "NONVANISHING (exact)", "nonzero case reported " + c.verdict());
			++nz;
		}
	}
	v.summary = std::to_string(nz) + " nonvanishing and " + std::to_string(z) + " zero-cocycle tuples as predicted";
	return v;
}

Verdict delta_golden()
{
	Verdict v;
	const std::string f = examples_dir() + "/delta-pair.shl";
	Cli a = cli({"atiyah", f, "--module", "B"});
	v.need(a.code == 0 && has(a.out, "alpha^B = -a1^ (x) b^ (x) b^ (x) b"), "alpha^B line: " + a.out);
	Cli perp = cli({"atiyah", f, "--module", "B^"});
	v.need(perp.code == 0 && has(perp.out, "alpha(b^) = -1*a1^*b^*b^"), "alpha on b^ line");
	for (int n = 1; n <= 4; ++n) {
		Cli c = cli({"class", f, "--max-weight", std::to_string(n)});
		v.need(c.code == 0 && has(c.out, "NoSolutionUpToWeight(" + std::to_string(n) + ")"), "class N=" + std::to_string(n));
		VanishingVerdict lv = class_vanishes(fx::delta_pair(), quotient_module(fx::delta_pair()), n);
		v.need(lv.verdict() == "NoSolutionUpToWeight(" + std::to_string(n) + ")", "library class N=" + std::to_string(n));
	}
	Cli b = cli({"bracket", f, "--degree", "1"});
	v.need(b.code == 0 && has(b.out, "[b[-2],b[-2]] = a1^ (x) b[-2]"), "bracket line");
	BracketTable t = bracket_table(fx::delta_pair(), 1, 1, 3);
	v.need(t.generators.size() == 1 && t.generators[0].value == fx::term({1, 3}, Q(1)), "generator table value");
	v.summary = "alpha^B = -a1^ (x) b^ (x) b^ (x) b, NoSolutionUpToWeight(1..4), [b[-2],b[-2]] = a1^ (x) b[-2]";
	return v;
}

Verdict dual_oracle()
{
	Verdict v;
	int compared = 0, nonzero = 0;
	auto one = [&](const SHLiePair& p, const Module<Q>& e, const std::string& tag) {
		AtiyahReport r = atiyah(p, e);
		v.need(same_components(r.split, r.from_operator), tag + " " + e.name + ": split vs delta(D)");
		v.need(same_components(r.split, r.from_curvature), tag + " " + e.name + ": split vs curvature");
		AtiyahOperator op = atiyah_operator(p, e);
		// the operator on every basis cochain of weight <= 2 against the cocycle
		for (const auto& x : basis_cochains(e, 2)) {
			Poly<Q> lhs = op.image(x);
			Poly<Q> rhs = op_apply(e, r.data.tower.alpha, r.data.op, x);
			v.need(lhs == rhs, tag + " " + e.name + ": operator image");
		}
		++compared;
		nonzero += !r.zero();
	};
	int files = 0;
	for (const auto& d : shipped()) {
		++files;
		for (const auto& e : modules_of(d))
			one(d.pair, e, d.source);
	}
	for (const auto& p : fixed_pairs()) {
		one(p, quotient_module(p), "fixture");
		one(p, perp_module(p), "fixture");
	}
	std::mt19937 rng(404);
	for (int it = 0; it < 50; ++it) {
		SHLiePair p = fx::random_pair(rng, true, false, 6);
		v.need(p.l.kmax() <= 3 && p.l.space.dim() <= 6, "random pair out of range");
		one(p, quotient_module(p), "random " + std::to_string(it));
		one(p, perp_module(p), "random " + std::to_string(it));
	}
	v.summary = std::to_string(compared) + " (pair, module) comparisons over " + std::to_string(files) +
		" files, fixtures and 50 random pairs, " + std::to_string(nonzero) + " nonzero cocycles";
	return v;
}

Verdict properties()
{
	Verdict v;
	std::mt19937 rng(505);
	long squares = 0;
	int mut_l = 0, mut_m = 0, conns = 0, sampled = 0;
	std::vector<std::pair<SHLiePair, Module<Q>>> valid;
	for (const auto& d : shipped())
		for (const auto& e : modules_of(d))
			valid.push_back({d.pair, e});
	for (const auto& p : fixed_pairs())
		valid.push_back({p, quotient_module(p)});
	valid.push_back({fx::k_pair(Q(1), Q(2)), fx::k_module(fx::k_pair(Q(1), Q(2)), Q(3), Q(5))});
	valid.push_back({fx::cb_pair(), fx::cb_module(fx::cb_pair())});
	for (int it = 0; it < 6; ++it) {
		SHLiePair p = fx::random_pair(rng, true, true);
		valid.push_back({p, quotient_module(p)});
	}

	for (const auto& [p, e] : valid) {
		v.need(check_jacobi(p.l), "Jacobi on a valid pair");
		v.need(square_zero(p.lv(), p.ql()), "Q_L squared");
		v.need(check_module(p.a(), e), "module relation of " + e.name);
		TruncatedComplex c(e, 3);
		for (int n = -1; n <= 4; ++n, ++squares)
			v.need(c.d_squared_zero(n), "d^2 on C^" + std::to_string(n) + "(" + e.name + ")");
		Tower<Q> t = atiyah_tower(p, e);
		Op<Q> alpha = alpha_by_operator(p, e);
		v.need(op_differential(e, t, op_differential(e, t, alpha)).is_zero(), "d^2 on the Atiyah cocycle");
		++squares;
		for (int k = 0; k < 2; ++k, ++conns) {
			Connection c = k == 0 ? trivial_connection(p, e) : random_connection(rng, p, e);
			v.need(bianchi(c), "Bianchi");
		}
		Report j = connecting_check(p, e, 8, 9);
		v.need(j, "IJ / J1 / key relation");
		sampled += j.checked;
	}

	// mutations: the bracket-side checks must fail exactly when the mutated data is inconsistent
	std::vector<SHLiePair> bases = fixed_pairs();
	for (int it = 0; it < 40; ++it) {
		const SHLiePair& p = bases[it % bases.size()];
		Alphabet a = p.lv();
		Derivation<Q> q = p.ql();
		std::uniform_int_distribution<int> g(0, a.size() - 1);
		int i = g(rng);
		Poly<Q> extra = random_poly(rng, monomials_of_degree(a, 0, a.size(), 3, a.deg[i] + 1), 1);
		if (extra.empty())
			continue;
		q.set(i, (q.image(i) ? *q.image(i) : Poly<Q>{}) + extra);
		const bool bad = !square_zero(a, q);
		LInfty l = linfty_from_derivation(p.l.space, q);
		v.need(check_jacobi(l).ok != bad, "Jacobi check disagrees with Q^2 on a mutation");
		mut_l += bad;
	}
	for (int it = 0; it < 80; ++it) {
		auto [p, e] = valid[it % valid.size()];
		if (e.dim() == 0)
			continue;
		std::uniform_int_distribution<int> g(0, e.dim() - 1);
		int j = e.gen(g(rng));
		Poly<Q> extra = random_poly(rng, monomials_of_degree(e.alpha, 0, e.alpha.size(), 3, e.alpha.deg[j] + 1), 1);
		Poly<Q> lin;
		for (const auto& [m, c] : extra)
			if (mono_count_in(m, e.nA, e.alpha.size()) == 1)
				add_term(lin, m, c);
		if (lin.empty())
			continue;
		e.d[j] = (e.d.count(j) ? e.d[j] : Poly<Q>{}) + lin;
		if (e.d[j].empty())
			e.d.erase(j);
		const bool bad = !flatness_residual(e).empty();
		v.need(check_module(p.a(), e).ok != bad, "module check disagrees with flatness on a mutation");
		mut_m += bad;
	}
	v.need(mut_l >= 10, "only " + std::to_string(mut_l) + " inconsistent bracket mutations");
	v.need(mut_m >= 10, "only " + std::to_string(mut_m) + " inconsistent module mutations");
	v.summary = std::to_string(squares) + " square-zero checks, " + std::to_string(mut_l) + " + " + std::to_string(mut_m) +
		" failing mutations detected, " + std::to_string(conns) + " Bianchi checks, " + std::to_string(sampled) +
		" sampled IJ/J1/key checks";
	return v;
}

Verdict connections()
{
	Verdict v;
	std::mt19937 rng(606);
	int n = 0, moved = 0;
	SHLiePair k = fx::k_pair(Q(1), Q(2));
	Definition lie = load_definition(examples_dir() + "/liepair.shl");
	std::vector<std::pair<SHLiePair, Module<Q>>> cases{
		{k, fx::k_module(k, Q(3), Q(5))}, {k, quotient_module(k)}, {lie.pair, find_module(lie, "B")},
		{lie.pair, find_module(lie, "ad")}};
	for (int it = 0; it < 24; ++it) {
		const auto& [p, e] = cases[it % cases.size()];
		Connection c1 = it % 3 == 0 ? trivial_connection(p, e) : random_connection(rng, p, e);
		Connection c2 = random_connection(rng, p, e);
		ConnectionComparison cmp = compare_connections(p, e, c1, c2);
		v.need(cmp.rep, "connection comparison on " + e.name);
		++n;
		moved += !cmp.witness.is_zero();
	}
	v.need(moved >= 10, "only " + std::to_string(moved) + " nontrivial second connections");
	v.summary = std::to_string(n) + " connection pairs on FIX-K and liepair.shl, " + std::to_string(moved) +
		" with nonzero difference, alpha_1 - alpha_2 = d(w) exactly";
	return v;
}

Verdict triviality()
{
	Verdict v;
	std::mt19937 rng(707);
	int n = 0, real = 0;
	for (int it = 0; it < 20; ++it) {
		// an abelian extension presented in a random splitting
		SHLiePair p = fx::random_pair(rng, it % 4 != 0, it % 4 != 0);
		Module<Q> b = quotient_module(p);
		VanishingVerdict c = class_vanishes(p, b, 3);
		v.need(c.vanishes && c.verified, "extension " + std::to_string(it) + ": " + c.verdict());
		if (!c.zero_cocycle) {
			// the primitive is checked again here: d(gamma) = alpha on full polynomials
			Tower<Q> t = atiyah_tower(p, b);
			v.need((op_differential(b, t, c.primitive) - alpha_by_operator(p, b)).is_zero(), "primitive of extension " +
				std::to_string(it));
			++real;
		}
		++n;
	}
	v.summary = std::to_string(n) + " abelian extensions vanish, " + std::to_string(real) +
		" with a nonzero cocycle and a verified primitive";
	return v;
}

Verdict lie_structure()
{
	Verdict v;
	std::vector<SHLiePair> pairs = fixed_pairs();
	for (const auto& d : shipped())
		pairs.push_back(d.pair);
	long tables = 0, checked = 0;
	for (const auto& p : pairs) {
		v.need(skew_witness(p).rep, "skew witness");
		v.need(jacobi_witness(p, quotient_module(p), 2).rep, "Jacobi witness");
		for (int n1 = -2; n1 <= 2; ++n1)
			for (int n2 = n1; n2 <= 2; ++n2) {
				BracketTable t = bracket_table(p, n1, n2, 3);
				v.need(t.checks, "bracket table (" + std::to_string(n1) + "," + std::to_string(n2) + ")");
				++tables;
				checked += t.checks.checked;
			}
	}
	v.summary = std::to_string(pairs.size()) + " pairs, " + std::to_string(tables) + " bracket tables at |n| <= 2, " +
		std::to_string(checked) + " skew/Jacobi checks";
	return v;
}

Verdict gauge()
{
	Verdict v;
	std::mt19937 rng(909);
	int n = 0, nonzero = 0;
	for (int it = 0; it < 10; ++it) {
		const bool delta = it % 2 == 0;
		SHLiePair p = delta ? fx::delta_pair() : fx::k_pair(random_coeff(rng), random_coeff(rng));
		Module<Q> e = delta ? quotient_module(p) : fx::k_module(p, random_coeff(rng), random_coeff(rng));
		GaugeMap g0 = random_gauge_map(rng, p), g = random_gauge_map(rng, p);
		Deformation d1{"def1", weight_deformation(p).q_plus + inner_deformation(p, g0).q_plus};
		Deformation d2{"def2", d1.q_plus - inner_deformation(p, g).q_plus};
		v.need(check_compatible(p, d1), "def1 compatible");
		v.need(check_gauge(p, d1, d2, g), "def2 = def1 - [Q_L, lambda]");
		try {
			GaugeWitness w = verify_gauge_invariance(p, e, d1, d2, g);
			v.need(w.rep, "gauge witness");
			nonzero += !w.dw.is_zero();
		} catch (const GaugeCheckFailed& x) {
			v.need(false, x.what());
		}
		++n;
	}
	v.need(nonzero > 0, "every witness was zero");
	v.summary = std::to_string(n) + " (def, lambda) pairs on FIX-DELTA and FIX-K, " + std::to_string(nonzero) +
		" with nonzero d_A W";
	return v;
}

Verdict morphisms()
{
	Verdict v;
	std::mt19937 rng(1010);
	int good = 0, bad = 0;
	for (int it = 0; it < 10; ++it) {
		SHLiePair p = it < 4 ? fixed_pairs()[it] : fx::random_pair(rng, true, false, 5);
		Alphabet a = p.lv();
		Derivation<Q> q = p.ql();
		fx::Twist t = fx::random_twist(rng, a, p.nA, 2, it % 2 == 1);
		// phi Q = Q' phi with Q' = phi Q phi^{-1}
		LInfty dst = p.l;
		LInfty src = linfty_from_derivation(p.l.space, fx::conjugate(a, t, q));
		MorphismData f = components_of(t.phi, src, dst);
		v.need(algebra_map(f, src, dst) == t.phi, "components do not reassemble");
		MorphismVerdict m = check_morphism(f, src, dst);
		v.need(m.agree() && m.multilinear.ok, "morphism " + std::to_string(it) + ": " +
			(m.multilinear.details.empty() ? std::string("routes disagree") : m.multilinear.details.front()));
		good += m.multilinear.ok && m.algebra.ok;

		// a perturbed map between the same algebras: both routes must reject it or both accept it
		std::vector<Poly<Q>> phi = t.phi;
		std::uniform_int_distribution<int> gi(0, a.size() - 1);
		int i = gi(rng);
		std::vector<Mono> pool;
		for (auto& mono : monomials_of_degree(a, 0, a.size(), 2, a.deg[i]))
			if (!mono.empty())
				pool.push_back(mono);
		phi[i] = phi[i] + random_poly(rng, pool, 1);
		MorphismData g = components_of(phi, src, dst);
		MorphismVerdict mg = check_morphism(g, src, dst);
		v.need(mg.agree(), "routes disagree on a perturbed map " + std::to_string(it));
		bad += !mg.algebra.ok;
	}
	v.need(bad > 0, "no perturbed map was rejected");
	v.summary = std::to_string(good) + "/10 morphisms accepted by both routes, " + std::to_string(bad) +
		" perturbed maps rejected by both";
	return v;
}

} // namespace

int main()
{
	const std::vector<std::pair<std::string, std::function<Verdict()>>> crit{
		{"FIX-K golden value", k_golden},
		{"FIX-K nonvanishing", k_class},
		{"FIX-DELTA golden values", delta_golden},
		{"dual-oracle equivalence", dual_oracle},
		{"property suites", properties},
		{"connection independence", connections},
		{"triviality for abelian extensions", triviality},
		{"Lie structure", lie_structure},
		{"gauge invariance", gauge},
		{"morphism routes", morphisms},
	};
	int failed = 0;
	for (size_t i = 0; i < crit.size(); ++i) {
		auto t0 = std::chrono::steady_clock::now();
		Verdict v;
		try {
			v = crit[i].second();
		} catch (const std::exception& e) {
			v.ok = false;
			v.why.push_back(std::string("exception: ") + e.what());
		}
		double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
		std::cout << (v.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << crit[i].first << ": " << v.summary << " ["
				  << static_cast<int>(s * 1000) << " ms]\n";
		for (const auto& w : v.why)
			std::cout << "    " << w << "\n";
		failed += !v.ok;
	}
	std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria pass") << "\n";
	return failed ? 1 : 0;
}
