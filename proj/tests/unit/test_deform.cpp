#include <doctest.h>

#include "fixtures.hpp"
#include "shl/deform.hpp"
#include "shl/liecoh.hpp"

using namespace shl;

namespace {
void show(const Report& r)
{
	for (auto& d : r.details)
		MESSAGE(r.name << ": " << d);
}

Deformation zero_def() { return Deformation{"zero", {}}; }
} // namespace

TEST_CASE("compatibility")
{
	SHLiePair p = fx::k_pair(Q(1), Q(2));
	CHECK(check_compatible(p, zero_def()).ok);

	// delta_+(a1^) = a1^ a2^ b^
	Deformation d{"kd", {}};
	d.q_plus.degree = 1;
	d.q_plus.set(0, fx::term({0, 1, 2}, Q(1)));
	Report r = check_compatible(p, d);
	show(r);
	CHECK(r.ok);

	// B^vee -> O(A) (x) B^vee deforms the module B
	Deformation bad{"bad", {}};
	bad.q_plus.degree = 1;
	bad.q_plus.set(2, fx::term({0, 2}, Q(1)));
	Report rb = check_compatible(p, bad);
	CHECK_FALSE(rb.ok);
	REQUIRE(!rb.details.empty());
	CHECK(rb.details.front().find("module B") != std::string::npos);

	std::mt19937 rng(3);
	for (auto pp : {fx::delta_pair(), fx::k_pair(Q(2), Q(-1)), fx::cb_pair()})
		for (int it = 0; it < 4; ++it) {
			GaugeMap g = random_gauge_map(rng, pp);
			CHECK(check_gauge_map(pp, g).ok);
			CHECK(check_compatible(pp, inner_deformation(pp, g)).ok);
			CHECK(check_compatible(pp, weight_deformation(pp)).ok);
		}
}

TEST_CASE("gauge relation and mutation")
{
	SHLiePair p = fx::delta_pair();
	std::mt19937 rng(11);
	GaugeMap g = random_gauge_map(rng, p);
	Deformation d1 = weight_deformation(p);
	Deformation d2{"d2", d1.q_plus - inner_deformation(p, g).q_plus};
	CHECK(check_gauge(p, d1, d2, g).ok);
	CHECK(check_gauge(p, d1, d1, GaugeMap{}).ok);
	GaugeMap wrong = g;
	wrong.psi[1] = scaled(g.psi1(), Q(2));
	if (!inner_deformation(p, g).q_plus.is_zero()) {
		CHECK_FALSE(check_gauge(p, d1, d2, wrong).ok);
		CHECK_THROWS_AS(verify_gauge_invariance(p, quotient_module(p), d1, d2, wrong), GaugeCheckFailed);
	}
}

TEST_CASE("deformed atiyah")
{
	SHLiePair p = fx::k_pair(Q(1), Q(2));
	Module<Q> e = fx::k_module(p, Q(3), Q(5));
	DeformedAtiyah z = deformed_atiyah(p, e, zero_def());
	CHECK(z.soul.is_zero());
	CHECK(z.rep.ok);

	Deformation d{"kd", {}};
	d.q_plus.degree = 1;
	d.q_plus.set(0, fx::term({0, 1, 2}, Q(1)));
	DeformedAtiyah a = deformed_atiyah(p, e, d);
	show(a.rep);
	CHECK(a.rep.ok);
	CHECK_FALSE(a.soul.is_zero());
	MESSAGE("soul " << poly_str(a.data.tower.alpha, *a.soul.image(0)));
	CHECK(*a.soul.image(0) == fx::term({0, 1, 2, 3}, Q(3)));

	// [d, delta_+] on cochains of E agrees with the soul
	const Tower<Q>& t = a.data.tower;
	Derivation<Q> dplus = decompose_plus(p, d).delta;
	for (const auto& r : basis_cochains(e, 3)) {
		Poly<Q> dr = apply(e.alpha, e.nabla(), r);
		Poly<Q> lhs = apply(t.alpha, dplus, lift_block(e, t.off[1], t.alpha, dr)) +
			apply(t.alpha, t.nabla, apply(t.alpha, dplus, lift_block(e, t.off[1], t.alpha, r)));
		CHECK(lhs == op_apply(e, t.alpha, a.soul, r));
	}

	// a gauge-trivial deformation has an exact soul
	std::mt19937 rng(5);
	SHLiePair dp = fx::delta_pair();
	Module<Q> b = quotient_module(dp);
	for (int it = 0; it < 4; ++it) {
		GaugeMap g = random_gauge_map(rng, dp);
		GaugeWitness w = verify_gauge_invariance(dp, b, inner_deformation(dp, g), zero_def(), g);
		show(w.rep);
		CHECK(w.rep.ok);
	}
}

TEST_CASE("gauge invariance witness")
{
	std::mt19937 rng(17);
	int nonzero = 0;
	for (int it = 0; it < 12; ++it) {
		SHLiePair p = it % 3 == 0 ? fx::delta_pair() : (it % 3 == 1 ? fx::k_pair(Q(1), Q(-3)) : fx::cb_pair());
		std::vector<Module<Q>> mods{quotient_module(p), perp_module(p), adjoint_module(p.a())};
		if (p.nA == 2)
			mods.push_back(fx::k_module(p, Q(2), Q(7)));
		else
			mods.push_back(fx::cb_module(p));
		GaugeMap g0 = random_gauge_map(rng, p), g = random_gauge_map(rng, p);
		Deformation d1{"d1", weight_deformation(p).q_plus + inner_deformation(p, g0).q_plus};
		Deformation d2{"d2", d1.q_plus - inner_deformation(p, g).q_plus};
		for (auto& e : mods) {
			GaugeWitness w = verify_gauge_invariance(p, e, d1, d2, g);
			show(w.rep);
			CHECK(w.rep.ok);
			nonzero += !w.dw.is_zero();
		}
	}
	MESSAGE(nonzero << " nonzero witnesses");
	CHECK(nonzero > 0);
}

TEST_CASE("cohomology over dual numbers doubles")
{
	SHLiePair p = fx::k_pair(Q(1), Q(2));
	Module<Q> e = fx::k_module(p, Q(3), Q(5));
	for (int n = 1; n <= 3; ++n) {
		Report r = dual_cohomology_check(p, e, n, 3);
		show(r);
		CHECK(r.ok);
	}
}
