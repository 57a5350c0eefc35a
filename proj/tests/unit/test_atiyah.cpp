#include <doctest.h>

#include "fixtures.hpp"

using namespace shl;

TEST_CASE("k pair golden alpha_2")
{
	SHLiePair p = fx::k_pair(Q(1), Q(2));
	Module<Q> e = fx::k_module(p, Q(3), Q(5));
	CHECK(check_jacobi(p.l).ok);
	CHECK(check_module(p.a(), e).ok);
	AtiyahReport r = atiyah(p, e);
	for (auto& d : r.checks.details)
		MESSAGE(d);
	CHECK(r.checks.ok);
	REQUIRE(r.split.size() == 3);
	CHECK(r.split[0].empty());
	CHECK(r.split[1].empty());
	const Vec<Q>* v = r.split[2].find(Mono{0, 1, 0});
	REQUIRE(v);
	CHECK(*v == Vec<Q>{{0, Q(-13)}});
}

TEST_CASE("delta pair golden alpha^B")
{
	SHLiePair p = fx::delta_pair();
	auto j = check_jacobi(p.l);
	for (auto& d : j.details)
		MESSAGE(d);
	CHECK(j.ok);
	CHECK(check_pair(p).ok);
	Module<Q> b = quotient_module(p);
	CHECK(check_module(p.a(), b).ok);
	AtiyahReport r = atiyah(p, b);
	for (auto& d : r.checks.details)
		MESSAGE(d);
	CHECK(r.checks.ok);
	MESSAGE(poly_str(r.data.tower.alpha, *r.data.op.image(0)));
	for (int w = 1; w <= 4; ++w) {
		auto v = class_vanishes(p, b, w);
		CHECK(!v.vanishes);
		CHECK(v.verdict() == "NoSolutionUpToWeight(" + std::to_string(w) + ")");
	}
}

TEST_CASE("k pair class")
{
	SHLiePair p = fx::k_pair(Q(1), Q(2));
	auto v = class_vanishes(p, fx::k_module(p, Q(3), Q(5)), 3);
	CHECK(v.verdict() == "NONVANISHING (exact)");
	auto z = class_vanishes(p, fx::k_module(p, Q(2), Q(-1)), 3);
	CHECK(z.zero_cocycle);
}

TEST_CASE("connecting map")
{
	SHLiePair p = fx::delta_pair();
	Module<Q> b = quotient_module(p);
	Report r = connecting_check(p, b);
	for (auto& d : r.details)
		MESSAGE(d);
	CHECK(r.ok);
	SHLiePair k = fx::k_pair(Q(1), Q(2));
	Report r2 = connecting_check(k, fx::k_module(k, Q(3), Q(5)));
	for (auto& d : r2.details)
		MESSAGE(d);
	CHECK(r2.ok);
}
