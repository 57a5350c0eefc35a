#include <doctest.h>

#include "fixtures.hpp"
#include "shl/liecoh.hpp"

using namespace shl;

namespace {
void show(const Report& r)
{
	MESSAGE(r.name << " checked " << r.checked);
	for (auto& d : r.details)
		MESSAGE(r.name << ": " << d);
}
} // namespace

TEST_CASE("delta pair bracket of b")
{
	SHLiePair p = fx::delta_pair();
	Module<Q> b = quotient_module(p);
	Poly<Q> x = fx::term({b.gen(0)}, Q(1));
	Poly<Q> z = atiyah_operator(p, b, x, x);
	CHECK(z == fx::term({1, b.gen(0)}, Q(1)));
}

TEST_CASE("delta pair generator table")
{
	SHLiePair p = fx::delta_pair();
	BracketTable t = bracket_table(p, 1, 1, 3);
	REQUIRE(t.generators.size() == 1);
	Module<Q> b = quotient_module(p);
	CHECK(t.generators[0].value == fx::term({1, b.gen(0)}, Q(1)));
}

TEST_CASE("operator identities")
{
	for (auto* pp : {fx::delta_pair, +[] { return fx::k_pair(Q(1), Q(2)); }}) {
		SHLiePair p = pp();
		std::vector<Module<Q>> mods{quotient_module(p), perp_module(p), adjoint_module(p.a())};
		if (p.nA == 2)
			mods.push_back(fx::k_module(p, Q(3), Q(5)));
		for (auto& e : mods) {
			Report r = operator_checks(atiyah_operator(p, e));
			show(r);
			CHECK(r.ok);
			Report j = jacobi_witness(p, e).rep;
			show(j);
			CHECK(j.ok);
		}
		Report s = skew_witness(p).rep;
		show(s);
		CHECK(s.ok);
		Report l = leibniz_checks(p, mods[0], mods.back(), 2);
		show(l);
		CHECK(l.ok);
	}
}

TEST_CASE("random pairs: routes, operator and witness identities")
{
	std::mt19937 rng(2024);
	int nonzero = 0, t2 = 0;
	for (int it = 0; it < 16; ++it) {
		SHLiePair p = fx::random_pair(rng, true, true);
		REQUIRE(check_jacobi(p.l).ok);
		REQUIRE(check_pair(p).ok);
		Module<Q> b = quotient_module(p);
		std::vector<Module<Q>> mods{b, perp_module(p)};
		for (auto& e : mods) {
			AtiyahReport r = atiyah(p, e);
			show(r.checks);
			CHECK(r.checks.ok);
			nonzero += !r.zero();
			Report o = operator_checks(atiyah_operator(p, e), 1);
			show(o);
			CHECK(o.ok);
		}
		Report j = jacobi_witness(p, b, 1).rep;
		show(j);
		CHECK(j.ok);
		SkewWitness s = skew_witness(p);
		show(s.rep);
		CHECK(s.rep.ok);
		t2 += !s.p.is_zero();
	}
	MESSAGE(nonzero << " nonzero cocycles, " << t2 << " nonzero P");
	CHECK(nonzero > 5);
	CHECK(t2 >= 1);
}

TEST_CASE("skew witness with nonzero T_2")
{
	std::mt19937 rng(77);
	int found = 0, tries = 0;
	while (found < 5 && tries++ < 300) {
		SHLiePair p = fx::random_pair(rng, true, true);
		if (!decompose_Q(p).t.count(2))
			continue;
		SkewWitness s = skew_witness(p);
		show(s.rep);
		CHECK(s.rep.ok);
		CHECK(!s.p.is_zero());
		++found;
	}
	CHECK(found == 5);
}

TEST_CASE("bracket and action tables")
{
	std::mt19937 rng(5);
	int classes = 0, nonzero = 0;
	for (int it = 0; it < 8; ++it) {
		SHLiePair p = it == 0 ? fx::delta_pair() : (it == 1 ? fx::cb_pair() : fx::random_pair(rng, true, true));
		for (int n1 = -1; n1 <= 2; ++n1)
			for (int n2 = n1; n2 <= 2; ++n2) {
				BracketTable t = bracket_table(p, n1, n2, 3);
				show(t.checks);
				CHECK(t.checks.ok);
				classes += static_cast<int>(t.left.size());
				for (auto& row : t.out)
					for (auto& c : row)
						for (auto& x : c)
							nonzero += x != 0;
			}
		Module<Q> e = p.nA == 3 ? fx::cb_module(p) : adjoint_module(p.a());
		for (int n1 = 0; n1 <= 2; ++n1) {
			BracketTable t = action_table(p, e, n1, n1, 3);
			show(t.checks);
			CHECK(t.checks.ok);
		}
	}
	MESSAGE(classes << " classes");
	// brackets of closed cochains are exact here, so every structure constant vanishes
	CHECK(nonzero == 0);
}

TEST_CASE("Leibniz identities and functor check on random pairs")
{
	std::mt19937 rng(9);
	int morphisms = 0;
	for (int it = 0; it < 6; ++it) {
		SHLiePair p = it == 0 ? fx::cb_pair() : fx::random_pair(rng, true, true);
		Module<Q> b = quotient_module(p), e = p.nA == 3 ? fx::cb_module(p) : adjoint_module(p.a());
		Report l = leibniz_checks(p, b, e, 2);
		show(l);
		CHECK(l.ok);
		Module<Q> one = base_module(p.a(), "k", fx::space("k", {{"1", 0}}));
		Module<Q> bb = tensor_module(b, perp_module(p));
		for (auto& [src, dst] : std::vector<std::pair<Module<Q>, Module<Q>>>{{bb, one}, {e, e}, {b, b}})
			for (auto& phi : module_morphisms(src, dst, 2)) {
				++morphisms;
				Report f = functor_check(p, src, dst, phi, 2);
				show(f);
				CHECK(f.ok);
			}
	}
	MESSAGE(morphisms << " morphisms");
	CHECK(morphisms > 6);
}
