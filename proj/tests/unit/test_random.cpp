#include <doctest.h>

#include "fixtures.hpp"

using namespace shl;

namespace {

bool same_d(const Module<Q>& a, const Module<Q>& b)
{
	for (int j = 0; j < a.dim(); ++j) {
		Poly<Q> x = a.d.count(a.gen(j)) ? a.d.at(a.gen(j)) : Poly<Q>{};
		Poly<Q> y = b.d.count(b.gen(j)) ? b.d.at(b.gen(j)) : Poly<Q>{};
		if (!(x - y).empty())
			return false;
	}
	return true;
}

std::vector<SHLiePair> twisted(const SHLiePair& base, unsigned seed, int count)
{
	std::mt19937 rng(seed);
	std::vector<SHLiePair> out;
	while (static_cast<int>(out.size()) < count) {
		Alphabet a = base.lv();
		auto t = fx::random_twist(rng, a, base.nA, 2);
		Derivation<Q> q = fx::conjugate(a, t, base.ql());
		if (derivation_arity(q) > 4)
			continue;
		out.push_back(fx::from_q(base.l.space, base.nA, q));
	}
	return out;
}

} // namespace

TEST_CASE("dual of the quotient is the perp module")
{
	for (auto& p : twisted(fx::delta_pair(), 5, 8)) {
		CHECK(check_jacobi(p.l).ok);
		CHECK(check_pair(p).ok);
		Module<Q> b = quotient_module(p);
		CHECK(check_module(p.a(), b).ok);
		CHECK(same_d(dual_module(b), perp_module(p)));
	}
}

TEST_CASE("three routes agree on twisted pairs")
{
	int nonzero = 0;
	long checked = 0;
	for (auto& p : twisted(fx::delta_pair(), 11, 4)) {
		LInfty a = p.a();
		Module<Q> b = quotient_module(p);
		std::vector<Module<Q>> mods{b, perp_module(p), adjoint_module(a), dual_module(adjoint_module(a)),
			tensor_module(b, perp_module(p))};
		for (auto& e : mods) {
			CHECK(check_module(a, e).ok);
			AtiyahReport r = atiyah(p, e);
			for (auto& d : r.checks.details)
				MESSAGE(e.name << ": " << d);
			CHECK(r.checks.ok);
			nonzero += !r.zero();
			checked += r.checks.checked;
		}
	}
	MESSAGE(nonzero << " nonzero cocycles, " << checked << " checks");
	CHECK(nonzero >= 10);
}
