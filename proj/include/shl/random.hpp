#pragma once

// Seeded random polynomials for property checks.

#include "shl/poly.hpp"

#include <random>

namespace shl {

inline Q random_coeff(std::mt19937& rng, int lo = -3, int hi = 3)
{
	std::uniform_int_distribution<int> d(lo, hi);
	int x = 0;
	while (x == 0)
		x = d(rng);
	return Q(x);
}

// monomials in generators [lo, hi) of weight <= maxw and the given degree
inline std::vector<Mono> monomials_of_degree(const Alphabet& a, int lo, int hi, int maxw, int degree)
{
	std::vector<Mono> out;
	Mono cur;
	auto rec = [&](auto&& self, int start, int deg) -> void {
		if (deg == degree)
			out.push_back(cur);
		if (static_cast<int>(cur.size()) == maxw)
			return;
		for (int i = start; i < hi; ++i) {
			if (!cur.empty() && cur.back() == i && odd(a.deg[i]))
				continue;
			cur.push_back(i);
			self(self, i, deg + a.deg[i]);
			cur.pop_back();
		}
	};
	rec(rec, lo, 0);
	return out;
}

// random homogeneous polynomial with up to `terms` terms; may be empty
inline Poly<Q> random_poly(std::mt19937& rng, const std::vector<Mono>& pool, int terms)
{
	Poly<Q> p;
	if (pool.empty())
		return p;
	std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
	for (int t = 0; t < terms; ++t)
		add_term(p, pool[pick(rng)], random_coeff(rng));
	return p;
}

} // namespace shl
