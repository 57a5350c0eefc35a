#include "shl/poly.hpp"

namespace shl {

int mono_degree(const Alphabet& a, const Mono& m)
{
	int d = 0;
	for (int g : m)
		d += a.deg[g];
	return d;
}

int mono_count_in(const Mono& m, int lo, int hi)
{
	int n = 0;
	for (int g : m)
		if (g >= lo && g < hi)
			++n;
	return n;
}

int mono_mul(const Alphabet& a, const Mono& x, const Mono& y, Mono& out)
{
	out.clear();
	out.reserve(x.size() + y.size());
	int parity = 0;
	// odd elements of x still waiting when an odd element of y overtakes them
	int odd_left = 0;
	for (int g : x)
		if (odd(a.deg[g]))
			++odd_left;
	size_t i = 0, j = 0;
	while (i < x.size() || j < y.size()) {
		if (j == y.size() || (i < x.size() && x[i] <= y[j])) {
			if (j < y.size() && x[i] == y[j] && odd(a.deg[x[i]]))
				return 0;
			if (odd(a.deg[x[i]]))
				--odd_left;
			out.push_back(x[i++]);
		} else {
			if (odd(a.deg[y[j]]))
				parity += odd_left;
			out.push_back(y[j++]);
		}
	}
	return (parity & 1) ? -1 : 1;
}

std::string mono_str(const Alphabet& a, const Mono& m)
{
	std::string s;
	size_t i = 0;
	while (i < m.size()) {
		size_t j = i;
		while (j < m.size() && m[j] == m[i])
			++j;
		if (!s.empty())
			s += "*";
		s += a.name[m[i]];
		if (j - i > 1)
			s += "^" + std::to_string(j - i);
		i = j;
	}
	return s;
}

} // namespace shl
