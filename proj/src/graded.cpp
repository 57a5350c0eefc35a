#include "shl/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace shl {

std::vector<int> GradedSpace::degrees() const
{
	std::vector<int> d;
	d.reserve(basis.size());
	for (const auto& b : basis)
		d.push_back(b.degree);
	return d;
}

int GradedSpace::index_of(const std::string& n) const
{
	for (size_t i = 0; i < basis.size(); ++i)
		if (basis[i].name == n)
			return static_cast<int>(i);
	return -1;
}

GradedSpace shift(const GradedSpace& v, int k)
{
	GradedSpace r = v;
	r.name = v.name + "[" + std::to_string(k) + "]";
	for (auto& b : r.basis)
		b.degree -= k;
	return r;
}

GradedSpace dual(const GradedSpace& v)
{
	GradedSpace r;
	r.name = v.name + "^";
	for (const auto& b : v.basis)
		r.basis.push_back({b.name + "^", -b.degree});
	return r;
}

bool is_permutation(const Permutation& p)
{
	std::vector<char> seen(p.size(), 0);
	for (int x : p) {
		if (x < 0 || x >= static_cast<int>(p.size()) || seen[x])
			return false;
		seen[x] = 1;
	}
	return true;
}

int koszul_sign(const Permutation& sigma, const std::vector<int>& degrees)
{
	if (sigma.size() != degrees.size() || !is_permutation(sigma))
		throw std::invalid_argument("koszul_sign: size mismatch or not a permutation");
	int parity = 0;
	for (size_t i = 0; i < sigma.size(); ++i)
		for (size_t j = i + 1; j < sigma.size(); ++j)
			if (sigma[i] > sigma[j] && odd(degrees[sigma[i]]) && odd(degrees[sigma[j]]))
				parity ^= 1;
	return parity ? -1 : 1;
}

namespace {
void unshuffle_rec(const std::vector<int>& sizes, size_t block, std::vector<int>& remaining,
	Permutation& cur, std::vector<Permutation>& out)
{
	if (block == sizes.size()) {
		out.push_back(cur);
		return;
	}
	int k = sizes[block];
	int n = static_cast<int>(remaining.size());
	if (k > n)
		return;
	std::vector<int> pick(k);
	// enumerate k-subsets of remaining in lexicographic order
	std::vector<int> idx(k);
	for (int i = 0; i < k; ++i)
		idx[i] = i;
	while (true) {
		std::vector<int> rest;
		std::vector<char> used(n, 0);
		for (int i = 0; i < k; ++i) {
			cur.push_back(remaining[idx[i]]);
			used[idx[i]] = 1;
		}
		for (int i = 0; i < n; ++i)
			if (!used[i])
				rest.push_back(remaining[i]);
		unshuffle_rec(sizes, block + 1, rest, cur, out);
		cur.resize(cur.size() - k);
		int i = k - 1;
		while (i >= 0 && idx[i] == n - k + i)
			--i;
		if (i < 0)
			break;
		++idx[i];
		for (int j = i + 1; j < k; ++j)
			idx[j] = idx[j - 1] + 1;
	}
}
} // namespace

std::vector<Permutation> unshuffles(const std::vector<int>& block_sizes)
{
	int n = 0;
	for (int s : block_sizes) {
		if (s < 0)
			throw std::invalid_argument("unshuffles: negative block");
		n += s;
	}
	std::vector<int> remaining(n);
	for (int i = 0; i < n; ++i)
		remaining[i] = i;
	std::vector<Permutation> out;
	Permutation cur;
	unshuffle_rec(block_sizes, 0, remaining, cur, out);
	return out;
}

std::optional<NormalMonomial> normalize_monomial(const std::vector<int>& degrees, std::vector<int> seq)
{
	int parity = 0;
	// insertion sort keeps the inversion count visible
	for (size_t i = 1; i < seq.size(); ++i) {
		size_t j = i;
		while (j > 0 && seq[j - 1] > seq[j]) {
			if (odd(degrees[seq[j - 1]]) && odd(degrees[seq[j]]))
				parity ^= 1;
			std::swap(seq[j - 1], seq[j]);
			--j;
		}
	}
	for (size_t i = 1; i < seq.size(); ++i)
		if (seq[i] == seq[i - 1] && odd(degrees[seq[i]]))
			return std::nullopt;
	return NormalMonomial{std::move(seq), parity ? -1 : 1};
}

} // namespace shl
