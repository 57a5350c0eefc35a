#include "shl/complex.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace shl {

TruncatedComplex::TruncatedComplex(const Module<Q>& m, int max_weight) : m_(m), N_(max_weight)
{
	for (const auto& [g, p] : m_.qa.img)
		if (g < m_.nA && p.count(Mono{}))
			throw NonzeroCurvature("lambda_0 != 0 on " + m_.alpha.name[g] + ": the weight truncation is not a quotient complex");
	Mono cur;
	std::function<void(int)> rec = [&](int start) {
		amonos_.push_back(cur);
		if (static_cast<int>(cur.size()) == N_)
			return;
		for (int i = start; i < m_.nA; ++i) {
			if (!cur.empty() && cur.back() == i && odd(m_.alpha.deg[i]))
				continue;
			cur.push_back(i);
			rec(i);
			cur.pop_back();
		}
	};
	rec(0);
}

void TruncatedComplex::build(int n) const
{
	if (basis_.count(n))
		return;
	auto& b = basis_[n];
	auto& ix = index_[n];
	for (int j = 0; j < m_.dim(); ++j) {
		int need = n - m_.space.degree(j);
		for (const Mono& w : amonos_)
			if (mono_degree(m_.alpha, w) == need) {
				Mono x = w;
				x.push_back(m_.gen(j));
				b.push_back(std::move(x));
			}
	}
	std::sort(b.begin(), b.end());
	for (size_t i = 0; i < b.size(); ++i)
		ix[b[i]] = static_cast<int>(i);
}

const std::vector<Mono>& TruncatedComplex::basis(int n) const
{
	build(n);
	return basis_.at(n);
}

VecQ TruncatedComplex::to_vec(int n, const Poly<Q>& c) const
{
	build(n);
	VecQ v = zero_vec(static_cast<Eigen::Index>(basis_[n].size()));
	for (const auto& [m, x] : c) {
		if (weight(m, m_.nA) > N_)
			continue;
		auto it = index_[n].find(m);
		if (it == index_[n].end())
			throw std::invalid_argument("cochain term outside degree " + std::to_string(n) + ": " + mono_str(m_.alpha, m));
		v(it->second) += x;
	}
	return v;
}

Poly<Q> TruncatedComplex::from_vec(int n, const VecQ& v) const
{
	const auto& b = basis(n);
	Poly<Q> p;
	for (Eigen::Index i = 0; i < v.size(); ++i)
		add_term(p, b[i], v(i));
	return p;
}

Poly<Q> TruncatedComplex::d(const Poly<Q>& c) const
{
	Poly<Q> r = apply(m_.alpha, m_.nabla(), c);
	return filter<Q>(r, [&](const Mono& m) { return weight(m, m_.nA) <= N_; });
}

MatQ TruncatedComplex::differential(int n) const
{
	auto it = diff_.find(n);
	if (it != diff_.end())
		return it->second;
	const auto& src = basis(n);
	build(n + 1);
	MatQ d = zero_mat(static_cast<Eigen::Index>(basis_[n + 1].size()), static_cast<Eigen::Index>(src.size()));
	Derivation<Q> nb = m_.nabla();
	for (size_t j = 0; j < src.size(); ++j) {
		Poly<Q> img = apply(m_.alpha, nb, Poly<Q>{{src[j], Q(1)}});
		for (const auto& [m, x] : img) {
			if (weight(m, m_.nA) > N_)
				continue;
			d(index_[n + 1].at(m), static_cast<Eigen::Index>(j)) += x;
		}
	}
	diff_[n] = d;
	return d;
}

bool TruncatedComplex::d_squared_zero(int n) const
{
	MatQ a = differential(n), b = differential(n + 1);
	if (a.cols() == 0 || b.rows() == 0)
		return true;
	return is_zero(MatQ(b * a));
}

bool TruncatedComplex::exact_through(int n) const
{
	// every monomial above weight N must have degree > n + 1
	int odd_low = 0, dmin = 0;
	for (int i = 0; i < m_.nA; ++i) {
		int d = m_.alpha.deg[i];
		if (!odd(d) && d < 1)
			return false;
		if (odd(d) && d <= 0) {
			dmin = odd_low == 0 ? d : std::min(dmin, d);
			++odd_low;
		}
	}
	if (m_.dim() == 0)
		return true;
	int mdeg = std::numeric_limits<int>::max();
	for (int j = 0; j < m_.dim(); ++j)
		mdeg = std::min(mdeg, m_.space.degree(j));
	long low = static_cast<long>(N_) + 1 - odd_low + static_cast<long>(odd_low) * dmin + mdeg;
	return low > n + 1;
}

CohomologyResult TruncatedComplex::cohomology(int n) const
{
	CohomologyResult h;
	h.degree = n;
	h.exact = exact_through(n);
	MatQ dn = differential(n), dp = differential(n - 1);
	h.cochains = static_cast<int>(dn.cols());
	Echelon e = rref(dn);
	MatQ ker = kernel_basis(e, dn.cols());
	h.cocycles = static_cast<int>(ker.cols());
	h.boundaries = dp.cols() ? rank(dp) : 0;
	h.dim = h.cocycles - h.boundaries;
	// pivots of [image | kernel] that fall in the kernel block are representatives
	MatQ both(dn.cols(), dp.cols() + ker.cols());
	if (dp.cols())
		both.leftCols(dp.cols()) = dp;
	if (ker.cols())
		both.rightCols(ker.cols()) = ker;
	if (both.cols() > 0 && both.rows() > 0) {
		Echelon c = rref(both);
		for (int p : c.pivots)
			if (p >= dp.cols())
				h.reps.push_back(from_vec(n, ker.col(p - dp.cols())));
	}
	return h;
}

std::optional<Poly<Q>> TruncatedComplex::solve_coboundary(int n, const Poly<Q>& z) const
{
	VecQ zv = to_vec(n, z);
	MatQ dn = differential(n);
	if (dn.rows() && !is_zero(MatQ(dn * zv)))
		throw NotACocycle("cochain is not closed in degree " + std::to_string(n));
	if (zv.size() == 0 || is_zero(MatQ(zv)))
		return Poly<Q>{};
	MatQ dp = differential(n - 1);
	if (dp.cols() == 0)
		return std::nullopt;
	auto y = solve(dp, zv);
	if (!y)
		return std::nullopt;
	return from_vec(n - 1, *y);
}

std::optional<ClassCoords> TruncatedComplex::class_coords(int n, const Poly<Q>& z, const CohomologyResult& h) const
{
	VecQ zv = to_vec(n, z);
	MatQ dp = differential(n - 1);
	const Eigen::Index k = static_cast<Eigen::Index>(h.reps.size());
	MatQ a(zv.size(), dp.cols() + k);
	if (dp.cols())
		a.leftCols(dp.cols()) = dp;
	for (Eigen::Index i = 0; i < k; ++i)
		a.col(dp.cols() + i) = to_vec(n, h.reps[i]);
	ClassCoords out;
	if (a.cols() == 0) {
		if (zv.size() && !is_zero(MatQ(zv)))
			return std::nullopt;
		return out;
	}
	auto x = solve(a, zv);
	if (!x)
		return std::nullopt;
	if (dp.cols())
		out.primitive = from_vec(n - 1, x->head(dp.cols()));
	for (Eigen::Index i = 0; i < k; ++i)
		out.coords.push_back((*x)(dp.cols() + i));
	return out;
}

} // namespace shl
