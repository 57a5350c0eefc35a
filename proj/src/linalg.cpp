#include "shl/linalg.hpp"

namespace shl {

MatQ zero_mat(Eigen::Index rows, Eigen::Index cols)
{
	MatQ m(rows, cols);
	m.setConstant(Rational(0));
	return m;
}

VecQ zero_vec(Eigen::Index n)
{
	VecQ v(n);
	v.setConstant(Rational(0));
	return v;
}

namespace {
mpz_class height(const Rational& r)
{
	mpz_class h = r.raw().get_num() * r.raw().get_den();
	return abs(h);
}
} // namespace

Echelon rref(MatQ m)
{
	Echelon e;
	const Eigen::Index rows = m.rows(), cols = m.cols();
	Eigen::Index row = 0;
	for (Eigen::Index c = 0; c < cols && row < rows; ++c) {
		Eigen::Index best = -1;
		mpz_class bh;
		for (Eigen::Index r = row; r < rows; ++r) {
			if (m(r, c).is_zero())
				continue;
			mpz_class h = height(m(r, c));
			if (best < 0 || h < bh) {
				best = r;
				bh = h;
			}
		}
		if (best < 0)
			continue;
		if (best != row)
			m.row(best).swap(m.row(row));
		Rational inv = m(row, c).inverse();
		for (Eigen::Index j = c; j < cols; ++j)
			if (!m(row, j).is_zero())
				m(row, j) *= inv;
		for (Eigen::Index r = 0; r < rows; ++r) {
			if (r == row || m(r, c).is_zero())
				continue;
			Rational f = m(r, c);
			for (Eigen::Index j = c; j < cols; ++j)
				if (!m(row, j).is_zero())
					m(r, j) -= f * m(row, j);
		}
		e.pivots.push_back(static_cast<int>(c));
		++row;
	}
	e.r = std::move(m);
	return e;
}

MatQ kernel_basis(const Echelon& e, Eigen::Index ncols)
{
	std::vector<char> is_pivot(ncols, 0);
	for (int p : e.pivots)
		is_pivot[p] = 1;
	std::vector<Eigen::Index> free;
	for (Eigen::Index c = 0; c < ncols; ++c)
		if (!is_pivot[c])
			free.push_back(c);
	MatQ k = zero_mat(ncols, static_cast<Eigen::Index>(free.size()));
	for (size_t f = 0; f < free.size(); ++f) {
		k(free[f], f) = Rational(1);
		for (size_t i = 0; i < e.pivots.size(); ++i)
			k(e.pivots[i], f) = -e.r(i, free[f]);
	}
	return k;
}

int rank(const MatQ& m)
{
	if (m.rows() == 0 || m.cols() == 0)
		return 0;
	return rref(m).rank();
}

std::optional<VecQ> solve(const MatQ& a, const VecQ& b)
{
	const Eigen::Index n = a.cols();
	MatQ aug(a.rows(), n + 1);
	aug.leftCols(n) = a;
	aug.col(n) = b;
	Echelon e = rref(aug);
	VecQ x = zero_vec(n);
	for (size_t i = 0; i < e.pivots.size(); ++i) {
		if (e.pivots[i] == n)
			return std::nullopt;
		x(e.pivots[i]) = e.r(i, n);
	}
	return x;
}

bool is_zero(const MatQ& m)
{
	for (Eigen::Index i = 0; i < m.rows(); ++i)
		for (Eigen::Index j = 0; j < m.cols(); ++j)
			if (!m(i, j).is_zero())
				return false;
	return true;
}

} // namespace shl
