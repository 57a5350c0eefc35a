#pragma once

// Exact linear algebra over Q on Eigen dense storage.

#include "shl/scalar.hpp"

#include <Eigen/Core>
#include <optional>
#include <vector>

namespace shl {

using MatQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

MatQ zero_mat(Eigen::Index rows, Eigen::Index cols);
VecQ zero_vec(Eigen::Index n);

struct Echelon {
	MatQ r; // reduced row echelon form
	std::vector<int> pivots; // pivot column of each nonzero row
	int rank() const { return static_cast<int>(pivots.size()); }
};

// Gauss-Jordan. Within a column the pivot row minimizes |num*den|; ties go to the lower row index.
Echelon rref(MatQ m);
// columns span the kernel; one column per free variable, free variable set to 1
MatQ kernel_basis(const Echelon& e, Eigen::Index ncols);
int rank(const MatQ& m);
// some x with a x = b, free variables zero; nullopt when inconsistent
std::optional<VecQ> solve(const MatQ& a, const VecQ& b);

bool is_zero(const MatQ& m);

} // namespace shl
