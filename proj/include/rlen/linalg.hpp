#pragma once

#include <cstddef>
#include <vector>

namespace rlen {

/// Solve the dense p x p system A x = b by Gaussian elimination with
/// partial pivoting. A is row-major. Throws DegeneracyError when singular.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, std::size_t p);

/// Log-determinant of a symmetric positive-definite matrix (row-major,
/// dimension p) via LDL^T, accumulated in log space. Throws DegeneracyError
/// when a pivot is not strictly positive.
double logdet_spd(std::vector<double> a, std::size_t p);

/// True when the AR polynomial 1 - phi_1 z - ... - phi_p z^p has all roots
/// outside the unit circle. Uses the reverse Levinson recursion: the process
/// is stationary exactly when every implied partial autocorrelation lies in
/// (-1, 1).
bool ar_is_stationary(const std::vector<double>& phi);

}  // namespace rlen
