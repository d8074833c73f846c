#pragma once

#include <functional>

namespace rlen {

/// Adaptive Simpson integration of f over [a,b] with absolute tolerance.
double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                         double abs_tol = 1e-10, int max_depth = 48);

/// 64-node Gauss-Legendre rule on [a,b]. Exact for polynomials up to
/// degree 127, which covers every piecewise-polynomial kernel integrand
/// used here once the pieces are split at their breakpoints.
double integrate_gl64(const std::function<double(double)>& f, double a, double b);

}  // namespace rlen
