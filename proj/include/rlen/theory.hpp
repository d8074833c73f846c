#pragma once

#include <cstddef>

#include "rlen/kernels.hpp"

namespace rlen {

/// Centering and scale constants of the limiting normal law of the
/// relative-entropy estimator:
///   sqrt(n) h^{(m+1)/2} (2 E_hat + d0 + d1) -> N(0, sigma_star2).
struct TheoryConstants {
  double kappa, tau, tau1, tau2;  // kernel integrals
  double d0;                      // kappa^{m+1} h^{-(m+1)} / (n-1)
  double d1;                      // (n-2)/(n-1) [c1 (tau^{m+1}-1) - c2 (tau^m-1)]
  double c1, c2;                  // finite-sample coefficients
  double beta, beta1, beta2;      // variance weights
  double sigma_star2;             // 2 beta kappa^m + beta1 tau1^m + 2 beta2 tau2^m
};

/// Requires n > m+2 and h in (0, 0.5).
TheoryConstants theory_constants(const KernelSpec& spec, std::size_t m, double h,
                                 std::size_t n);

}  // namespace rlen
