#include "rlen/theory.hpp"

#include <cmath>

#include "rlen/errors.hpp"

namespace rlen {

TheoryConstants theory_constants(const KernelSpec& spec, std::size_t m, double h,
                                 std::size_t n) {
  if (n <= m + 2) throw ArgumentError("theory_constants: need n > m+2");
  if (!(h > 0.0) || h > 0.5) throw ArgumentError("theory_constants: need h in (0, 0.5]");

  TheoryConstants tc{};
  tc.kappa = spec.kappa();
  tc.tau = spec.tau();
  tc.tau1 = spec.tau1();
  tc.tau2 = spec.tau2();

  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);

  tc.d0 = std::pow(tc.kappa, md + 1.0) * std::pow(h, -(md + 1.0)) / (nd - 1.0);
  tc.c1 = (2.0 * nd - md - 1.0) * md / ((nd - md - 1.0) * (nd - md));
  tc.c2 = (2.0 * nd - md) * (md - 1.0) / ((nd - md) * (nd - md + 1.0));
  tc.d1 = (nd - 2.0) / (nd - 1.0) *
          (tc.c1 * (std::pow(tc.tau, md + 1.0) - 1.0) - tc.c2 * (std::pow(tc.tau, md) - 1.0));

  tc.beta = 2.0 * nd * (nd - md) * (nd - md + 1.0) / (nd * nd * (nd - 1.0) * (nd - 1.0));
  tc.beta1 = tc.beta * (nd - 2.0) * (nd - 2.0) / ((nd - 1.0) * (nd - 1.0));
  tc.beta2 = tc.beta * (nd - 2.0) / (nd - 1.0);
  tc.sigma_star2 = 2.0 * tc.beta * std::pow(tc.kappa, md) +
                   tc.beta1 * std::pow(tc.tau1, md) + 2.0 * tc.beta2 * std::pow(tc.tau2, md);
  return tc;
}

}  // namespace rlen
