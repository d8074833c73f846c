#include <doctest.h>

#include <cmath>

#include "rlen/errors.hpp"
#include "rlen/theory.hpp"

using namespace rlen;

TEST_CASE("theory constants point values") {
  const auto tc = theory_constants(KernelSpec::epanechnikov(), 1, 0.5, 101);
  CHECK(tc.kappa == doctest::Approx(0.6).epsilon(1e-8));
  // d0 = (1/100) * 0.6^2 * 0.5^-2
  CHECK(tc.d0 == doctest::Approx(0.0144).epsilon(1e-10));
  CHECK(tc.tau > 0.0);
  CHECK(tc.tau < 1.0);
  CHECK(tc.d0 > 0.0);
  CHECK(tc.sigma_star2 > 0.0);
}

TEST_CASE("finite-sample coefficients against their rational forms") {
  const std::size_t n = 50, m = 3;
  const auto tc = theory_constants(KernelSpec::epanechnikov(), m, 0.2, n);
  const double nd = n, md = m;
  CHECK(tc.c1 == doctest::Approx((2 * nd - md - 1) * md / ((nd - md - 1) * (nd - md)))
                     .epsilon(1e-14));
  CHECK(tc.c2 ==
        doctest::Approx((2 * nd - md) * (md - 1) / ((nd - md) * (nd - md + 1))).epsilon(1e-14));
  CHECK(tc.beta == doctest::Approx(2 * nd * (nd - md) * (nd - md + 1) /
                                   (nd * nd * (nd - 1) * (nd - 1)))
                       .epsilon(1e-14));
  CHECK(tc.beta1 == doctest::Approx(tc.beta * (nd - 2) * (nd - 2) / ((nd - 1) * (nd - 1)))
                        .epsilon(1e-14));
  CHECK(tc.beta2 == doctest::Approx(tc.beta * (nd - 2) / (nd - 1)).epsilon(1e-14));
  CHECK(tc.sigma_star2 ==
        doctest::Approx(2 * tc.beta * std::pow(tc.kappa, md) +
                        tc.beta1 * std::pow(tc.tau1, md) + 2 * tc.beta2 * std::pow(tc.tau2, md))
            .epsilon(1e-14));
  CHECK(tc.d1 == doctest::Approx((nd - 2) / (nd - 1) *
                                 (tc.c1 * (std::pow(tc.tau, md + 1) - 1) -
                                  tc.c2 * (std::pow(tc.tau, md) - 1)))
                     .epsilon(1e-14));
}

TEST_CASE("m = 1 drops the c2 term") {
  const auto tc = theory_constants(KernelSpec::epanechnikov(), 1, 0.15, 1000);
  CHECK(tc.c2 == 0.0);
  CHECK(tc.d1 == doctest::Approx(998.0 / 999.0 * tc.c1 * (tc.tau * tc.tau - 1.0))
                     .epsilon(1e-14));
}

TEST_CASE("theory constants argument errors") {
  CHECK_THROWS_AS(theory_constants(KernelSpec::epanechnikov(), 5, 0.2, 7), ArgumentError);
  CHECK_THROWS_AS(theory_constants(KernelSpec::epanechnikov(), 1, 0.0, 100), ArgumentError);
  CHECK_THROWS_AS(theory_constants(KernelSpec::epanechnikov(), 1, 0.6, 100), ArgumentError);
}
