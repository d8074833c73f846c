#include <doctest.h>

#include <cmath>
#include <vector>

#include "rlen/density.hpp"
#include "rlen/entropy.hpp"
#include "rlen/errors.hpp"
#include "rlen/rng.hpp"

using namespace rlen;

namespace {

std::vector<double> uniform_series(std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = rng.uniform(i);
  return s;
}

// Straightforward composition of the three leave-one-out densities over the
// embedded point sets; the reference the sliding-row implementation must
// match.
double rlen_reference(const std::vector<double>& series, std::size_t m, double h) {
  const std::size_t N = series.size();
  const std::size_t n = N - m;
  std::vector<double> pts_f(n * (m + 1)), pts_g(n * m), pts_g1(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c <= m; ++c) pts_f[i * (m + 1) + c] = series[i + c];
    for (std::size_t c = 0; c < m; ++c) pts_g[i * m + c] = series[i + c];
    pts_g1[i] = series[i + m];
  }
  const auto& spec = KernelSpec::epanechnikov();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = loo_density(spec, pts_f, m + 1, i, h);
    const double g = loo_density(spec, pts_g, m, i, h);
    const double g1 = loo_density(spec, pts_g1, 1, i, h);
    if (f > 0 && g > 0 && g1 > 0) total += std::log(f / (g * g1));
  }
  return total / static_cast<double>(n);
}

}  // namespace

TEST_CASE("estimator matches the density-module composition") {
  const auto s = uniform_series(60, 31);
  for (std::size_t m : {1u, 2u, 3u}) {
    for (double h : {0.12, 0.2, 0.35}) {
      const auto est = rlen_estimate(s, m, h);
      CHECK(est.value == doctest::Approx(rlen_reference(s, m, h)).epsilon(1e-12));
      CHECK(est.n == s.size() - m);
      CHECK(est.s_count <= est.n);
      CHECK(est.s_count >= 1);
      CHECK(std::isfinite(est.value));
    }
  }
}

TEST_CASE("estimator is bitwise repeatable") {
  const auto s = uniform_series(120, 8);
  const auto a = rlen_estimate(s, 2, 0.2);
  const auto b = rlen_estimate(s, 2, 0.2);
  CHECK(a.value == b.value);
  CHECK(a.s_count == b.s_count);
}

TEST_CASE("degenerate S(m) raises with diagnostics") {
  // Pairwise distances all exceed the kernel support at a tiny bandwidth.
  const std::vector<double> s{0.05, 0.3, 0.6, 0.9, 0.45, 0.75};
  CHECK_THROWS_AS(rlen_estimate(s, 1, 0.01), DegeneracyError);
  try {
    rlen_estimate(s, 1, 0.01);
  } catch (const DegeneracyError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("n=") != std::string::npos);
    CHECK(msg.find("h=") != std::string::npos);
  }
}

TEST_CASE("estimator argument errors") {
  const auto s = uniform_series(30, 3);
  CHECK_THROWS_AS(rlen_estimate(s, 0, 0.2), ArgumentError);
  CHECK_THROWS_AS(rlen_estimate(s, 29, 0.2), ArgumentError);
  CHECK_THROWS_AS(rlen_estimate(s, 1, 0.0), ArgumentError);
  CHECK_THROWS_AS(rlen_estimate(s, 1, 0.5), ArgumentError);
}

TEST_CASE("bandwidth selection") {
  const auto s = uniform_series(80, 77);
  SUBCASE("singleton grid returns that bandwidth") {
    const std::vector<double> grid{0.17};
    const auto est = select_bandwidth(s, 1, grid);
    CHECK(est.h == 0.17);
    CHECK(est.value == doctest::Approx(rlen_estimate(s, 1, 0.17).value).epsilon(1e-15));
  }
  SUBCASE("selection equals an exhaustive re-scan") {
    const auto grid = default_entropy_grid(s.size() - 1, 1);
    const auto est = select_bandwidth(s, 1, grid);
    double best = -1e300, best_h = 0.0;
    for (double h : grid) {
      const double v = rlen_estimate(s, 1, h).value;
      if (v > best) {
        best = v;
        best_h = h;
      }
    }
    CHECK(est.h == best_h);
    CHECK(est.value == best);
  }
  SUBCASE("ties resolve to the smallest bandwidth") {
    // A grid with a repeated bandwidth has an exact tie.
    const std::vector<double> grid{0.2, 0.2, 0.3};
    const auto est = select_bandwidth(s, 1, grid);
    const double v02 = rlen_estimate(s, 1, 0.2).value;
    const double v03 = rlen_estimate(s, 1, 0.3).value;
    if (v02 >= v03) CHECK(est.h == 0.2);
  }
  SUBCASE("argument errors") {
    CHECK_THROWS_AS(select_bandwidth(s, 1, std::vector<double>{}), ArgumentError);
    CHECK_THROWS_AS(select_bandwidth(s, 1, std::vector<double>{0.5}), ArgumentError);
  }
}

TEST_CASE("entropy profile over columns") {
  const auto c0 = uniform_series(70, 41);
  SeriesMatrix m = SeriesMatrix::zeros(70, 3);
  for (std::size_t i = 0; i < 70; ++i) {
    m.at(i, 0) = c0[i];
    m.at(i, 1) = c0[i];  // duplicated column
    m.at(i, 2) = 0.2 + 0.6 * c0[69 - i];
  }
  const auto grid = default_entropy_grid(69, 1);
  const auto profile = entropy_profile(m, 1, grid);
  REQUIRE(profile.series.size() == 3);
  CHECK(profile.series[0].value == profile.series[1].value);
  CHECK(profile.series[0].h == profile.series[1].h);

  const auto single = select_bandwidth(c0, 1, grid);
  CHECK(profile.series[0].value == single.value);
  CHECK(profile.series[0].h == single.h);

  SUBCASE("parallel schedules produce identical profiles") {
    const auto p1 = entropy_profile(m, 1, grid, KernelSpec::epanechnikov(), 1);
    const auto p4 = entropy_profile(m, 1, grid, KernelSpec::epanechnikov(), 4);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(p1.series[j].value == p4.series[j].value);
      CHECK(p1.series[j].h == p4.series[j].h);
    }
  }
}

TEST_CASE("default entropy grid stays inside the domain") {
  for (std::size_t n : {50u, 400u, 4000u}) {
    for (std::size_t m : {1u, 2u, 4u}) {
      const auto grid = default_entropy_grid(n, m);
      CHECK(grid.size() == 20);
      CHECK(grid.front() > 0.0);
      CHECK(grid.back() < 0.5);
    }
  }
}
