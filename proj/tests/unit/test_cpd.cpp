#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "rlen/cpd.hpp"
#include "rlen/errors.hpp"
#include "rlen/rng.hpp"

using namespace rlen;

namespace {

// Exhaustive O(n^2) segmentation DP, no pruning, same tie-breaking rule.
// The cost arithmetic matches the implementation bit for bit (centered
// prefix sums) so that exact cost ties resolve identically; the search
// itself is the independent part.
std::vector<std::size_t> dp_oracle(const std::vector<double>& v, double penalty,
                                   std::size_t min_seg) {
  const std::size_t n = v.size();
  double gmean = 0.0;
  for (double x : v) gmean += x;
  gmean /= static_cast<double>(n);
  std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = v[i] - gmean;
    s1[i + 1] = s1[i] + c;
    s2[i + 1] = s2[i] + c * c;
  }
  auto sse = [&](std::size_t a, std::size_t b) {
    const double s = s1[b] - s1[a];
    const double q = s2[b] - s2[a];
    return q - s * s / static_cast<double>(b - a);
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> F(n + 1, inf);
  std::vector<std::size_t> ncp(n + 1, 0), prev(n + 1, 0);
  F[0] = -penalty;
  for (std::size_t t = min_seg; t <= n; ++t) {
    for (std::size_t s = 0; s + min_seg <= t; ++s) {
      if (s != 0 && (s < min_seg || F[s] == inf)) continue;
      const double c = F[s] + sse(s, t) + penalty;
      if (c < F[t] || (c == F[t] && ncp[s] + 1 < ncp[t])) {
        F[t] = c;
        ncp[t] = ncp[s] + 1;
        prev[t] = s;
      }
    }
  }
  std::vector<std::size_t> breaks;
  for (std::size_t t = n; t > 0; t = prev[t]) {
    if (prev[t] > 0) breaks.push_back(prev[t] + 1);
  }
  std::sort(breaks.begin(), breaks.end());
  return breaks;
}

}  // namespace

TEST_CASE("single mean shift is found at the first new index") {
  const std::vector<double> v{0, 0, 0, 1, 1, 1};
  const auto r = pelt_detect(v, 0.1, 1);
  REQUIRE(r.changepoints.size() == 1);
  CHECK(r.changepoints[0] == 4);
  REQUIRE(r.segment_means.size() == 2);
  CHECK(r.segment_means[0] == doctest::Approx(0.0));
  CHECK(r.segment_means[1] == doctest::Approx(1.0));
}

TEST_CASE("constant sequence yields no change-points") {
  const std::vector<double> v(12, 3.5);
  CHECK(pelt_detect(v, 0.5, 2).changepoints.empty());
}

TEST_CASE("exact-K segmentation") {
  const std::vector<double> v{0, 0, 1, 1, 2, 2};
  const auto r = dp_detect_k(v, 2, 1);
  REQUIRE(r.changepoints.size() == 2);
  CHECK(r.changepoints[0] == 3);
  CHECK(r.changepoints[1] == 5);

  const auto r0 = dp_detect_k(v, 0, 1);
  CHECK(r0.changepoints.empty());
  CHECK(r0.segment_means.size() == 1);

  CHECK_THROWS_AS(dp_detect_k(v, 5, 2), ArgumentError);
}

TEST_CASE("PELT agrees with dp_detect_k on an unambiguous instance") {
  const std::vector<double> v{0.1, 0.05, 0.12, 0.9, 1.02, 0.95, 0.2, 0.05, 0.1};
  const auto p = pelt_detect(v, 0.05, 2);
  const auto d = dp_detect_k(v, p.changepoints.size(), 2);
  CHECK(p.changepoints == d.changepoints);
}

TEST_CASE("PELT equals the exhaustive DP oracle on random short sequences") {
  RandomStream rng(777);
  for (std::uint64_t trial = 0; trial < 120; ++trial) {
    const std::size_t n = 4 + rng.bits(3 * trial) % 11;  // 4..14
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      // quantized values provoke exact cost ties
      v[i] = std::floor(rng.uniform(3 * trial + 1000 + i) * 4.0) / 4.0;
    }
    const double pen = 0.05 + rng.uniform(3 * trial + 1) * 0.8;
    const std::size_t min_seg = 1 + rng.bits(3 * trial + 2) % 2;
    if (n < 2 * min_seg) continue;
    const auto got = pelt_detect(v, pen, min_seg).changepoints;
    const auto want = dp_oracle(v, pen, min_seg);
    CHECK(got == want);
  }
}

TEST_CASE("translation leaves change-points unchanged") {
  RandomStream rng(31);
  std::vector<double> v(40), w(40);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = rng.gaussian(i) + (i >= 20 ? 2.0 : 0.0);
    w[i] = v[i] + 1000.0;
  }
  const double pen = default_penalty(v);
  CHECK(pelt_detect(v, pen, 2).changepoints == pelt_detect(w, pen, 2).changepoints);
}

TEST_CASE("argument errors") {
  const std::vector<double> v{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(pelt_detect(v, 1.0, 2), ArgumentError);
  CHECK_THROWS_AS(pelt_detect(v, -1.0, 1), ArgumentError);
  CHECK_THROWS_AS(pelt_detect(v, 1.0, 0), ArgumentError);
}

TEST_CASE("Welch t-test") {
  SUBCASE("identical groups") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const auto r = welch_t_test(a, a);
    CHECK(r.t == 0.0);
    CHECK(r.p == 1.0);
  }
  SUBCASE("identical constant groups") {
    const std::vector<double> a{2.0, 2.0, 2.0};
    const auto r = welch_t_test(a, a);
    CHECK(r.t == 0.0);
    CHECK(r.p == 1.0);
  }
  SUBCASE("frozen scipy reference values") {
    const std::vector<double> a{0.51, 0.48, 0.55, 0.60, 0.47, 0.52, 0.49, 0.53};
    const std::vector<double> b{0.71, 0.68, 0.75, 0.80, 0.67, 0.66, 0.74};
    const auto r = welch_t_test(a, b);
    CHECK(r.t == doctest::Approx(-8.1159272576956).epsilon(1e-10));
    CHECK(r.df == doctest::Approx(11.7879389473071).epsilon(1e-10));
    CHECK(r.p == doctest::Approx(3.64471691808704e-06).epsilon(1e-8));

    const std::vector<double> a2{1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> b2{1.5, 2.5, 3.5};
    const auto r2 = welch_t_test(a2, b2);
    CHECK(r2.t == doctest::Approx(0.547722557505166).epsilon(1e-10));
    CHECK(r2.df == doctest::Approx(5.88235294117647).epsilon(1e-10));
    CHECK(r2.p == doctest::Approx(0.604026691386082).epsilon(1e-10));
  }
  SUBCASE("large shift is overwhelmingly significant") {
    RandomStream rng(8);
    std::vector<double> a(30), b(30);
    double sd = 0.0;
    for (std::size_t i = 0; i < 30; ++i) a[i] = rng.gaussian(i);
    double mean = 0.0;
    for (double x : a) mean += x;
    mean /= 30;
    for (double x : a) sd += (x - mean) * (x - mean);
    sd = std::sqrt(sd / 29);
    for (std::size_t i = 0; i < 30; ++i) b[i] = a[i] + 10.0 * sd;
    CHECK(welch_t_test(a, b).p < 1e-6);
  }
  SUBCASE("swapping groups negates t and keeps p") {
    const std::vector<double> a{1.0, 2.5, 2.0, 3.5};
    const std::vector<double> b{4.0, 3.8, 5.1, 4.4};
    const auto r1 = welch_t_test(a, b);
    const auto r2 = welch_t_test(b, a);
    CHECK(r1.t == doctest::Approx(-r2.t).epsilon(1e-15));
    CHECK(r1.p == doctest::Approx(r2.p).epsilon(1e-15));
  }
  SUBCASE("group too small") {
    const std::vector<double> a{1.0};
    const std::vector<double> b{1.0, 2.0};
    CHECK_THROWS_AS(welch_t_test(a, b), ArgumentError);
  }
}

TEST_CASE("two-sided Student t tail against frozen references") {
  CHECK(student_t_two_sided_p(2.0, 10.0) == doctest::Approx(0.0733880347707404).epsilon(1e-12));
  CHECK(student_t_two_sided_p(3.5, 7.3) == doctest::Approx(0.00934313852848555).epsilon(1e-12));
  CHECK(student_t_two_sided_p(0.5, 100.0) == doctest::Approx(0.618173565830887).epsilon(1e-12));
  CHECK(student_t_two_sided_p(6.0, 2.5) == doctest::Approx(0.0152817298855229).epsilon(1e-12));
}
