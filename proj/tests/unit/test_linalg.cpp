#include <doctest.h>

#include <cmath>
#include <vector>

#include "rlen/errors.hpp"
#include "rlen/linalg.hpp"

using namespace rlen;

TEST_CASE("dense solve recovers known solutions") {
  // [[2,1],[1,3]] x = [3,5] -> x = [4/5, 7/5]
  auto x = solve_dense({2, 1, 1, 3}, {3, 5}, 2);
  CHECK(x[0] == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(1.4).epsilon(1e-14));
  CHECK_THROWS_AS(solve_dense({1, 2, 2, 4}, {1, 2}, 2), DegeneracyError);
}

TEST_CASE("logdet of SPD matrices") {
  // diag(2,3): log 6
  CHECK(logdet_spd({2, 0, 0, 3}, 2) == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  // [[4,2],[2,3]] det = 8
  CHECK(logdet_spd({4, 2, 2, 3}, 2) == doctest::Approx(std::log(8.0)).epsilon(1e-14));
  CHECK_THROWS_AS(logdet_spd({1, 2, 2, 1}, 2), DegeneracyError);  // indefinite
}

TEST_CASE("AR stationarity matches the AR(2) triangle") {
  CHECK(ar_is_stationary({0.5}));
  CHECK_FALSE(ar_is_stationary({1.0}));
  CHECK_FALSE(ar_is_stationary({-1.01}));
  CHECK(ar_is_stationary({0.5, 0.2}));
  CHECK(ar_is_stationary({0.8, -0.3}));
  CHECK(ar_is_stationary({-1.5, -0.6}));       // inside the triangle
  CHECK_FALSE(ar_is_stationary({0.9, 0.2}));   // phi1 + phi2 >= 1
  CHECK_FALSE(ar_is_stationary({-1.7, 0.8}));  // phi2 - phi1 >= 1
  CHECK_FALSE(ar_is_stationary({0.0, 1.0}));
  CHECK(ar_is_stationary({0.8, -0.3, 0.1}));
  CHECK(ar_is_stationary({}));  // degenerate white noise
  // trailing zeros are ignored
  CHECK(ar_is_stationary({0.5, 0.0, 0.0}));
}
