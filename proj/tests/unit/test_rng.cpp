#include <doctest.h>

#include <cmath>
#include <vector>

#include "rlen/rng.hpp"

using rlen::RandomStream;

TEST_CASE("draws are pure functions of (key, counter)") {
  RandomStream a(42), b(42), c(43);
  for (std::uint64_t i : {0ULL, 1ULL, 17ULL, 1000000ULL}) {
    CHECK(a.bits(i) == b.bits(i));
    CHECK(a.uniform(i) == b.uniform(i));
    CHECK(a.gaussian(i) == b.gaussian(i));
    CHECK(a.bits(i) != c.bits(i));
  }
}

TEST_CASE("uniforms lie strictly inside (0,1)") {
  RandomStream s(7);
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const double u = s.uniform(i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian moments are sane") {
  RandomStream s(123);
  const std::size_t n = 200000;
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = s.gaussian(i);
    mean += g;
    m2 += g * g;
  }
  mean /= n;
  m2 /= n;
  CHECK(std::abs(mean) < 0.01);
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("child streams do not collide with the parent or each other") {
  RandomStream s(99);
  auto c0 = s.child(0), c1 = s.child(1);
  CHECK(c0.key() != c1.key());
  CHECK(c0.key() != s.key());
  // identical child index is reproducible
  CHECK(s.child(1).key() == c1.key());
  // crude independence check on the first few draws
  int equal = 0;
  for (std::uint64_t i = 0; i < 100; ++i) equal += (c0.bits(i) == c1.bits(i));
  CHECK(equal == 0);
}
