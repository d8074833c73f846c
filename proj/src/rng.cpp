#include "rlen/rng.hpp"

#include <cmath>

namespace rlen {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kChildSalt = 0xA0761D6478BD642FULL;
}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t RandomStream::bits(std::uint64_t i) const {
  return splitmix64_mix(key_ + (i + 1) * kGamma);
}

double RandomStream::uniform(std::uint64_t i) const {
  // 53 mantissa bits, offset by half an ulp so 0 is never produced.
  return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::gaussian(std::uint64_t i) const {
  const double u1 = uniform(2 * i);
  const double u2 = uniform(2 * i + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

RandomStream RandomStream::child(std::uint64_t j) const {
  return RandomStream(splitmix64_mix((key_ ^ kChildSalt) + (j + 1) * kGamma));
}

}  // namespace rlen
