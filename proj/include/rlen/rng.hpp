#pragma once

#include <cstdint>

namespace rlen {

/// Counter-based random stream built on the SplitMix64 output function.
///
/// The i-th draw is a pure function of (key, i), so any prefix, suffix or
/// interleaving of draws is reproducible regardless of thread schedule.
/// Child streams are derived with an independent mixing of (key, index);
/// column j of a simulated matrix always uses child(master, j).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }

  /// 64 uniform bits at counter position i.
  std::uint64_t bits(std::uint64_t i) const;

  /// Uniform double in (0,1) at counter position i.
  double uniform(std::uint64_t i) const;

  /// Standard normal at counter position i (Box-Muller over counters 2i,
  /// 2i+1, cosine branch only, so each draw stays counter-pure).
  double gaussian(std::uint64_t i) const;

  /// Independent child stream for substream index j.
  RandomStream child(std::uint64_t j) const;

 private:
  std::uint64_t key_;
};

/// SplitMix64 finalizer; exposed for tests.
std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace rlen
