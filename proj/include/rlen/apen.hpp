#pragma once

#include <cstddef>
#include <span>

namespace rlen {

enum class ApEnRadius {
  kAbsolute,    // r used as given
  kStdMultiple  // r scaled by the sample standard deviation of the series
};

struct ApEnConfig {
  std::size_t m = 2;
  double r = 0.2;
  ApEnRadius r_mode = ApEnRadius::kStdMultiple;
};

/// Approximate entropy Phi^m(r) - Phi^{m+1}(r) with Chebyshev distance and
/// self-matches included. Requires N > m+1 and a positive resolved radius.
double apen(std::span<const double> series, const ApEnConfig& config);

}  // namespace rlen
