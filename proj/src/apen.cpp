#include "rlen/apen.hpp"

#include <cmath>
#include <vector>

#include "rlen/errors.hpp"

namespace rlen {

namespace {

double phi(std::span<const double> x, std::size_t m, double r) {
  const std::size_t nt = x.size() - m + 1;  // template count
  double acc = 0.0;
  for (std::size_t i = 0; i < nt; ++i) {
    std::size_t matches = 0;
    for (std::size_t j = 0; j < nt; ++j) {
      bool ok = true;
      for (std::size_t c = 0; c < m; ++c) {
        if (std::abs(x[i + c] - x[j + c]) > r) {
          ok = false;
          break;
        }
      }
      matches += ok;
    }
    acc += std::log(static_cast<double>(matches) / static_cast<double>(nt));
  }
  return acc / static_cast<double>(nt);
}

}  // namespace

double apen(std::span<const double> series, const ApEnConfig& config) {
  const std::size_t N = series.size();
  const std::size_t m = config.m;
  if (m < 1) throw ArgumentError("apen: m must be >= 1");
  if (N <= m + 1) throw ArgumentError("apen: series too short, need N > m+1");

  double r = config.r;
  if (config.r_mode == ApEnRadius::kStdMultiple) {
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(N);
    double ss = 0.0;
    for (double v : series) ss += (v - mean) * (v - mean);
    r *= std::sqrt(ss / static_cast<double>(N - 1));
  }
  if (!(r > 0.0)) throw ArgumentError("apen: resolved tolerance radius must be positive");

  return phi(series, m, r) - phi(series, m + 1, r);
}

}  // namespace rlen
