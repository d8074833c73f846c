#include "rlen/entropy.hpp"

#include <cmath>
#include <string>

#include "rlen/errors.hpp"
#include "rlen/parallel.hpp"

namespace rlen {

namespace {

void check_series(std::span<const double> series, std::size_t m) {
  if (m < 1 || m + 2 > series.size()) {
    throw ArgumentError("rlen_estimate: require 1 <= m <= N-2");
  }
  for (double v : series) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DataError("rlen_estimate: series values must lie in [0,1]");
    }
  }
}

}  // namespace

EntropyEstimate rlen_estimate(std::span<const double> series, std::size_t m, double h,
                              const KernelSpec& spec) {
  check_series(series, m);
  const std::size_t N = series.size();
  const std::size_t n = N - m;
  const std::size_t w = m + 1;

  // Kernel rows K_h^J(x_a, .) are shared across queries: query i uses rows
  // i..i+m, so a sliding window of m+1 rows computes each of the N rows once.
  std::vector<std::vector<double>> rows(w, std::vector<double>(N));
  auto fill_row = [&](std::size_t a) {
    JackknifeQuery q(spec, series[a], h);
    auto& r = rows[a % w];
    for (std::size_t b = 0; b < N; ++b) r[b] = q(series[b]);
  };
  for (std::size_t a = 0; a < w; ++a) fill_row(a);

  double total = 0.0;
  std::size_t s_count = 0;
  const double inv = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) fill_row(i + m);
    const double* rlast = rows[(i + m) % w].data();
    double f = 0.0, g = 0.0, g1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      g1 += rlast[j + m];
      double prod = rows[i % w][j];
      for (std::size_t c = 1; c < m && prod != 0.0; ++c) {
        prod *= rows[(i + c) % w][j + c];
      }
      if (prod == 0.0) continue;
      g += prod;
      f += prod * rlast[j + m];
    }
    f *= inv;
    g *= inv;
    g1 *= inv;
    if (f > 0.0 && g > 0.0 && g1 > 0.0) {
      total += std::log(f / (g * g1));
      ++s_count;
    }
  }
  if (s_count == 0) {
    throw DegeneracyError("rlen_estimate: S(m) is empty (n=" + std::to_string(n) +
                          ", h=" + std::to_string(h) + ")");
  }
  return {total / static_cast<double>(n), m, h, s_count, n};
}

std::vector<double> default_entropy_grid(std::size_t n, std::size_t m) {
  return bandwidth_grid(n, m, 0.2, 4.0, 20);
}

EntropyEstimate select_bandwidth(std::span<const double> series, std::size_t m,
                                 std::span<const double> grid, const KernelSpec& spec) {
  if (grid.empty()) throw ArgumentError("select_bandwidth: empty bandwidth grid");
  for (double h : grid) {
    if (!(h > 0.0) || h >= 0.5) {
      throw ArgumentError("select_bandwidth: grid bandwidths must lie in (0, 0.5)");
    }
  }
  bool have = false;
  EntropyEstimate best;
  for (double h : grid) {
    EntropyEstimate e;
    try {
      e = rlen_estimate(series, m, h, spec);
    } catch (const DegeneracyError&) {
      continue;
    }
    if (!have || e.value > best.value) {
      best = e;
      have = true;
    }
  }
  if (!have) {
    throw DegeneracyError("select_bandwidth: estimation degenerate on the whole grid");
  }
  return best;
}

std::vector<double> EntropyProfile::values() const {
  std::vector<double> v;
  v.reserve(series.size());
  for (const auto& e : series) v.push_back(e.value);
  return v;
}

EntropyProfile entropy_profile(const SeriesMatrix& matrix, std::size_t m,
                               std::span<const double> grid, const KernelSpec& spec,
                               unsigned threads) {
  EntropyProfile profile;
  profile.series.resize(matrix.cols);
  parallel_for(matrix.cols, threads, [&](std::size_t j) {
    try {
      profile.series[j] = select_bandwidth(matrix.col(j), m, grid, spec);
    } catch (const DegeneracyError& e) {
      throw DegeneracyError("column " + std::to_string(j + 1) + ": " + e.what());
    }
  });
  return profile;
}

}  // namespace rlen
