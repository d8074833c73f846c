#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rlen/kernels.hpp"
#include "rlen/series_matrix.hpp"

namespace rlen {

struct EntropyEstimate {
  double value = 0.0;       // E_hat, nats
  std::size_t m = 0;        // lag order used
  double h = 0.0;           // bandwidth used
  std::size_t s_count = 0;  // |S(m)|, indices with all three densities > 0
  std::size_t n = 0;        // effective sample count N - m
};

/// Relative-entropy estimator: n^-1 sum over S(m) of
/// log[f_hat / (g_hat g1_hat)] with shared bandwidth h and leave-one-out
/// product-kernel densities. Throws DegeneracyError when S(m) is empty.
EntropyEstimate rlen_estimate(std::span<const double> series, std::size_t m, double h,
                              const KernelSpec& spec = KernelSpec::epanechnikov());

/// 20 log-spaced bandwidths in [0.2, 4] * n^{-1/(4+m)}, capped below 0.5.
std::vector<double> default_entropy_grid(std::size_t n, std::size_t m);

/// Grid element maximizing the estimator; ties resolve to the smallest h.
/// Grid points where estimation degenerates are skipped; all degenerate is
/// an error.
EntropyEstimate select_bandwidth(std::span<const double> series, std::size_t m,
                                 std::span<const double> grid,
                                 const KernelSpec& spec = KernelSpec::epanechnikov());

struct EntropyProfile {
  std::vector<EntropyEstimate> series;  // one per column
  std::vector<double> values() const;
};

/// Per-column bandwidth selection and entropy estimate; columns are
/// independent and the result does not depend on the parallel schedule.
EntropyProfile entropy_profile(const SeriesMatrix& matrix, std::size_t m,
                               std::span<const double> grid,
                               const KernelSpec& spec = KernelSpec::epanechnikov(),
                               unsigned threads = 0);

}  // namespace rlen
