#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rlen/kernels.hpp"

namespace rlen {

/// Time-delay embedding of a scalar series: n = N - m vectors
/// (x_i, ..., x_{i+m-1}) with targets x_{i+m}.
struct Embedding {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> vectors;  // row-major n x m
  std::vector<double> targets;  // n

  std::span<const double> vec(std::size_t i) const {
    return {vectors.data() + i * m, m};
  }
};

/// Build the embedding; requires 1 <= m <= N-2 and series values in [0,1].
Embedding embed(std::span<const double> series, std::size_t m);

/// Leave-one-out kernel density at point i (0-based) of a row-major n x d
/// point set: (n-1)^-1 sum_{j != i} of the d-dim product jackknife kernel.
/// May be negative near the boundary.
double loo_density(const KernelSpec& spec, const std::vector<double>& points, std::size_t d,
                   std::size_t i, double h);

enum class DensityPath {
  kMatrix,     // materializes the n x n product-kernel matrix, then row sums
  kStreaming,  // accumulates row sums directly
};

/// All n leave-one-out densities; both paths cost O(n^2 d) kernel
/// evaluations and must agree to within accumulation noise.
std::vector<double> loo_density_all(const KernelSpec& spec, const std::vector<double>& points,
                                    std::size_t d, double h,
                                    DensityPath path = DensityPath::kStreaming);

}  // namespace rlen
