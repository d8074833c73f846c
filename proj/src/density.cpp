#include "rlen/density.hpp"

#include "rlen/errors.hpp"

namespace rlen {

Embedding embed(std::span<const double> series, std::size_t m) {
  const std::size_t N = series.size();
  if (m < 1 || m + 2 > N) {
    throw ArgumentError("embed: require 1 <= m <= N-2");
  }
  for (double v : series) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DataError("embed: series values must lie in [0,1]");
    }
  }
  Embedding e;
  e.m = m;
  e.n = N - m;
  e.vectors.resize(e.n * m);
  e.targets.resize(e.n);
  for (std::size_t i = 0; i < e.n; ++i) {
    for (std::size_t c = 0; c < m; ++c) e.vectors[i * m + c] = series[i + c];
    e.targets[i] = series[i + m];
  }
  return e;
}

namespace {

std::size_t checked_count(const std::vector<double>& points, std::size_t d) {
  if (d == 0 || points.size() % d != 0) {
    throw ArgumentError("point set size is not a multiple of the dimension");
  }
  return points.size() / d;
}

}  // namespace

double loo_density(const KernelSpec& spec, const std::vector<double>& points, std::size_t d,
                   std::size_t i, double h) {
  const std::size_t n = checked_count(points, d);
  if (n < 2) throw ArgumentError("loo_density: need at least two points");
  if (i >= n) throw ArgumentError("loo_density: index out of range");

  std::vector<JackknifeQuery> q;
  q.reserve(d);
  for (std::size_t c = 0; c < d; ++c) q.emplace_back(spec, points[i * d + c], h);

  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    double prod = 1.0;
    for (std::size_t c = 0; c < d; ++c) {
      prod *= q[c](points[j * d + c]);
      if (prod == 0.0) break;
    }
    acc += prod;
  }
  return acc / static_cast<double>(n - 1);
}

std::vector<double> loo_density_all(const KernelSpec& spec, const std::vector<double>& points,
                                    std::size_t d, double h, DensityPath path) {
  const std::size_t n = checked_count(points, d);
  if (n < 2) throw ArgumentError("loo_density_all: need at least two points");

  std::vector<double> out(n, 0.0);
  if (path == DensityPath::kStreaming) {
    for (std::size_t i = 0; i < n; ++i) out[i] = loo_density(spec, points, d, i, h);
    return out;
  }

  std::vector<double> w(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      JackknifeQuery q(spec, points[i * d + c], h);
      for (std::size_t j = 0; j < n; ++j) w[i * n + j] *= q(points[j * d + c]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) acc += w[i * n + j];
    }
    out[i] = acc / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace rlen
