#include "rlen/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "rlen/errors.hpp"

namespace rlen {

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, std::size_t p) {
  for (std::size_t k = 0; k < p; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < p; ++r) {
      if (std::abs(a[r * p + k]) > std::abs(a[piv * p + k])) piv = r;
    }
    if (std::abs(a[piv * p + k]) < 1e-14) {
      throw DegeneracyError("solve_dense: singular system");
    }
    if (piv != k) {
      for (std::size_t c = 0; c < p; ++c) std::swap(a[k * p + c], a[piv * p + c]);
      std::swap(b[k], b[piv]);
    }
    const double inv = 1.0 / a[k * p + k];
    for (std::size_t r = k + 1; r < p; ++r) {
      const double f = a[r * p + k] * inv;
      if (f == 0.0) continue;
      for (std::size_t c = k; c < p; ++c) a[r * p + c] -= f * a[k * p + c];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(p);
  for (std::size_t ri = p; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t c = ri + 1; c < p; ++c) s -= a[ri * p + c] * x[c];
    x[ri] = s / a[ri * p + ri];
  }
  return x;
}

double logdet_spd(std::vector<double> a, std::size_t p) {
  double logdet = 0.0;
  std::vector<double> d(p);
  for (std::size_t j = 0; j < p; ++j) {
    double dj = a[j * p + j];
    for (std::size_t k = 0; k < j; ++k) {
      const double l = a[j * p + k];
      dj -= l * l * d[k];
    }
    if (!(dj > 0.0)) {
      throw DegeneracyError("logdet_spd: matrix is not positive definite");
    }
    d[j] = dj;
    logdet += std::log(dj);
    for (std::size_t i = j + 1; i < p; ++i) {
      double lij = a[i * p + j];
      for (std::size_t k = 0; k < j; ++k) {
        lij -= a[i * p + k] * a[j * p + k] * d[k];
      }
      a[i * p + j] = lij / dj;
    }
  }
  return logdet;
}

bool ar_is_stationary(const std::vector<double>& phi) {
  std::vector<double> c(phi);
  std::size_t p = c.size();
  while (p > 0 && c[p - 1] == 0.0) --p;
  c.resize(p);
  for (std::size_t k = p; k > 0; --k) {
    const double kap = c[k - 1];
    if (!(std::abs(kap) < 1.0) || !std::isfinite(kap)) return false;
    const double den = 1.0 - kap * kap;
    std::vector<double> next(k - 1);
    for (std::size_t j = 0; j < k - 1; ++j) {
      next[j] = (c[j] + kap * c[k - 2 - j]) / den;
    }
    c = std::move(next);
  }
  return true;
}

}  // namespace rlen
