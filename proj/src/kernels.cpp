#include "rlen/kernels.hpp"

#include <cmath>
#include <mutex>

#include "rlen/errors.hpp"
#include "rlen/quadrature.hpp"

namespace rlen {

namespace {

double epanechnikov_fn(double u) {
  return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
}

}  // namespace

struct KernelSpec::Constants {
  std::once_flag once;
  double kappa = 0, tau = 0, tau1 = 0, tau2 = 0;
};

KernelSpec::KernelSpec(std::string name, KernelFn k)
    : name_(std::move(name)), k_(k), constants_(std::make_shared<Constants>()) {}

const KernelSpec& KernelSpec::epanechnikov() {
  static const KernelSpec spec("epanechnikov", &epanechnikov_fn);
  return spec;
}

namespace {

// C(v) = int K(u) K(u+|v|) du over the overlap [-1, 1-|v|]; even in v,
// smooth in v on [0,2] for any kernel under the support assumption.
double kernel_correlation(KernelSpec::KernelFn k, double v) {
  v = std::abs(v);
  if (v >= 2.0) return 0.0;
  return integrate_gl64([k, v](double u) { return k(u) * k(u + v); }, -1.0, 1.0 - v);
}

}  // namespace

void KernelSpec::ensure_constants() const {
  std::call_once(constants_->once, [this] {
    Constants& c = *constants_;
    const KernelFn k = k_;
    c.kappa = integrate_simpson([k](double u) { return k(u) * k(u); }, -1.0, 1.0, 1e-12);
    c.tau = 2.0 * integrate_gl64([k](double v) { return kernel_correlation(k, v); }, 0.0, 1.0);
    c.tau1 = 2.0 * integrate_gl64(
                       [k](double v) {
                         const double cv = kernel_correlation(k, v);
                         return cv * cv;
                       },
                       0.0, 1.0);
    c.tau2 = 2.0 * integrate_gl64(
                       [k](double v) { return k(v) * kernel_correlation(k, v); }, 0.0, 1.0);
  });
}

double KernelSpec::kappa() const {
  ensure_constants();
  return constants_->kappa;
}
double KernelSpec::tau() const {
  ensure_constants();
  return constants_->tau;
}
double KernelSpec::tau1() const {
  ensure_constants();
  return constants_->tau1;
}
double KernelSpec::tau2() const {
  ensure_constants();
  return constants_->tau2;
}

double base_kernel_eval(const KernelSpec& spec, double u) { return spec(u); }

double kernel_moment(const KernelSpec& spec, int l, double rho) {
  if (l < 0 || l > 2) throw ArgumentError("kernel_moment: l must be in {0,1,2}");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ArgumentError("kernel_moment: rho must be in [0,1]");
  auto k = spec.fn();
  switch (l) {
    case 0:
      return integrate_simpson([k](double u) { return k(u); }, -1.0, rho);
    case 1:
      return integrate_simpson([k](double u) { return u * k(u); }, -1.0, rho);
    default:
      return integrate_simpson([k](double u) { return u * u * k(u); }, -1.0, rho);
  }
}

BoundaryCoeff boundary_coeff(const KernelSpec& spec, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw ArgumentError("boundary_coeff: rho must be in [0,1]");
  const double alpha = 2.0 - rho;
  if (rho == 1.0) return {rho, alpha, 0.0};
  const double r1 = kernel_moment(spec, 1, rho) / kernel_moment(spec, 0, rho);
  const double r1a =
      kernel_moment(spec, 1, rho / alpha) / kernel_moment(spec, 0, rho / alpha);
  const double den = alpha * r1a - r1;
  if (std::abs(den) < 1e-12) {
    throw DegeneracyError("boundary_coeff: degenerate mixing denominator at rho=" +
                          std::to_string(rho));
  }
  return {rho, alpha, r1 / den};
}

JackknifeQuery::JackknifeQuery(const KernelSpec& spec, double x, double h)
    : k_(spec.fn()), x_(x), inv_h_(1.0 / h) {
  if (!(h > 0.0) || h >= 0.5) {
    throw ArgumentError("jackknife kernel requires 0 < h < 0.5");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ArgumentError("jackknife kernel query point must lie in [0,1]");
  }
  interior_ = (x >= h && x <= 1.0 - h);
  if (interior_) return;
  left_ = x < h;
  const double rho = left_ ? x / h : (1.0 - x) / h;
  // Just inside the branch cut the two self-normalized components coincide
  // and the mixing weight cancels out of k_rho; use the interior limit
  // rather than the 0/0 coefficient formula. The switch point matches the
  // 1e-12 degeneracy guard of boundary_coeff.
  if (rho > 1.0 - 1e-6) {
    interior_ = true;
    return;
  }
  const BoundaryCoeff bc = boundary_coeff(spec, rho);
  rho_ = rho;
  alpha_ = bc.alpha;
  inv_alpha_ = 1.0 / bc.alpha;
  const double w0 = kernel_moment(spec, 0, rho);
  const double w0a = kernel_moment(spec, 0, rho / bc.alpha);
  c1_ = (1.0 + bc.beta) / w0;
  c2_ = bc.beta * inv_alpha_ / w0a;
}

double jackknife_eval(const KernelSpec& spec, double x, double y, double h) {
  return JackknifeQuery(spec, x, h)(y);
}

double product_kernel_eval(const KernelSpec& spec, std::span<const double> x,
                           std::span<const double> y, double h) {
  if (x.size() != y.size() || x.empty()) {
    throw ArgumentError("product_kernel_eval: dimension mismatch");
  }
  double prod = 1.0;
  for (std::size_t c = 0; c < x.size(); ++c) {
    prod *= jackknife_eval(spec, x[c], y[c], h);
    if (prod == 0.0) return 0.0;
  }
  return prod;
}

std::vector<double> bandwidth_grid(std::size_t n, std::size_t m, double lo_factor,
                                   double hi_factor, int points) {
  if (points < 1 || n < 2 || !(lo_factor > 0.0) || !(hi_factor >= lo_factor)) {
    throw ArgumentError("bandwidth_grid: invalid parameters");
  }
  const double g = std::pow(static_cast<double>(n), -1.0 / (4.0 + static_cast<double>(m)));
  const double hi = std::min(hi_factor * g, 0.499);
  const double lo = std::min(lo_factor * g, hi);
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = hi;
    return grid;
  }
  for (int i = 0; i < points; ++i) {
    grid[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1.0));
  }
  return grid;
}

}  // namespace rlen
