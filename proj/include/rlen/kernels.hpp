#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace rlen {

/// Symmetric base kernel on [-1,1] plus lazily computed integral constants.
///
/// kappa = int K^2, tau = int int K(u)K(u+v) du dv,
/// tau1 = int [int K(u)K(u+v) du]^2 dv, tau2 = int int K(u)K(v)K(u+v) du dv.
class KernelSpec {
 public:
  using KernelFn = double (*)(double);

  KernelSpec(std::string name, KernelFn k);

  /// Default kernel K(u) = 0.75 (1 - u^2) on [-1,1].
  static const KernelSpec& epanechnikov();

  const std::string& name() const { return name_; }
  double operator()(double u) const { return k_(u); }
  KernelFn fn() const { return k_; }

  double kappa() const;
  double tau() const;
  double tau1() const;
  double tau2() const;

 private:
  struct Constants;
  void ensure_constants() const;

  std::string name_;
  KernelFn k_;
  std::shared_ptr<Constants> constants_;  // lazy, computed once
};

/// K(u); zero outside [-1,1].
double base_kernel_eval(const KernelSpec& spec, double u);

/// omega_l(rho) = int_{-1}^{rho} u^l K(u) du via adaptive Simpson (tol 1e-10).
double kernel_moment(const KernelSpec& spec, int l, double rho);

struct BoundaryCoeff {
  double rho;
  double alpha;  // 2 - rho
  double beta;
};

/// Jackknife mixing coefficients at relative boundary position rho.
/// beta(rho) = R1(rho) / (alpha R1(rho/alpha) - R1(rho)) with
/// R1 = omega_1/omega_0; beta(1) = 0 by the interior limit.
BoundaryCoeff boundary_coeff(const KernelSpec& spec, double rho);

/// One-query evaluator for the boundary-corrected kernel K_h^J(x, .).
/// Branch data (region, rho, alpha, beta, moment normalizers) is fixed by x
/// and precomputed once, so eval per y is a handful of flops.
class JackknifeQuery {
 public:
  JackknifeQuery(const KernelSpec& spec, double x, double h);

  double operator()(double y) const {
    if (interior_) {
      return inv_h_ * k_((x_ - y) * inv_h_);
    }
    // Signed two-component boundary kernel on u in [-alpha, rho].
    const double u = (left_ ? (x_ - y) : (y - x_)) * inv_h_;
    if (u < -alpha_ || u > rho_) return 0.0;
    return inv_h_ * (c1_ * k_(u) - c2_ * k_(u * inv_alpha_));
  }

  bool interior() const { return interior_; }

 private:
  KernelSpec::KernelFn k_;
  double x_, inv_h_;
  bool interior_, left_ = false;
  double rho_ = 0, alpha_ = 0, inv_alpha_ = 0, c1_ = 0, c2_ = 0;
};

/// K_h^J(x, y): interior branch h^-1 K((x-y)/h) for x in [h, 1-h]; boundary
/// branches use k_rho with rho = x/h (left) or (1-x)/h (right, with the
/// argument mirrored so the kernel mass lies inside [0,1]).
/// Requires 0 < h < 0.5.
double jackknife_eval(const KernelSpec& spec, double x, double y, double h);

/// Product of jackknife_eval over coordinates; x determines the branches.
double product_kernel_eval(const KernelSpec& spec, std::span<const double> x,
                           std::span<const double> y, double h);

/// Log-spaced bandwidths in [lo_factor, hi_factor] * n^{-1/(4+m)}, capped
/// below the jackknife domain limit 0.5.
std::vector<double> bandwidth_grid(std::size_t n, std::size_t m, double lo_factor,
                                   double hi_factor, int points);

}  // namespace rlen
