#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rlen/density.hpp"
#include "rlen/kernels.hpp"
#include "rlen/series_matrix.hpp"

namespace rlen {

/// Leave-one-out Nadaraya-Watson variants. The printed form keeps the self
/// term in the numerator while the normalizer excludes it; the symmetric
/// form drops it from both.
enum class NwLoo { kPrinted, kSymmetric };

/// Leave-one-out NW prediction of target i. Product-kernel weights between
/// the data vectors and query vector i, boundary branches taken at the
/// query as in the density estimators. Throws DegeneracyError when the
/// normalizer is not positive (isolated point).
double nw_loo_predict(const Embedding& emb, double h_star, std::size_t i,
                      const KernelSpec& spec = KernelSpec::epanechnikov(),
                      NwLoo variant = NwLoo::kPrinted);

/// Effective degrees of freedom tr(L), the diagonal mass of the NW smoother,
/// computed without materializing L.
double effective_dof(const Embedding& emb, double h_star,
                     const KernelSpec& spec = KernelSpec::epanechnikov());

struct CvResult {
  double h_star = 0.0;
  double sigma2 = 0.0;  // mean squared LOO prediction error at h_star
  std::vector<std::string> warnings;
};

/// 15 log-spaced bandwidths in [0.5, 4] * n^{-1/(4+m)}, capped below 0.5.
std::vector<double> default_regression_grid(std::size_t n, std::size_t m);

/// Grid minimizer of the LOO squared prediction error; ties resolve to the
/// smallest h. Bandwidths where up to 10% of predictions fail get those
/// terms imputed with the global target mean (with a warning); beyond that
/// the bandwidth is disqualified.
CvResult loocv_bandwidth(const Embedding& emb, std::span<const double> grid,
                         const KernelSpec& spec = KernelSpec::epanechnikov(),
                         NwLoo variant = NwLoo::kPrinted);

struct BicScore {
  double bic = 0.0;
  double fit_term = 0.0;      // n log(sigma2_hat)
  double penalty_term = 0.0;  // v log(n)
  double h_star = 0.0;
  double sigma2 = 0.0;
  double v = 0.0;
  std::vector<std::string> warnings;
};

/// B(m) = n log(sigma2_hat(m)) + v(m, h*) log(n); throws DegeneracyError on
/// a zero-residual fit.
BicScore bic_score(std::span<const double> series, std::size_t m,
                   std::span<const double> grid,
                   const KernelSpec& spec = KernelSpec::epanechnikov(),
                   NwLoo variant = NwLoo::kPrinted);

struct LagSelectionReport {
  std::size_t M = 0;
  std::size_t m_hat = 0;                          // 1-based selected lag
  std::vector<double> bic_bar;                    // mean B(m) over columns, m = 1..M
  std::vector<std::vector<BicScore>> per_series;  // [column][m-1]
};

/// Cross-series BIC averaging: per-column B_j(m) for m = 1..M with the
/// default regression grid, compensated-sum averages, argmin over m (ties to
/// the smallest m). A column failing for some m fails the run with (j, m)
/// coordinates attached.
LagSelectionReport select_lag(const SeriesMatrix& matrix, std::size_t M,
                              const KernelSpec& spec = KernelSpec::epanechnikov(),
                              NwLoo variant = NwLoo::kPrinted, unsigned threads = 0);

}  // namespace rlen
