#include "rlen/lag_select.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "rlen/errors.hpp"
#include "rlen/parallel.hpp"

namespace rlen {

namespace {

// Per-query sums of the NW weight structure at one bandwidth. The boundary
// branch of the kernel follows the estimation point x_i, matching the
// density estimators; weight w(j->i) is the product kernel between data
// vector j and query vector i.
struct WeightSums {
  std::vector<double> numer;  // sum_j w(j->i) y_j over all j
  std::vector<double> denom;  // sum_{s != i} w(s->i)
  std::vector<double> diag;   // w(i->i)
};

WeightSums weight_sums(const Embedding& emb, double h, const KernelSpec& spec) {
  const std::size_t n = emb.n, m = emb.m;
  WeightSums s;
  s.numer.assign(n, 0.0);
  s.denom.assign(n, 0.0);
  s.diag.assign(n, 0.0);
  std::vector<JackknifeQuery> q;
  for (std::size_t i = 0; i < n; ++i) {
    q.clear();
    for (std::size_t c = 0; c < m; ++c) q.emplace_back(spec, emb.vectors[i * m + c], h);
    double numer = 0.0, denom = 0.0, diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double* xj = emb.vectors.data() + j * m;
      double w = q[0](xj[0]);
      for (std::size_t c = 1; c < m && w != 0.0; ++c) w *= q[c](xj[c]);
      if (w == 0.0) continue;
      numer += w * emb.targets[j];
      if (j == i) {
        diag = w;
      } else {
        denom += w;
      }
    }
    s.numer[i] = numer;
    s.denom[i] = denom;
    s.diag[i] = diag;
  }
  return s;
}

// Same sums computed from the raw series with a sliding window of kernel
// rows, as in the entropy estimator: query i uses rows i..i+m-1 at columns
// j..j+m-1, so each of the N rows is evaluated once per bandwidth instead of
// once per pair. Accumulation order per query matches weight_sums exactly.
WeightSums weight_sums_series(std::span<const double> series, std::size_t m, double h,
                              const KernelSpec& spec) {
  const std::size_t N = series.size();
  const std::size_t n = N - m;
  WeightSums s;
  s.numer.assign(n, 0.0);
  s.denom.assign(n, 0.0);
  s.diag.assign(n, 0.0);

  std::vector<std::vector<double>> rows(m, std::vector<double>(N));
  auto fill_row = [&](std::size_t a) {
    JackknifeQuery q(spec, series[a], h);
    auto& r = rows[a % m];
    for (std::size_t b = 0; b < N; ++b) r[b] = q(series[b]);
  };
  for (std::size_t a = 0; a < m; ++a) fill_row(a);

  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) fill_row(i + m - 1);
    double numer = 0.0, denom = 0.0, diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double w = rows[i % m][j];
      for (std::size_t c = 1; c < m && w != 0.0; ++c) w *= rows[(i + c) % m][j + c];
      if (w == 0.0) continue;
      numer += w * series[j + m];
      if (j == i) {
        diag = w;
      } else {
        denom += w;
      }
    }
    s.numer[i] = numer;
    s.denom[i] = denom;
    s.diag[i] = diag;
  }
  return s;
}

double predict_from_sums(const WeightSums& s, const Embedding& emb, std::size_t i,
                         NwLoo variant) {
  if (!(s.denom[i] > 0.0)) {
    throw DegeneracyError("nw_loo_predict: isolated point, empty leave-one-out normalizer");
  }
  const double numer =
      variant == NwLoo::kPrinted ? s.numer[i] : s.numer[i] - s.diag[i] * emb.targets[i];
  return numer / s.denom[i];
}

double dof_from_sums(const WeightSums& s) {
  double v = 0.0;
  for (std::size_t i = 0; i < s.diag.size(); ++i) {
    const double norm = s.denom[i] + s.diag[i];
    if (!(norm > 0.0)) {
      throw DegeneracyError("effective_dof: zero row normalizer (isolated point)");
    }
    v += s.diag[i] / norm;
  }
  return v;
}

}  // namespace

double nw_loo_predict(const Embedding& emb, double h_star, std::size_t i,
                      const KernelSpec& spec, NwLoo variant) {
  if (emb.n < 2) throw ArgumentError("nw_loo_predict: need n >= 2");
  if (i >= emb.n) throw ArgumentError("nw_loo_predict: index out of range");
  const WeightSums s = weight_sums(emb, h_star, spec);
  return predict_from_sums(s, emb, i, variant);
}

double effective_dof(const Embedding& emb, double h_star, const KernelSpec& spec) {
  return dof_from_sums(weight_sums(emb, h_star, spec));
}

std::vector<double> default_regression_grid(std::size_t n, std::size_t m) {
  return bandwidth_grid(n, m, 0.5, 4.0, 15);
}

namespace {

struct GridEval {
  double h = 0.0;
  double cv = 0.0;            // sum of squared LOO prediction errors
  std::size_t failures = 0;   // isolated points imputed with the target mean
  bool qualified = false;     // failures within the 1% threshold
};

GridEval eval_cv_from_sums(const WeightSums& s, std::span<const double> targets, double h,
                           NwLoo variant) {
  const std::size_t n = targets.size();
  double target_mean = 0.0;
  for (double y : targets) target_mean += y;
  target_mean /= static_cast<double>(n);
  const std::size_t max_failures = static_cast<std::size_t>(0.10 * static_cast<double>(n));

  GridEval e;
  e.h = h;
  for (std::size_t i = 0; i < n; ++i) {
    double pred;
    if (s.denom[i] > 0.0) {
      const double numer =
          variant == NwLoo::kPrinted ? s.numer[i] : s.numer[i] - s.diag[i] * targets[i];
      pred = numer / s.denom[i];
    } else {
      ++e.failures;
      if (e.failures > max_failures) break;
      pred = target_mean;
    }
    const double r = targets[i] - pred;
    e.cv += r * r;
  }
  e.qualified = e.failures <= max_failures;
  return e;
}

std::vector<GridEval> evaluate_cv_grid(const Embedding& emb, std::span<const double> grid,
                                       const KernelSpec& spec, NwLoo variant) {
  if (grid.empty()) throw ArgumentError("loocv_bandwidth: empty bandwidth grid");
  std::vector<GridEval> evals;
  evals.reserve(grid.size());
  for (double h : grid) {
    evals.push_back(eval_cv_from_sums(weight_sums(emb, h, spec), emb.targets, h, variant));
  }
  return evals;
}

void append_impute_warning(std::vector<std::string>& warnings, const GridEval& e) {
  if (e.failures > 0) {
    warnings.push_back("loocv_bandwidth: " + std::to_string(e.failures) +
                       " isolated points imputed with the target mean at h=" +
                       std::to_string(e.h) + " (threshold 10%)");
  }
}

}  // namespace

CvResult loocv_bandwidth(const Embedding& emb, std::span<const double> grid,
                         const KernelSpec& spec, NwLoo variant) {
  const auto evals = evaluate_cv_grid(emb, grid, spec, variant);
  CvResult best;
  bool have = false;
  double best_cv = std::numeric_limits<double>::infinity();
  for (const GridEval& e : evals) {
    if (!e.qualified) continue;
    if (e.cv < best_cv) {
      best_cv = e.cv;
      best.h_star = e.h;
      best.sigma2 = e.cv / static_cast<double>(emb.n);
      best.warnings.clear();
      append_impute_warning(best.warnings, e);
      have = true;
    }
  }
  if (!have) {
    throw DegeneracyError("loocv_bandwidth: every grid bandwidth was disqualified");
  }
  return best;
}

BicScore bic_score(std::span<const double> series, std::size_t m,
                   std::span<const double> grid, const KernelSpec& spec, NwLoo variant) {
  if (grid.empty()) throw ArgumentError("bic_score: empty bandwidth grid");
  if (m < 1 || m + 2 > series.size()) throw ArgumentError("bic_score: require 1 <= m <= N-2");
  for (double v : series) {
    if (!(v >= 0.0 && v <= 1.0)) throw DataError("bic_score: series values must lie in [0,1]");
  }
  const std::size_t n = series.size() - m;
  const std::span<const double> targets = series.subspan(m, n);

  std::vector<GridEval> evals;
  std::vector<WeightSums> sums;
  evals.reserve(grid.size());
  sums.reserve(grid.size());
  for (double h : grid) {
    sums.push_back(weight_sums_series(series, m, h, spec));
    evals.push_back(eval_cv_from_sums(sums.back(), targets, h, variant));
  }
  std::vector<std::size_t> order(evals.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (evals[a].cv != evals[b].cv) return evals[a].cv < evals[b].cv;
    return evals[a].h < evals[b].h;
  });

  // Walk the CV ranking: a bandwidth where the smoother trace degenerates is
  // disqualified like an over-threshold one.
  BicScore b;
  for (std::size_t k : order) {
    const GridEval& e = evals[k];
    if (!e.qualified) continue;
    double v;
    try {
      v = dof_from_sums(sums[k]);
    } catch (const DegeneracyError&) {
      b.warnings.push_back("bic_score: isolated smoother row at h=" + std::to_string(e.h) +
                           ", bandwidth disqualified");
      continue;
    }
    const double sigma2 = e.cv / static_cast<double>(n);
    if (!(sigma2 > 0.0)) {
      throw DegeneracyError("bic_score: degenerate fit, sigma2_hat = 0");
    }
    b.h_star = e.h;
    b.sigma2 = sigma2;
    b.v = v;
    append_impute_warning(b.warnings, e);
    const double nd = static_cast<double>(n);
    b.fit_term = nd * std::log(sigma2);
    b.penalty_term = b.v * std::log(nd);
    b.bic = b.fit_term + b.penalty_term;
    return b;
  }
  throw DegeneracyError("bic_score: every grid bandwidth was disqualified");
}

LagSelectionReport select_lag(const SeriesMatrix& matrix, std::size_t M,
                              const KernelSpec& spec, NwLoo variant, unsigned threads) {
  if (matrix.cols == 0 || matrix.rows < 3) throw ArgumentError("select_lag: empty matrix");
  if (M < 1 || M + 2 > matrix.rows) throw ArgumentError("select_lag: require 1 <= M <= N-2");

  LagSelectionReport report;
  report.M = M;
  report.per_series.resize(matrix.cols);
  parallel_for(matrix.cols, threads, [&](std::size_t j) {
    auto& row = report.per_series[j];
    row.resize(M);
    for (std::size_t m = 1; m <= M; ++m) {
      const auto grid = default_regression_grid(matrix.rows - m, m);
      try {
        row[m - 1] = bic_score(matrix.col(j), m, grid, spec, variant);
      } catch (const DegeneracyError& e) {
        throw DegeneracyError("column " + std::to_string(j + 1) + ", m=" + std::to_string(m) +
                              ": " + e.what());
      }
    }
  });

  // Compensated mean over columns so the average is schedule-independent.
  report.bic_bar.assign(M, 0.0);
  for (std::size_t m = 0; m < M; ++m) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t j = 0; j < matrix.cols; ++j) {
      const double y = report.per_series[j][m].bic - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    report.bic_bar[m] = sum / static_cast<double>(matrix.cols);
  }
  report.m_hat = 1;
  for (std::size_t m = 2; m <= M; ++m) {
    if (report.bic_bar[m - 1] < report.bic_bar[report.m_hat - 1]) report.m_hat = m;
  }
  return report;
}

}  // namespace rlen
