#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rlen {

struct ChangePointResult {
  std::vector<std::size_t> changepoints;  // 1-based first index of each new segment
  std::vector<double> segment_means;      // one per segment
  double penalty = 0.0;                   // penalty used (0 for fixed-K search)
  double cost = 0.0;                      // total penalized cost
};

/// Exact minimizer of sum of segment squared errors around segment means
/// plus penalty per changepoint, with PELT pruning. Ties break toward fewer
/// changepoints, then toward earlier indices. Requires length >= 2 min_seg.
ChangePointResult pelt_detect(std::span<const double> values, double penalty,
                              std::size_t min_seg = 2);

/// Optimal segmentation with exactly K changepoints by dynamic programming.
ChangePointResult dp_detect_k(std::span<const double> values, std::size_t K,
                              std::size_t min_seg = 2);

/// Mean-shift penalty heuristic 2 sigma2_res log(n), where sigma2_res is the
/// variance of first differences divided by 2.
double default_penalty(std::span<const double> values);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

/// Welch statistic with Satterthwaite degrees of freedom; two-sided p-value
/// via the regularized incomplete beta function. Requires |a|,|b| >= 2.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// Two-sided Student-t tail probability, exposed for direct checks.
double student_t_two_sided_p(double t, double df);

}  // namespace rlen
