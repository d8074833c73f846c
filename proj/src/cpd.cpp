#include "rlen/cpd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rlen/errors.hpp"

namespace rlen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

// Prefix sums over mean-centered values; centering only improves the
// conditioning of the segment SSE, the argmin is unchanged.
struct SegmentCost {
  std::vector<double> s1, s2;

  explicit SegmentCost(std::span<const double> v) {
    const std::size_t n = v.size();
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    s1.assign(n + 1, 0.0);
    s2.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double c = v[i] - mean;
      s1[i + 1] = s1[i] + c;
      s2[i + 1] = s2[i] + c * c;
    }
  }

  // SSE of values[a..b-1] around their mean (0-based, half-open).
  double operator()(std::size_t a, std::size_t b) const {
    const double s = s1[b] - s1[a];
    const double q = s2[b] - s2[a];
    return q - s * s / static_cast<double>(b - a);
  }
};

// Lexicographic state for deterministic tie-breaking: cost first, then the
// number of changepoints.
struct DpState {
  double cost = kInf;
  std::size_t ncp = 0;
};

bool better(double cost, std::size_t ncp, const DpState& cur) {
  if (cost < cur.cost) return true;
  if (cost == cur.cost && ncp < cur.ncp) return true;
  return false;
}

ChangePointResult assemble(std::span<const double> values,
                           const std::vector<std::size_t>& breaks, double penalty,
                           double cost) {
  ChangePointResult r;
  r.penalty = penalty;
  r.cost = cost;
  r.changepoints = breaks;
  std::vector<std::size_t> bounds;
  bounds.push_back(0);
  for (std::size_t b : breaks) bounds.push_back(b - 1);  // to 0-based start
  bounds.push_back(values.size());
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    double mean = 0.0;
    for (std::size_t i = bounds[k]; i < bounds[k + 1]; ++i) mean += values[i];
    r.segment_means.push_back(mean / static_cast<double>(bounds[k + 1] - bounds[k]));
  }
  return r;
}

}  // namespace

ChangePointResult pelt_detect(std::span<const double> values, double penalty,
                              std::size_t min_seg) {
  const std::size_t n = values.size();
  if (min_seg < 1) throw ArgumentError("pelt_detect: min_seg must be >= 1");
  if (n < 2 * min_seg) throw ArgumentError("pelt_detect: sequence too short");
  if (!(penalty >= 0.0)) throw ArgumentError("pelt_detect: penalty must be >= 0");

  const SegmentCost cost(values);
  std::vector<DpState> F(n + 1);
  std::vector<std::size_t> prev(n + 1, 0);
  F[0] = {-penalty, 0};

  // Candidate last-changepoint positions with deferred removal: when the
  // prune inequality first holds at time t, candidate s is dominated only
  // for times >= t + min_seg (the dominating path needs a full segment), so
  // it stays usable until then. Strict inequality keeps exact cost ties
  // alive for the deterministic tie-break.
  struct Candidate {
    std::size_t s;
    std::size_t drop_at;
  };
  std::vector<Candidate> cands{{0, kNever}};

  for (std::size_t t = min_seg; t <= n; ++t) {
    DpState best;
    std::size_t arg = 0;
    for (const Candidate& c : cands) {
      if (t - c.s < min_seg || t >= c.drop_at) continue;
      const double total = F[c.s].cost + cost(c.s, t) + penalty;
      if (better(total, F[c.s].ncp + 1, best)) {
        best = {total, F[c.s].ncp + 1};
        arg = c.s;
      }
    }
    F[t] = best;
    prev[t] = arg;
    std::vector<Candidate> kept;
    kept.reserve(cands.size() + 1);
    for (Candidate& c : cands) {
      if (t >= c.drop_at) continue;
      if (t - c.s >= min_seg && c.drop_at == kNever &&
          F[c.s].cost + cost(c.s, t) > F[t].cost) {
        c.drop_at = t + min_seg;
      }
      kept.push_back(c);
    }
    if (t + min_seg <= n) kept.push_back({t, kNever});
    cands = std::move(kept);
  }

  std::vector<std::size_t> breaks;
  for (std::size_t t = n; t > 0; t = prev[t]) {
    if (prev[t] > 0) breaks.push_back(prev[t] + 1);  // first index of the new segment
  }
  std::sort(breaks.begin(), breaks.end());
  return assemble(values, breaks, penalty, F[n].cost);
}

ChangePointResult dp_detect_k(std::span<const double> values, std::size_t K,
                              std::size_t min_seg) {
  const std::size_t n = values.size();
  if (min_seg < 1) throw ArgumentError("dp_detect_k: min_seg must be >= 1");
  if ((K + 1) * min_seg > n) throw ArgumentError("dp_detect_k: infeasible K for this length");

  const SegmentCost cost(values);
  const std::size_t segs = K + 1;
  // D[k][t]: best cost of splitting values[0..t) into k+1 segments.
  std::vector<std::vector<double>> D(segs, std::vector<double>(n + 1, kInf));
  std::vector<std::vector<std::size_t>> arg(segs, std::vector<std::size_t>(n + 1, 0));
  for (std::size_t t = min_seg; t <= n; ++t) D[0][t] = cost(0, t);
  for (std::size_t k = 1; k < segs; ++k) {
    for (std::size_t t = (k + 1) * min_seg; t <= n; ++t) {
      for (std::size_t s = k * min_seg; s + min_seg <= t; ++s) {
        if (D[k - 1][s] == kInf) continue;
        const double c = D[k - 1][s] + cost(s, t);
        if (c < D[k][t]) {
          D[k][t] = c;
          arg[k][t] = s;
        }
      }
    }
  }

  std::vector<std::size_t> breaks;
  std::size_t t = n;
  for (std::size_t k = segs - 1; k > 0; --k) {
    const std::size_t s = arg[k][t];
    breaks.push_back(s + 1);
    t = s;
  }
  std::sort(breaks.begin(), breaks.end());
  return assemble(values, breaks, 0.0, D[segs - 1][n]);
}

double default_penalty(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3) throw ArgumentError("default_penalty: need at least 3 values");
  std::vector<double> d(n - 1);
  double mean = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i] = values[i + 1] - values[i];
    mean += d[i];
  }
  mean /= static_cast<double>(d.size());
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double sigma2_res = ss / static_cast<double>(d.size() - 1) / 2.0;
  return 2.0 * sigma2_res * std::log(static_cast<double>(n));
}

namespace {

// Continued-fraction evaluation of the regularized incomplete beta function.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double betai(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * betacf(a, b, x) / a;
  }
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double sample_variance(std::span<const double> x, double mean) {
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size() - 1);
}

}  // namespace

double student_t_two_sided_p(double t, double df) {
  if (!std::isfinite(t)) return 0.0;
  return betai(0.5 * df, 0.5, df / (df + t * t));
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw ArgumentError("welch_t_test: groups need >= 2 values");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double ma = 0.0, mb = 0.0;
  for (double v : a) ma += v;
  for (double v : b) mb += v;
  ma /= na;
  mb /= nb;
  const double va = sample_variance(a, ma), vb = sample_variance(b, mb);
  const double diff = ma - mb;
  const double se2 = va / na + vb / nb;

  TTestResult r;
  if (diff == 0.0) return r;  // t = 0, p = 1 even for zero-variance groups
  if (!(se2 > 0.0)) {
    r.t = diff > 0 ? kInf : -kInf;
    r.df = na + nb - 2.0;
    r.p = 0.0;
    return r;
  }
  r.t = diff / std::sqrt(se2);
  r.df = se2 * se2 /
         (va * va / (na * na * (na - 1.0)) + vb * vb / (nb * nb * (nb - 1.0)));
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

}  // namespace rlen
