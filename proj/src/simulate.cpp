#include "rlen/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rlen/errors.hpp"
#include "rlen/linalg.hpp"

namespace rlen {

ModelSpec ModelSpec::case1(int model, double alpha) {
  if (model != 1 && model != 2) throw ArgumentError("case1: model must be 1 or 2");
  ModelSpec s;
  s.kind = model == 1 ? ModelKind::kCase1Model1 : ModelKind::kCase1Model2;
  s.alpha = alpha;
  s.sigma = model == 1 ? 0.4 : 0.5;
  s.init = {1.0, 1.0};
  s.burnin = 0;
  return s;
}

ModelSpec ModelSpec::case3(int model) {
  if (model != 1 && model != 2) throw ArgumentError("case3: model must be 1 or 2");
  ModelSpec s;
  s.kind = model == 1 ? ModelKind::kCase3Model1 : ModelKind::kCase3Model2;
  s.sigma = 0.2;
  s.init = {0.0};
  s.burnin = 0;
  return s;
}

ModelSpec ModelSpec::ar_model(std::vector<double> phi, double sigma2, std::size_t burnin) {
  ModelSpec s;
  s.kind = ModelKind::kAr;
  s.ar.phi = std::move(phi);
  s.ar.sigma2 = sigma2;
  s.init.assign(s.ar.phi.size(), 0.0);
  s.burnin = burnin;
  return s;
}

ModelSpec ModelSpec::sarima_process(int which) {
  ModelSpec s;
  s.kind = ModelKind::kSarima;
  SarimaSpec& p = s.sarima;
  p.d = 2;
  p.ds = 1;
  p.sigma2 = 2e-7;
  switch (which) {
    case 1:
      p.s = 75;
      p.c = 2.9993e-6;
      p.ar = {1.9414, -0.693};
      p.ma = {1.82984, 0.9931};
      p.seasonal_ar = {{75, 0.02037}};
      break;
    case 2:
      p.s = 67;
      p.c = 2.1477e-6;
      p.ar = {1.9631, -0.9851};
      p.ma = {1.9619, 0.9910};
      p.seasonal_ar = {{67, -0.2818}};
      break;
    case 3:
      p.s = 81;
      p.c = 3.9159e-7;
      p.ar = {1.9768, -0.98801};
      p.ma = {0.3421};
      p.seasonal_ar = {{81, 0.1474}};
      break;
    default:
      throw ArgumentError("sarima_process: which must be 1, 2 or 3");
  }
  return s;
}

namespace {

std::vector<double> gen_nonlinear(const ModelSpec& spec, std::size_t total,
                                  const RandomStream& rng) {
  const std::size_t p = spec.init.size();
  std::vector<double> z(total);
  for (std::size_t t = 0; t < std::min(p, total); ++t) z[t] = spec.init[t];
  for (std::size_t t = p; t < total; ++t) {
    const double eps = spec.sigma == 0.0 ? 0.0 : spec.sigma * rng.gaussian(t - p);
    double v = 0.0;
    switch (spec.kind) {
      case ModelKind::kCase1Model1:
      case ModelKind::kCase1Model2: {
        const double x2 = z[t - 2], x1 = z[t - 1];
        const double trig =
            spec.kind == ModelKind::kCase1Model1 ? std::cos(spec.alpha * x2)
                                                 : std::sin(spec.alpha * x2);
        v = -x2 * std::exp(-0.5 * x2 * x2) + trig * x1 / (1.0 + x2 * x2);
        break;
      }
      case ModelKind::kCase3Model1: {
        const double x1 = z[t - 1];
        v = 0.138 + (0.316 + 0.982 * x1) * std::exp(-3.89 * x1 * x1);
        break;
      }
      case ModelKind::kCase3Model2: {
        const double x1 = z[t - 1];
        v = -0.437 - (0.659 + 1.260 * x1) * std::exp(-3.89 * x1 * x1);
        break;
      }
      default:
        break;
    }
    z[t] = v + eps;
  }
  return z;
}

std::vector<double> gen_ar(const ModelSpec& spec, std::size_t total, const RandomStream& rng) {
  spec.ar.validate();
  const std::vector<double>& phi = spec.ar.phi;
  const std::size_t p = phi.size();
  const double sd = std::sqrt(spec.ar.sigma2);
  std::vector<double> z(total, 0.0);
  for (std::size_t t = 0; t < std::min(spec.init.size(), total); ++t) z[t] = spec.init[t];
  const std::size_t start = spec.init.size();
  for (std::size_t t = start; t < total; ++t) {
    double v = sd * rng.gaussian(t - start);
    for (std::size_t k = 1; k <= p; ++k) {
      if (t >= k) v += phi[k - 1] * z[t - k];
    }
    z[t] = v;
  }
  return z;
}

// Coefficient product of lag polynomials stored as c[0] + c[1] L + ...
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> gen_sarima(const ModelSpec& spec, std::size_t total,
                               const RandomStream& rng) {
  const SarimaSpec& p = spec.sarima;
  if (p.ds > 0 && p.s == 0) throw ArgumentError("sarima: seasonal difference needs s > 0");

  // Combined AR polynomial phi(L) Phi(L); index 0 is the constant 1.
  std::vector<double> arpoly(p.ar.size() + 1, 0.0);
  arpoly[0] = 1.0;
  for (std::size_t k = 0; k < p.ar.size(); ++k) arpoly[k + 1] = -p.ar[k];
  for (const auto& [lag, coeff] : p.seasonal_ar) {
    std::vector<double> seas(lag + 1, 0.0);
    seas[0] = 1.0;
    seas[lag] = -coeff;
    arpoly = poly_mul(arpoly, seas);
  }

  const std::size_t core_len = spec.burnin + total;
  const double sd = std::sqrt(p.sigma2);
  std::vector<double> eps(core_len);
  for (std::size_t t = 0; t < core_len; ++t) eps[t] = sd * rng.gaussian(t);

  // ARMA core: arpoly(L) w = c + theta(L) eps, zero pre-sample values.
  std::vector<double> w(core_len, 0.0);
  for (std::size_t t = 0; t < core_len; ++t) {
    double v = p.c + eps[t];
    for (std::size_t k = 1; k < arpoly.size(); ++k) {
      if (t >= k) v -= arpoly[k] * w[t - k];
    }
    for (std::size_t k = 1; k <= p.ma.size(); ++k) {
      if (t >= k) v += p.ma[k - 1] * eps[t - k];
    }
    w[t] = v;
  }
  w.erase(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(spec.burnin));

  // Seasonal integration first, then ordinary; accumulators start at zero.
  for (std::size_t rep = 0; rep < p.ds; ++rep) {
    for (std::size_t t = p.s; t < w.size(); ++t) w[t] += w[t - p.s];
  }
  for (std::size_t rep = 0; rep < p.d; ++rep) {
    for (std::size_t t = 1; t < w.size(); ++t) w[t] += w[t - 1];
  }
  return w;
}

}  // namespace

std::vector<double> gen_series(const ModelSpec& spec, std::size_t N, const RandomStream& rng) {
  if (N == 0) throw ArgumentError("gen_series: N must be positive");
  switch (spec.kind) {
    case ModelKind::kAr: {
      auto z = gen_ar(spec, spec.burnin + N, rng);
      return {z.begin() + static_cast<std::ptrdiff_t>(spec.burnin), z.end()};
    }
    case ModelKind::kSarima:
      return gen_sarima(spec, N, rng);
    default: {
      auto z = gen_nonlinear(spec, spec.burnin + N, rng);
      return {z.begin() + static_cast<std::ptrdiff_t>(spec.burnin), z.end()};
    }
  }
}

double matched_noise_variance(const std::vector<double>& phi_x,
                              const std::vector<double>& phi_y, double sigma1_sq) {
  if (!(sigma1_sq > 0.0)) throw ArgumentError("matched_noise_variance: sigma1_sq must be > 0");
  auto gain = [](const std::vector<double>& phi) {
    const auto rho = yule_walker_autocorr(phi, phi.size());
    double acc = 1.0;
    for (std::size_t k = 0; k < phi.size(); ++k) acc -= phi[k] * rho[k];
    return acc;
  };
  return sigma1_sq * gain(phi_y) / gain(phi_x);
}

std::vector<double> logistic_transform(std::span<const double> series) {
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = 1.0 / (1.0 + std::exp(-series[i]));
  return out;
}

std::vector<double> preprocess_passthrough(std::span<const double> series) {
  return {series.begin(), series.end()};
}

std::pair<std::size_t, std::vector<double>> extract_min_variance_window(
    std::span<const double> series, std::size_t window) {
  const std::size_t n = series.size();
  if (window == 0 || window > n) {
    throw ArgumentError("extract_min_variance_window: window must be in [1, length]");
  }
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = series[i] - mean;
    s1[i + 1] = s1[i] + c;
    s2[i + 1] = s2[i] + c * c;
  }
  const double denom = window > 1 ? static_cast<double>(window - 1) : 1.0;
  std::size_t best = 0;
  double best_var = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + window <= n; ++i) {
    const double s = s1[i + window] - s1[i];
    const double q = s2[i + window] - s2[i];
    const double var = (q - s * s / static_cast<double>(window)) / denom;
    if (var < best_var) {
      best_var = var;
      best = i;
    }
  }
  return {best, std::vector<double>(series.begin() + static_cast<std::ptrdiff_t>(best),
                                    series.begin() + static_cast<std::ptrdiff_t>(best + window))};
}

CaseMatrixSpec CaseMatrixSpec::case1(double alpha, std::uint64_t seed, std::size_t N,
                                     std::size_t P1, std::size_t P2) {
  CaseMatrixSpec s;
  s.spec1 = ModelSpec::case1(1, alpha);
  s.spec2 = ModelSpec::case1(2, alpha);
  s.P1 = P1;
  s.P2 = P2;
  s.N = N;
  s.seed = seed;
  return s;
}

CaseMatrixSpec CaseMatrixSpec::case2(std::uint64_t seed, std::size_t N, std::size_t P1,
                                     std::size_t P2) {
  CaseMatrixSpec s;
  const std::vector<double> phi1{0.8, -0.3, 0.1};
  const std::vector<double> phi2{0.7, -0.3, 0.1};
  const double sigma1_sq = 0.1;
  s.spec1 = ModelSpec::ar_model(phi1, sigma1_sq);
  s.spec2 = ModelSpec::ar_model(phi2, matched_noise_variance(phi1, phi2, sigma1_sq));
  s.P1 = P1;
  s.P2 = P2;
  s.N = N;
  s.seed = seed;
  return s;
}

CaseMatrixSpec CaseMatrixSpec::case3(std::uint64_t seed, std::size_t N, std::size_t P1,
                                     std::size_t P2) {
  CaseMatrixSpec s;
  s.spec1 = ModelSpec::case3(1);
  s.spec2 = ModelSpec::case3(2);
  s.P1 = P1;
  s.P2 = P2;
  s.N = N;
  s.seed = seed;
  return s;
}

std::pair<SeriesMatrix, std::size_t> build_case_matrix(const CaseMatrixSpec& spec) {
  if (spec.N < 3 || spec.P1 + spec.P2 == 0) {
    throw ArgumentError("build_case_matrix: need N >= 3 and at least one column");
  }
  SeriesMatrix m = SeriesMatrix::zeros(spec.N, spec.P1 + spec.P2);
  const RandomStream master(spec.seed);
  for (std::size_t j = 0; j < spec.P1 + spec.P2; ++j) {
    const ModelSpec& ms = j < spec.P1 ? spec.spec1 : spec.spec2;
    const auto raw = gen_series(ms, spec.N, master.child(j));
    const auto tr = logistic_transform(raw);
    std::copy(tr.begin(), tr.end(), m.col(j).begin());
  }
  return {std::move(m), spec.P1 + 1};
}

DetectionSummary summarize_detections(const std::vector<std::vector<std::size_t>>& detections,
                                      std::size_t true_cp) {
  DetectionSummary s;
  s.total = detections.size();
  double acc = 0.0;
  for (const auto& cps : detections) {
    if (cps.empty()) {
      ++s.failures;
      continue;
    }
    std::size_t tau = cps.front();
    for (std::size_t c : cps) {
      const auto dist = [&](std::size_t a) {
        return a > true_cp ? a - true_cp : true_cp - a;
      };
      if (dist(c) < dist(tau)) tau = c;
    }
    const double d = tau > true_cp ? static_cast<double>(tau - true_cp)
                                   : static_cast<double>(true_cp - tau);
    acc += d;
    s.exact += (tau == true_cp);
    s.within3 += (d <= 3.0);
  }
  const std::size_t ok = s.total - s.failures;
  s.mad = ok > 0 ? acc / static_cast<double>(ok) : 0.0;
  return s;
}

}  // namespace rlen
