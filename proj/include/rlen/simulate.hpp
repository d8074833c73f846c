#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rlen/ar_oracle.hpp"
#include "rlen/rng.hpp"
#include "rlen/series_matrix.hpp"

namespace rlen {

enum class ModelKind {
  kCase1Model1,  // x_i = -x_{i-2} e^{-x_{i-2}^2/2} + cos(a x_{i-2}) x_{i-1}/(1+x_{i-2}^2) + e_i
  kCase1Model2,  // same with sin
  kCase3Model1,  // x_i = 0.138 + (0.316 + 0.982 x_{i-1}) e^{-3.89 x_{i-1}^2} + e_i
  kCase3Model2,  // x_i = -0.437 - (0.659 + 1.260 x_{i-1}) e^{-3.89 x_{i-1}^2} + e_i
  kAr,
  kSarima,
};

struct SarimaSpec {
  std::vector<double> ar;  // phi(L) = 1 - sum phi_k L^k
  std::vector<double> ma;  // theta(L) = 1 + sum theta_k L^k
  std::vector<std::pair<std::size_t, double>> seasonal_ar;  // Phi(L) = 1 - sum c L^lag
  std::size_t d = 0;       // ordinary integration order
  std::size_t ds = 0;      // seasonal integration order
  std::size_t s = 0;       // season length
  double c = 0.0;          // intercept of the ARMA core
  double sigma2 = 1.0;
};

struct ModelSpec {
  ModelKind kind = ModelKind::kAr;
  double alpha = 1.5;        // trig frequency, case 1 models only
  double sigma = 1.0;        // innovation standard deviation, case models
  ARSpec ar;                 // kAr
  SarimaSpec sarima;         // kSarima
  std::vector<double> init;  // initial state values; emitted when burnin = 0
  std::size_t burnin = 0;

  static ModelSpec case1(int model, double alpha);   // sigma 0.4 / 0.5, init {1,1}
  static ModelSpec case3(int model);                 // sigma 0.2, init {0}
  static ModelSpec ar_model(std::vector<double> phi, double sigma2, std::size_t burnin = 500);
  static ModelSpec sarima_process(int which);  // the three fitted processes
};

/// Raw (untransformed) series of length N. Deterministic in (spec, N, stream):
/// innovation i of the recursion is stream.gaussian(i), so the output with
/// burnin b equals the tail of the burnin-0 output of length N+b.
std::vector<double> gen_series(const ModelSpec& spec, std::size_t N, const RandomStream& stream);

/// Innovation variance that gives process y the same marginal variance as
/// process x (AR coefficient vectors, stationary), via Yule-Walker
/// autocorrelations: sigma2 * (1 - sum phi* rho*) / (1 - sum phi rho).
double matched_noise_variance(const std::vector<double>& phi_x,
                              const std::vector<double>& phi_y, double sigma1_sq);

/// Elementwise 1/(1 + exp(-y)).
std::vector<double> logistic_transform(std::span<const double> series);

/// First start index (0-based) of the window with minimal sample variance;
/// ties resolve to the smallest index. Single pass with centered prefix sums.
std::pair<std::size_t, std::vector<double>> extract_min_variance_window(
    std::span<const double> series, std::size_t window);

/// Identity hook for pre-extraction filtering. Replace with a real filter
/// when cutoff parameters are known; the extraction pipeline calls it so a
/// filter can be introduced without touching callers.
std::vector<double> preprocess_passthrough(std::span<const double> series);

struct CaseMatrixSpec {
  ModelSpec spec1, spec2;
  std::size_t P1 = 0, P2 = 0;
  std::size_t N = 0;
  std::uint64_t seed = 0;

  static CaseMatrixSpec case1(double alpha, std::uint64_t seed, std::size_t N = 400,
                              std::size_t P1 = 30, std::size_t P2 = 70);
  static CaseMatrixSpec case2(std::uint64_t seed, std::size_t N = 500, std::size_t P1 = 60,
                              std::size_t P2 = 40);
  static CaseMatrixSpec case3(std::uint64_t seed, std::size_t N = 500, std::size_t P1 = 160,
                              std::size_t P2 = 80);
};

/// P1 columns from spec1 then P2 from spec2, each logistic-transformed;
/// column j is generated from child stream j of the master seed. Returns the
/// matrix and the true change-point P1 + 1 (1-based).
std::pair<SeriesMatrix, std::size_t> build_case_matrix(const CaseMatrixSpec& spec);

struct DetectionSummary {
  double mad = 0.0;          // mean |tau - true| over successful detections
  std::size_t failures = 0;  // replications with no change-point found
  std::size_t exact = 0;     // tau == true
  std::size_t within3 = 0;   // |tau - true| <= 3
  std::size_t total = 0;
};

/// Per replication, tau is the detected change-point nearest the truth;
/// empty detections count as failures and are excluded from the MAD.
DetectionSummary summarize_detections(const std::vector<std::vector<std::size_t>>& detections,
                                      std::size_t true_cp);

}  // namespace rlen
