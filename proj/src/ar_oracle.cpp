#include "rlen/ar_oracle.hpp"

#include <cmath>

#include "rlen/errors.hpp"
#include "rlen/linalg.hpp"

namespace rlen {

void ARSpec::validate() const {
  if (!(sigma2 > 0.0)) throw DataError("ARSpec: sigma2 must be positive");
  if (!ar_is_stationary(phi)) throw DataError("ARSpec: nonstationary coefficients");
}

double ar2_rlen(double phi1, double phi2) {
  if (!ar_is_stationary({phi1, phi2})) {
    throw DataError("ar2_rlen: coefficients outside the stationarity triangle");
  }
  const double phi_c = (phi2 + 1.0) * (phi1 * phi1 - phi2 * phi2 + 2.0 * phi2 - 1.0);
  return 0.5 * std::log((phi2 - 1.0) / phi_c);
}

std::vector<double> yule_walker_autocorr(const std::vector<double>& phi, std::size_t K) {
  const std::size_t p = phi.size();
  if (p == 0) return std::vector<double>(K, 0.0);
  if (!ar_is_stationary(phi)) {
    throw DataError("yule_walker_autocorr: nonstationary coefficients");
  }

  // rho_k = sum_j phi_j rho_{|k-j|}, k = 1..p, with rho_0 = 1. Collect the
  // rho_0 terms on the right-hand side.
  std::vector<double> a(p * p, 0.0), b(p, 0.0);
  for (std::size_t k = 1; k <= p; ++k) {
    a[(k - 1) * p + (k - 1)] += 1.0;
    b[k - 1] = phi[k - 1];
    for (std::size_t j = 1; j <= p; ++j) {
      if (j == k) continue;
      const std::size_t lag = k > j ? k - j : j - k;
      a[(k - 1) * p + (lag - 1)] -= phi[j - 1];
    }
  }
  std::vector<double> rho = solve_dense(std::move(a), std::move(b), p);

  rho.resize(std::max<std::size_t>(K, p), 0.0);
  for (std::size_t k = p + 1; k <= K; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= p; ++j) {
      const std::size_t lag = k - j;
      s += phi[j - 1] * (lag == 0 ? 1.0 : rho[lag - 1]);
    }
    rho[k - 1] = s;
  }
  rho.resize(K);
  return rho;
}

double arp_rlen(const std::vector<double>& phi, std::size_t m, std::size_t s) {
  if (m < 1) throw ArgumentError("arp_rlen: m must be >= 1");
  if (s < 1 || s > m) throw ArgumentError("arp_rlen: require 1 <= s <= m");

  std::vector<double> rho = yule_walker_autocorr(phi, m);

  auto toeplitz_logdet = [&rho](std::size_t dim) {
    std::vector<double> r(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t lag = i > j ? i - j : j - i;
        r[i * dim + j] = lag == 0 ? 1.0 : rho[lag - 1];
      }
    }
    return logdet_spd(std::move(r), dim);
  };

  // R22 is the trailing s x s block, which by Toeplitz symmetry equals the
  // leading one.
  const double ld_full = toeplitz_logdet(m + 1);
  const double ld_11 = toeplitz_logdet(m + 1 - s);
  const double ld_22 = toeplitz_logdet(s);
  return 0.5 * (ld_11 + ld_22 - ld_full);
}

}  // namespace rlen
