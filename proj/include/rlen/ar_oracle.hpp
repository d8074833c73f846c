#pragma once

#include <cstddef>
#include <vector>

namespace rlen {

/// Stationary AR(p) specification with Gaussian innovations.
struct ARSpec {
  std::vector<double> phi;  // phi_1 .. phi_p
  double sigma2 = 1.0;      // innovation variance, > 0

  /// Throws DataError unless the coefficients are stationary and sigma2 > 0.
  void validate() const;
};

/// Closed-form relative entropy of a stationary AR(2) process at lag order 2,
/// 0.5 log((phi2 - 1)/phi_c) with phi_c = (phi2+1)(phi1^2 - phi2^2 + 2 phi2 - 1).
/// Independent of the innovation variance.
double ar2_rlen(double phi1, double phi2);

/// Autocorrelations rho_1..rho_K of a stationary AR(p): solves the p x p
/// Yule-Walker system, then extends with rho_k = sum_j phi_j rho_{k-j}.
std::vector<double> yule_walker_autocorr(const std::vector<double>& phi, std::size_t K);

/// Relative entropy of a stationary AR(p) at lag order m with split s:
/// 0.5 log(|R11| |R22| / R_m|) over the (m+1)-dim Toeplitz correlation matrix
/// and its leading (m+1-s) and trailing s diagonal blocks. Log-determinants
/// via LDL^T. sigma^2 never enters.
double arp_rlen(const std::vector<double>& phi, std::size_t m, std::size_t s);

}  // namespace rlen
