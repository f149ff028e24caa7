#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "fgd/types.hpp"

namespace fgd {

/// Truncation policy for the infinite correlation series: summation stops
/// once a run of terms falls below `tolerance` in absolute value, with
/// `max_terms` as a hard cap so termination is guaranteed.
struct SeriesPolicy {
  double tolerance = 1e-12;
  long max_terms = 10'000'000;
};

/// First-order increment autocorrelation rho_hat_H(j); identical to the fGn
/// autocovariance (shared formula).
double rho_first(long j, HurstIndex hurst);

/// Second-order increment autocorrelation
///   rho_H(j) = [-6|j|^{2H} - (|j-2|^{2H} + |j+2|^{2H})
///               + 4(|j-1|^{2H} + |j+1|^{2H})] / (2 (4 - 2^{2H})).
double rho_second(long j, HurstIndex hurst);

/// Cross-scale (n vs 2n) second-increment correlation rho_tilde_H(j).
double rho_tilde(long j, HurstIndex hurst);

/// sigma^2(H) = 2 (1 + 2 sum_{j>=1} rho_H(j)^2)
double sigma_sq(HurstIndex hurst, const SeriesPolicy& policy = {});

/// 2 (1 + 2 sum_{j>=1} rho_hat_H(j)^2); diverges for H >= 3/4 (INVALID_H).
double sigma_star_first(HurstIndex hurst, const SeriesPolicy& policy = {});

/// sigma_{1,2}(H) = sum_{j in Z} rho_tilde_H(j)^2
double sigma12(HurstIndex hurst, const SeriesPolicy& policy = {});

/// Limit variance of 2 ln2 sqrt(n) (h1 - H):
///   (3/2) sigma^2(H) - 2 sigma_{1,2}(H).
double limit_var_h1(HurstIndex hurst, const SeriesPolicy& policy = {});

/// Nine-term cross-scale correlation rho_{b,c}(x); rho_{1,1} collapses to
/// rho_H.
double rho_bc(long x, int b, int c, HurstIndex hurst);

/// Hermite coefficient c_{2p,2} = prod_{i=0}^{p-1}(2-2i) / (2p)!; equals 1 at
/// p = 1 and vanishes identically for p >= 2.
double c_coefficient(int p);

/// rho_2(k_i, k_j): cross-grid limit covariance. The p-series collapses to
/// its p = 1 term because c_{2p,2} = 0 for p >= 2 (asserted at runtime):
///   rho_2 = (2 / sqrt(k_i k_j)) sum_{s=0}^{k_i-1} sum_{r in Z}
///           rho_{k_i,k_j}(k_i r + k_j s)^2.
double rho2(int k_i, int k_j, HurstIndex hurst, const SeriesPolicy& policy = {});

/// sigma^2_{2,l}(k, d) = sum_i sum_j d_i d_j rho_2(k_i, k_j)
double sigma2_l(const std::vector<int>& k, const Eigen::VectorXd& d,
                HurstIndex hurst, const SeriesPolicy& policy = {});

/// Affine approximation Lambda_2(H) ~ 0.5174 + 0.1468 H.
double lambda2_affine(double h);

/// Monte Carlo evaluation of Lambda_2(H) = E |Z1 + Z2| / (|Z1| + |Z2|) over
/// standardized jointly Gaussian second increments with correlation
/// rho_H(1); deterministic given the seed.
double lambda2_mc(HurstIndex hurst, long replicates, std::uint64_t seed);

/// Same expectation for an arbitrary correlation (synthetic overrides).
double lambda2_mc_corr(double correlation, long replicates, std::uint64_t seed);

}  // namespace fgd
