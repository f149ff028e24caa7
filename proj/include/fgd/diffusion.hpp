#pragma once

#include <vector>

#include "fgd/hurst.hpp"
#include "fgd/types.hpp"

namespace fgd {

/// sigma^2 estimators of the diffusion coefficient. Each takes the Hurst
/// estimate as an explicit argument so the harness can form every (si, hj)
/// combination; h_est must lie in (0, 1).

/// n^{2H-1} T^{-2H} V^{(1)}_{n,T}
double sigma2_1(const ProcessPath& path, double h_est);

/// n^{2H-1} / (T^{2H} (4 - 2^{2H})) V^{(2)}_{n,T}
double sigma2_2(const ProcessPath& path, double h_est);

/// sum (Delta^{(1)} X_k)^2 / ((T/n)^{2H} sum X_{k-1}^2)
double sigma2_3(const ProcessPath& path, double h_est);

/// Comparison estimator on the sigma scale:
///   sigma4 = exp(B) / (4 - 2^{2 h3}),
///   B = (1/2) mean_i ln(V^{(2)}_{n_i}/(n_i - 1)) + h3 * mean_i ln(n_i).
/// Square the result to compare against the sigma^2 estimators.
double sigma4(const std::vector<ProcessPath>& paths,
              const RatioSchedule& schedule, double h3_est);

}  // namespace fgd
