#pragma once

#include <Eigen/Core>
#include <vector>

#include "fgd/types.hpp"

namespace fgd {

enum class ScheduleConvention {
  multiplicative,  // n_j = r_j * n
  divisive,        // n_j = n / r_j
};

/// Grid-ratio schedule for the regression estimator h3 and for sigma4.
struct RatioSchedule {
  std::vector<int> r;
  int base;
  ScheduleConvention convention;

  RatioSchedule(std::vector<int> ratios, int base_n,
                ScheduleConvention conv = ScheduleConvention::divisive);

  int size() const { return static_cast<int>(r.size()); }

  /// Actual grid sizes n_j under the schedule's convention.
  std::vector<int> grid_sizes() const;
};

/// Centered log-ratio regression weights per the ratio vector:
///   y_i = ln r_i - mean(ln r),  z = y / sum(y^2).
/// By construction sum(y) = 0, sum(z) = 0, sum(z y) = 1.
struct RegressionWeights {
  Eigen::VectorXd y;
  Eigen::VectorXd z;
};

RegressionWeights weights(const RatioSchedule& schedule);

/// Raw estimate with an out-of-(0,1) flag; values are never clipped.
struct HurstEstimate {
  double value;
  bool out_of_range;
};

inline HurstEstimate flag_range(double value) {
  return HurstEstimate{value, !(value > 0.0 && value < 1.0)};
}

/// Value-level cores (exposed for exact algebraic checks and the CLI).
double h1_value(double v2_at_n, double v2_at_2n);
double h2_value(double statistic, int k_n);
double h4_value(double ratio_stat);

/// h1: dyadic second-variation ratio,
///   1/2 - ln(V2_{2n} / V2_n) / (2 ln 2).
HurstEstimate h1(const ProcessPath& at_n, const ProcessPath& at_2n);

/// h2: localized variation statistic on a fine grid of exactly n^3
/// increments (k_n = n^2). The sum is truncated to k = 2..n-1 with prefactor
/// 2/(n-1) so no node beyond the horizon is needed.
HurstEstimate h2(const ProcessPath& fine_path, int n);

/// h3: weighted log-regression of V2_{n_j}/(n_j - 1) across the schedule's
/// grids. Weights are built from ln n_j, which reduces to the ratio-based
/// weights under the multiplicative convention and keeps the sign correct
/// under the divisive one.
HurstEstimate h3(const std::vector<ProcessPath>& paths,
                 const RatioSchedule& schedule);

/// h4: affine inversion of the second-difference ratio statistic,
///   (R - 0.5174) / 0.1468.
HurstEstimate h4(const ProcessPath& path);

/// Budget derivations: largest n with n^3 (resp. n^4) <= total observations.
int h2_base_from_budget(long budget);
int h4_base_from_budget(long budget);

}  // namespace fgd
