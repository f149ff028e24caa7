#include "fgd/hurst.hpp"

#include <cmath>

#include "fgd/accum.hpp"
#include "fgd/variation.hpp"

namespace fgd {

RatioSchedule::RatioSchedule(std::vector<int> ratios, int base_n,
                             ScheduleConvention conv)
    : r(std::move(ratios)), base(base_n), convention(conv) {
  if (r.size() < 2) {
    raise(ErrorCode::invalid_params, "schedule needs at least two ratios");
  }
  if (base < 1) raise(ErrorCode::invalid_params, "schedule base must be >= 1");
  for (int ratio : r) {
    if (ratio < 1) {
      raise(ErrorCode::invalid_params, "schedule ratios must be positive");
    }
    if (convention == ScheduleConvention::divisive && base % ratio != 0) {
      raise(ErrorCode::not_a_divisor,
            "divisive schedule requires each ratio to divide the base");
    }
  }
}

std::vector<int> RatioSchedule::grid_sizes() const {
  std::vector<int> sizes(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    sizes[i] =
        convention == ScheduleConvention::multiplicative ? r[i] * base : base / r[i];
  }
  return sizes;
}

namespace {

/// y = ln(values) centered; z = y / sum(y^2). Degenerate when all equal.
RegressionWeights centered_log_weights(const std::vector<double>& values) {
  const Eigen::Index count = static_cast<Eigen::Index>(values.size());
  Eigen::VectorXd y(count);
  for (Eigen::Index i = 0; i < count; ++i) y[i] = std::log(values[i]);
  y.array() -= y.mean();
  const double y_sq = y.squaredNorm();
  if (y_sq <= 0.0) {
    raise(ErrorCode::degenerate_schedule,
          "all schedule ratios equal; regression weights undefined");
  }
  return RegressionWeights{y, y / y_sq};
}

double checked_variation(const ProcessPath& path) {
  const double v = normalized_variation(path, 2);
  if (v <= 0.0) {
    raise(ErrorCode::zero_variation,
          "second-order variation vanished (constant or linear path)");
  }
  return v;
}

}  // namespace

RegressionWeights weights(const RatioSchedule& schedule) {
  std::vector<double> ratios(schedule.r.begin(), schedule.r.end());
  return centered_log_weights(ratios);
}

double h1_value(double v2_at_n, double v2_at_2n) {
  if (v2_at_n <= 0.0 || v2_at_2n <= 0.0) {
    raise(ErrorCode::zero_variation, "h1 needs strictly positive variations");
  }
  return 0.5 - std::log(v2_at_2n / v2_at_n) / (2.0 * std::log(2.0));
}

double h2_value(double statistic, int k_n) {
  if (statistic <= 0.0) {
    raise(ErrorCode::zero_variation, "h2 statistic must be positive");
  }
  return 0.5 + std::log(statistic) / (2.0 * std::log(static_cast<double>(k_n)));
}

double h4_value(double ratio_stat) {
  return (ratio_stat - 0.5174) / 0.1468;
}

HurstEstimate h1(const ProcessPath& at_n, const ProcessPath& at_2n) {
  if (at_2n.grid.points != 2 * at_n.grid.points ||
      at_2n.grid.horizon != at_n.grid.horizon) {
    raise(ErrorCode::grid_mismatch,
          "h1 expects the same path at n and 2n increments");
  }
  return flag_range(
      h1_value(checked_variation(at_n), checked_variation(at_2n)));
}

HurstEstimate h2(const ProcessPath& fine_path, int n) {
  if (n < 4) raise(ErrorCode::invalid_params, "h2 needs n >= 4");
  const long k_n = static_cast<long>(n) * n;
  const long m = k_n * n;
  if (fine_path.grid.points != m) {
    raise(ErrorCode::grid_mismatch,
          "h2 expects a fine path with exactly n^3 increments");
  }

  KahanSum sum;
  for (int k = 2; k <= n - 1; ++k) {
    // numerator second difference on the coarse n-grid
    const Eigen::Index c = static_cast<Eigen::Index>(k) * k_n;
    const double d2 = fine_path.values[c + k_n] - 2.0 * fine_path.values[c] +
                      fine_path.values[c - k_n];
    const double w = w_statistic(fine_path.values, n, k - 1);
    if (w <= 0.0) {
      raise(ErrorCode::zero_variation,
            "W_{n," + std::to_string(k - 1) + "} vanished");
    }
    sum.add(d2 * d2 / w);
  }
  const double statistic = 2.0 / (n - 1) * sum.value();
  return flag_range(h2_value(statistic, static_cast<int>(k_n)));
}

HurstEstimate h3(const std::vector<ProcessPath>& paths,
                 const RatioSchedule& schedule) {
  const std::vector<int> sizes = schedule.grid_sizes();
  if (paths.size() != sizes.size()) {
    raise(ErrorCode::grid_mismatch, "h3 got " + std::to_string(paths.size()) +
                                        " paths for a schedule of length " +
                                        std::to_string(sizes.size()));
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (paths[i].grid.points != sizes[i] ||
        paths[i].grid.horizon != paths[0].grid.horizon) {
      raise(ErrorCode::grid_mismatch,
            "h3 path " + std::to_string(i) + " does not match schedule grid");
    }
  }

  std::vector<double> sizes_real(sizes.begin(), sizes.end());
  const RegressionWeights w = centered_log_weights(sizes_real);

  KahanSum acc;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const double v = checked_variation(paths[i]);
    acc.add(w.z[static_cast<Eigen::Index>(i)] * std::log(v / (sizes[i] - 1)));
  }
  return flag_range(-0.5 * acc.value());
}

HurstEstimate h4(const ProcessPath& path) {
  if (path.grid.points < 8) {
    raise(ErrorCode::path_too_short, "h4 needs at least 8 increments");
  }
  return flag_range(h4_value(ratio_statistic(path)));
}

namespace {

int integer_root(long budget, int power) {
  if (budget < 1) raise(ErrorCode::invalid_params, "budget must be positive");
  long n = std::lround(std::pow(static_cast<double>(budget),
                                1.0 / static_cast<double>(power)));
  auto raised = [power](long base) {
    long out = 1;
    for (int i = 0; i < power; ++i) out *= base;
    return out;
  };
  while (n > 1 && raised(n) > budget) --n;
  while (raised(n + 1) <= budget) ++n;
  return static_cast<int>(n);
}

}  // namespace

int h2_base_from_budget(long budget) { return integer_root(budget, 3); }

int h4_base_from_budget(long budget) { return integer_root(budget, 4); }

}  // namespace fgd
