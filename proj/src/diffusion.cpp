#include "fgd/diffusion.hpp"

#include <cmath>

#include "fgd/accum.hpp"
#include "fgd/variation.hpp"

namespace fgd {

namespace {

void check_h(double h_est) {
  if (!(h_est > 0.0 && h_est < 1.0)) {
    raise(ErrorCode::invalid_h,
          "Hurst estimate " + std::to_string(h_est) + " outside (0,1)");
  }
}

}  // namespace

double sigma2_1(const ProcessPath& path, double h_est) {
  check_h(h_est);
  const double n = path.grid.points;
  const double horizon = path.grid.horizon;
  return std::pow(n, 2.0 * h_est - 1.0) * std::pow(horizon, -2.0 * h_est) *
         normalized_variation(path, 1);
}

double sigma2_2(const ProcessPath& path, double h_est) {
  check_h(h_est);
  const double n = path.grid.points;
  const double horizon = path.grid.horizon;
  const double c2 = 4.0 - std::pow(2.0, 2.0 * h_est);
  return std::pow(n, 2.0 * h_est - 1.0) /
         (std::pow(horizon, 2.0 * h_est) * c2) * normalized_variation(path, 2);
}

double sigma2_3(const ProcessPath& path, double h_est) {
  check_h(h_est);
  const int n = path.grid.points;
  const double spacing = path.grid.horizon / n;

  KahanSum numerator;
  KahanSum denominator;
  for (int k = 1; k <= n; ++k) {
    const double inc = path.values[k] - path.values[k - 1];
    numerator.add(inc * inc);
    denominator.add(path.values[k - 1] * path.values[k - 1]);
  }
  return numerator.value() /
         (std::pow(spacing, 2.0 * h_est) * denominator.value());
}

double sigma4(const std::vector<ProcessPath>& paths,
              const RatioSchedule& schedule, double h3_est) {
  const double c2 = 4.0 - std::pow(2.0, 2.0 * h3_est);
  if (!(c2 > 0.0)) {
    raise(ErrorCode::invalid_h, "sigma4 needs 4 - 2^{2H} > 0, got Hurst " +
                                    std::to_string(h3_est));
  }
  const std::vector<int> sizes = schedule.grid_sizes();
  if (paths.size() != sizes.size()) {
    raise(ErrorCode::grid_mismatch, "sigma4 paths do not match the schedule");
  }

  KahanSum log_variation_mean;
  KahanSum log_size_mean;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].grid.points != sizes[i]) {
      raise(ErrorCode::grid_mismatch,
            "sigma4 path " + std::to_string(i) + " has wrong grid");
    }
    const double v = normalized_variation(paths[i], 2);
    if (v <= 0.0) {
      raise(ErrorCode::zero_variation, "sigma4 needs positive variations");
    }
    log_variation_mean.add(std::log(v / (sizes[i] - 1)));
    log_size_mean.add(std::log(static_cast<double>(sizes[i])));
  }
  const double count = static_cast<double>(paths.size());
  const double b_hat = 0.5 * (log_variation_mean.value() / count) +
                       h3_est * (log_size_mean.value() / count);
  return std::exp(b_hat) / c2;
}

}  // namespace fgd
