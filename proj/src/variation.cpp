#include "fgd/variation.hpp"

#include <cmath>

#include "fgd/accum.hpp"

namespace fgd {

namespace {

void check_order(int order) {
  if (order != 1 && order != 2) {
    raise(ErrorCode::invalid_params, "increment order must be 1 or 2");
  }
}

void check_length(Eigen::Index nodes, int order) {
  if (nodes < order + 1) {
    raise(ErrorCode::path_too_short,
          "need at least " + std::to_string(order + 1) + " nodes");
  }
}

}  // namespace

Eigen::VectorXd delta(const Eigen::Ref<const Eigen::VectorXd>& values,
                      int order) {
  check_order(order);
  check_length(values.size(), order);
  const Eigen::Index m = values.size() - 1;
  if (order == 1) {
    Eigen::VectorXd out(m);
    for (Eigen::Index k = 1; k <= m; ++k) out[k - 1] = values[k] - values[k - 1];
    return out;
  }
  Eigen::VectorXd out(m - 1);
  for (Eigen::Index k = 1; k < m; ++k) {
    out[k - 1] = values[k + 1] - 2.0 * values[k] + values[k - 1];
  }
  return out;
}

IncrementSeq delta(const ProcessPath& path, int order) {
  return IncrementSeq{order, path.grid, delta(path.values, order)};
}

IncrementSeq delta(const FbmPath& path, int order) {
  return IncrementSeq{order, path.grid, delta(path.values, order)};
}

double normalized_variation(const ProcessPath& path, int order) {
  check_order(order);
  check_length(path.values.size(), order);
  const int m = path.grid.points;
  KahanSum sum;
  if (order == 1) {
    for (int k = 1; k <= m; ++k) {
      const double r = (path.values[k] - path.values[k - 1]) / path.values[k - 1];
      sum.add(r * r);
    }
  } else {
    for (int k = 1; k < m; ++k) {
      const double d2 =
          path.values[k + 1] - 2.0 * path.values[k] + path.values[k - 1];
      const double r = d2 / path.values[k - 1];
      sum.add(r * r);
    }
  }
  return sum.value();
}

double w_statistic(const Eigen::Ref<const Eigen::VectorXd>& fine_values, int n,
                   int k) {
  const Eigen::Index m = fine_values.size() - 1;
  if (n < 1 || m % n != 0) {
    raise(ErrorCode::grid_mismatch,
          "fine grid must hold n * k_n increments with n = " +
              std::to_string(n));
  }
  const Eigen::Index k_n = m / n;
  if (k < 1 || k > n - 1) {
    raise(ErrorCode::index_out_of_range,
          "k = " + std::to_string(k) + " outside the valid band [1, n-1]");
  }
  const Eigen::Index center = static_cast<Eigen::Index>(k) * k_n;
  KahanSum sum;
  for (Eigen::Index j = -k_n + 1; j <= k_n - 1; ++j) {
    const Eigen::Index idx = center + j;
    const double d2 = fine_values[idx + 1] - 2.0 * fine_values[idx] +
                      fine_values[idx - 1];
    sum.add(d2 * d2);
  }
  return sum.value();
}

double w_statistic(const ProcessPath& fine_path, int n, int k) {
  return w_statistic(fine_path.values, n, k);
}

double ratio_statistic(const Eigen::Ref<const Eigen::VectorXd>& values) {
  const Eigen::Index m = values.size() - 1;
  if (m < 3) {
    raise(ErrorCode::path_too_short, "ratio statistic needs at least 4 nodes");
  }
  const Eigen::VectorXd second = delta(values, 2);
  KahanSum sum;
  for (Eigen::Index k = 0; k + 1 < second.size(); ++k) {
    const double a = second[k];
    const double b = second[k + 1];
    const double denom = std::abs(a) + std::abs(b);
    sum.add(denom == 0.0 ? 1.0 : std::abs(a + b) / denom);
  }
  return sum.value() / static_cast<double>(second.size() - 1);
}

double ratio_statistic(const ProcessPath& path) {
  return ratio_statistic(path.values);
}

double fbm_normalized_variation(const FbmPath& path, int order) {
  check_order(order);
  const double h = path.hurst.value();
  if (h == 0.5) {
    raise(ErrorCode::invalid_h,
          "normalized fBm variation is defined for H != 1/2");
  }
  const int n = path.grid.points;
  check_length(path.values.size(), 2);

  const double t_scale = std::pow(path.grid.horizon, -h);
  KahanSum sum;
  for (int k = 1; k <= n - 1; ++k) {
    const double inc =
        order == 1
            ? path.values[k] - path.values[k - 1]
            : path.values[k + 1] - 2.0 * path.values[k] + path.values[k - 1];
    const double scaled = t_scale * inc;
    sum.add(scaled * scaled);
  }
  const double c = order == 1 ? 1.0 : 4.0 - std::pow(2.0, 2.0 * h);
  return std::pow(static_cast<double>(n), 2.0 * h - 1.0) / c * sum.value();
}

double sup_deviation(const FbmPath& path) {
  const int n = path.grid.points;
  if (n < 4) {
    raise(ErrorCode::path_too_short, "sup deviation needs n >= 4");
  }
  const double h = path.hurst.value();
  const double horizon = path.grid.horizon;
  const double prefactor = std::pow(static_cast<double>(n), 2.0 * h - 1.0) /
                           (std::pow(horizon, 2.0 * h - 1.0) *
                            (4.0 - std::pow(2.0, 2.0 * h)));

  KahanSum partial;
  double best = 0.0;
  for (int k = 1; k <= n - 1; ++k) {
    const double d2 =
        path.values[k + 1] - 2.0 * path.values[k] + path.values[k - 1];
    partial.add(d2 * d2);
    if (k < 2) continue;
    const double deviation =
        std::abs(prefactor * partial.value() - k * horizon / n);
    if (deviation > best) best = deviation;
  }
  return best;
}

}  // namespace fgd
