#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "fgd/types.hpp"

namespace testsupport {

/// fBm level covariance E[B_s B_t] = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
inline double fbm_covariance(double s, double t, double h) {
  return 0.5 * (std::pow(s, 2 * h) + std::pow(t, 2 * h) -
                std::pow(std::abs(t - s), 2 * h));
}

/// Analytic covariance of the grid increments of fBm on [0,T] with m steps.
inline Eigen::MatrixXd increment_covariance(int m, double horizon, double h) {
  Eigen::MatrixXd cov(m, m);
  const double d = horizon / m;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double k = std::abs(i - j);
      cov(i, j) = 0.5 * std::pow(d, 2 * h) *
                  (std::pow(k + 1, 2 * h) - 2 * std::pow(k, 2 * h) +
                   std::pow(std::abs(k - 1), 2 * h));
    }
  }
  return cov;
}

struct MomentMatrix {
  Eigen::MatrixXd mean;  // empirical E[u_i u_j]
  Eigen::MatrixXd se;    // Monte Carlo standard error per entry
};

/// Empirical second-moment matrix of path increments over `replicates`
/// independent draws from `sampler(seed)`.
inline MomentMatrix increment_moments(
    const std::function<fgd::FbmPath(std::uint64_t)>& sampler, int m,
    int replicates, std::uint64_t seed0 = 1) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(m, m);
  for (int r = 0; r < replicates; ++r) {
    const fgd::FbmPath path = sampler(seed0 + static_cast<std::uint64_t>(r));
    Eigen::VectorXd inc(m);
    for (int k = 0; k < m; ++k) inc[k] = path.values[k + 1] - path.values[k];
    const Eigen::MatrixXd outer = inc * inc.transpose();
    sum += outer;
    sum_sq += outer.cwiseProduct(outer);
  }
  MomentMatrix out;
  out.mean = sum / replicates;
  const Eigen::MatrixXd var =
      (sum_sq / replicates - out.mean.cwiseProduct(out.mean)) *
      (static_cast<double>(replicates) / (replicates - 1));
  out.se = (var / replicates).cwiseSqrt();
  return out;
}

/// Brute-force variant of the localized second-difference energy W_{n,k}.
inline double w_statistic_bruteforce(const Eigen::VectorXd& fine, int n,
                                     int k) {
  const int m = static_cast<int>(fine.size()) - 1;
  const int k_n = m / n;
  double sum = 0.0;
  for (int j = -k_n + 1; j <= k_n - 1; ++j) {
    const int idx = j + k * k_n;
    const double d2 = fine[idx + 1] - 2.0 * fine[idx] + fine[idx - 1];
    sum += d2 * d2;
  }
  return sum;
}

/// Independent re-implementation of the order-2 normalized variation.
inline double normalized_variation2_bruteforce(const Eigen::VectorXd& x) {
  const int m = static_cast<int>(x.size()) - 1;
  double sum = 0.0;
  for (int k = 1; k <= m - 1; ++k) {
    const double d2 = x[k + 1] - 2.0 * x[k] + x[k - 1];
    sum += (d2 / x[k - 1]) * (d2 / x[k - 1]);
  }
  return sum;
}

/// Left-point Riemann-Stieltjes evaluation of
/// int_0^{t_k} e^{-beta (t_k - s)} dB_s, the independent oracle for the
/// chain-rule Volterra evaluator.
inline double volterra_riemann_stieltjes(double beta, const fgd::FbmPath& fbm,
                                         int k) {
  const double t_k = fbm.grid.node(k);
  double sum = 0.0;
  for (int j = 0; j < k; ++j) {
    const double s_j = fbm.grid.node(j);
    sum += std::exp(-beta * (t_k - s_j)) * (fbm.values[j + 1] - fbm.values[j]);
  }
  return sum;
}

inline double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
  const double mean = sample_mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline double standard_error(const std::vector<double>& v) {
  return sample_sd(v) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace testsupport
