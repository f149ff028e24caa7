#include "fgd/gompertz.hpp"

#include <cmath>

namespace fgd {

namespace {

constexpr double kMaxExponent = 700.0;  // exp() overflows near 709.78

void check_exponent_range(double beta, double horizon) {
  if (std::abs(beta) * horizon > kMaxExponent) {
    raise(ErrorCode::overflow,
          "|beta| * horizon too large for the exponential weights");
  }
}

void check_grid_compatibility(const GompertzParams& params,
                              const FbmPath& fbm) {
  if (!(fbm.hurst == params.hurst)) {
    raise(ErrorCode::grid_mismatch, "fBm Hurst index differs from params");
  }
  if (fbm.grid.horizon != params.horizon) {
    raise(ErrorCode::grid_mismatch, "fBm horizon differs from params");
  }
}

/// Trapezoid values of Q_k = \int_0^{t_k} e^{-beta (t_k - s)} B_s ds via the
/// rolling recursion Q_k = e^{-beta d} Q_{k-1} + d (e^{-beta d} B_{k-1} + B_k)/2,
/// which equals e^{-beta t_k} * Trap(e^{beta s} B_s) term by term but never
/// forms the large intermediate e^{beta s}.
Eigen::VectorXd weighted_trapezoid(double beta, const FbmPath& fbm) {
  const int m = fbm.grid.points;
  const double d = fbm.grid.spacing();
  const double decay = std::exp(-beta * d);

  Eigen::VectorXd q(m + 1);
  q[0] = 0.0;
  for (int k = 1; k <= m; ++k) {
    q[k] = decay * q[k - 1] +
           0.5 * d * (decay * fbm.values[k - 1] + fbm.values[k]);
  }
  return q;
}

}  // namespace

Eigen::VectorXd volterra_integrals(double beta, const FbmPath& fbm) {
  check_exponent_range(beta, fbm.grid.horizon);
  const Eigen::VectorXd q = weighted_trapezoid(beta, fbm);
  return fbm.values - beta * q;
}

double volterra_integral(double beta, const FbmPath& fbm, int k) {
  if (k < 0 || k > fbm.grid.points) {
    raise(ErrorCode::index_out_of_range,
          "node index " + std::to_string(k) + " outside grid");
  }
  if (k == 0) return 0.0;
  return volterra_integrals(beta, fbm)[k];
}

ProcessPath solve_explicit(const GompertzParams& params, const FbmPath& fbm) {
  check_grid_compatibility(params, fbm);
  check_exponent_range(params.beta, params.horizon);

  const int m = fbm.grid.points;
  const double log_x0 = std::log(params.x0);
  const double drift_ratio = params.alpha / params.beta;
  const Eigen::VectorXd integral = volterra_integrals(params.beta, fbm);

  Eigen::VectorXd values(m + 1);
  values[0] = params.x0;
  for (int k = 1; k <= m; ++k) {
    const double relax = std::exp(-params.beta * fbm.grid.node(k));
    const double exponent = relax * log_x0 + drift_ratio * (1.0 - relax) +
                            params.sigma * integral[k];
    if (!(exponent > -kMaxExponent && exponent < kMaxExponent)) {
      raise(ErrorCode::overflow,
            "solution exponent " + std::to_string(exponent) + " at node " +
                std::to_string(k) + " exceeds the representable range");
    }
    values[k] = std::exp(exponent);
  }
  return ProcessPath{fbm.grid, params, std::move(values)};
}

ProcessPath euler_path(const GompertzParams& params, const FbmPath& fbm) {
  check_grid_compatibility(params, fbm);

  const int m = fbm.grid.points;
  const double d = fbm.grid.spacing();

  Eigen::VectorXd values(m + 1);
  values[0] = params.x0;
  for (int k = 0; k < m; ++k) {
    const double x = values[k];
    const double drift = params.alpha * x - params.beta * x * std::log(x);
    const double noise = params.sigma * x * (fbm.values[k + 1] - fbm.values[k]);
    const double next = x + drift * d + noise;
    if (!(next > 0.0) || !std::isfinite(next)) {
      raise(ErrorCode::nonpositive_state,
            "Euler state left the positive half-line at node " +
                std::to_string(k + 1) + "; refine the grid");
    }
    values[k + 1] = next;
  }
  return ProcessPath{fbm.grid, params, std::move(values)};
}

namespace {

Eigen::VectorXd subsample_values(const Eigen::VectorXd& values, int m, int n) {
  if (n < 1 || m % n != 0) {
    raise(ErrorCode::not_a_divisor, std::to_string(n) +
                                        " does not divide the " +
                                        std::to_string(m) + "-increment grid");
  }
  const int stride = m / n;
  Eigen::VectorXd coarse(n + 1);
  for (int k = 0; k <= n; ++k) coarse[k] = values[k * stride];
  return coarse;
}

}  // namespace

FbmPath subsample(const FbmPath& path, int n) {
  return FbmPath{GridSpec(path.grid.horizon, n), path.hurst,
                 subsample_values(path.values, path.grid.points, n)};
}

ProcessPath subsample(const ProcessPath& path, int n) {
  return ProcessPath{GridSpec(path.grid.horizon, n), path.params,
                     subsample_values(path.values, path.grid.points, n)};
}

}  // namespace fgd
