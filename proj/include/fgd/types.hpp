#pragma once

#include <Eigen/Core>
#include <optional>

#include "fgd/error.hpp"

namespace fgd {

/// Hurst index, constrained to (0, 1). Operations that need a narrower range
/// (H != 1/2, H < 3/4, ...) enforce it at the point of use.
class HurstIndex {
 public:
  explicit HurstIndex(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0)) {
      raise(ErrorCode::invalid_hurst,
            "Hurst index must lie in (0,1), got " + std::to_string(value));
    }
  }

  double value() const { return value_; }
  double two_h() const { return 2.0 * value_; }

  friend bool operator==(HurstIndex a, HurstIndex b) {
    return a.value_ == b.value_;
  }

 private:
  double value_;
};

/// Uniform grid on [0, T] with m increments (m + 1 nodes t_k = kT/m).
struct GridSpec {
  double horizon;
  int points;

  GridSpec(double horizon_in, int points_in)
      : horizon(horizon_in), points(points_in) {
    if (!(horizon > 0.0)) {
      raise(ErrorCode::invalid_grid, "horizon must be positive");
    }
    if (points < 1) {
      raise(ErrorCode::invalid_grid, "grid needs at least one increment");
    }
  }

  double spacing() const { return horizon / points; }
  double node(int k) const { return k * horizon / points; }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.horizon == b.horizon && a.points == b.points;
  }
};

/// fBm sample path on a uniform grid; values[0] == 0 by construction.
struct FbmPath {
  GridSpec grid;
  HurstIndex hurst;
  Eigen::VectorXd values;  // length grid.points + 1
};

/// Parameter bundle of the Gompertz diffusion
///   dX = (alpha X - beta X ln X) dt + sigma X dB^H,  X_0 = x0.
struct GompertzParams {
  double x0;
  double alpha;
  double beta;
  double sigma;
  HurstIndex hurst;
  double horizon;

  GompertzParams(double x0_in, double alpha_in, double beta_in,
                 double sigma_in, HurstIndex hurst_in, double horizon_in)
      : x0(x0_in),
        alpha(alpha_in),
        beta(beta_in),
        sigma(sigma_in),
        hurst(hurst_in),
        horizon(horizon_in) {
    if (!(x0 > 0.0)) raise(ErrorCode::invalid_params, "x0 must be positive");
    if (beta == 0.0) raise(ErrorCode::invalid_params, "beta must be nonzero");
    if (!(sigma >= 0.0)) {
      raise(ErrorCode::invalid_params, "sigma must be nonnegative");
    }
    if (!(horizon > 0.0)) {
      raise(ErrorCode::invalid_params, "horizon must be positive");
    }
  }
};

/// Positive sample path (process values on a uniform grid). `params` is set
/// for simulated paths and empty for externally loaded observations.
struct ProcessPath {
  GridSpec grid;
  std::optional<GompertzParams> params;
  Eigen::VectorXd values;  // length grid.points + 1, strictly positive
};

/// Validates the positivity/shape invariants of a ProcessPath candidate.
inline ProcessPath make_process_path(GridSpec grid,
                                     std::optional<GompertzParams> params,
                                     Eigen::VectorXd values) {
  if (values.size() != grid.points + 1) {
    raise(ErrorCode::invalid_grid, "value count does not match grid");
  }
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (!(values[k] > 0.0) || !std::isfinite(values[k])) {
      raise(ErrorCode::nonpositive_state,
            "process value at node " + std::to_string(k) +
                " is not strictly positive and finite");
    }
  }
  return ProcessPath{grid, std::move(params), std::move(values)};
}

}  // namespace fgd
