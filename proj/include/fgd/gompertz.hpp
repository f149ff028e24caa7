#pragma once

#include <Eigen/Core>

#include "fgd/types.hpp"

namespace fgd {

/// Pathwise Volterra integral I_k = \int_0^{t_k} e^{-beta (t_k - s)} dB^H_s,
/// evaluated through the chain-rule identity
///   \int_0^t e^{beta s} dB_s = e^{beta t} B_t - beta \int_0^t e^{beta s} B_s ds
/// with the Lebesgue integral computed by the composite trapezoid rule on the
/// fBm grid. Returns the value at node k; 0 at k = 0. beta = 0 reduces to B_{t_k}.
double volterra_integral(double beta, const FbmPath& fbm, int k);

/// All node values of the Volterra integral in one O(m) sweep.
Eigen::VectorXd volterra_integrals(double beta, const FbmPath& fbm);

/// Explicit solution of the Gompertz SDE as a functional of the fBm path:
///   X_t = exp{ e^{-beta t} ln x0 + (alpha/beta)(1 - e^{-beta t})
///              + sigma \int_0^t e^{-beta (t-s)} dB^H_s }.
/// This is the primary path constructor; the result is strictly positive and
/// X_0 = x0 exactly.
ProcessPath solve_explicit(const GompertzParams& params, const FbmPath& fbm);

/// Explicit Euler discretization of the SDE, as a cross-check of
/// solve_explicit. Positivity is not guaranteed on coarse grids; a state
/// <= 0 raises NONPOSITIVE_STATE (retry on a finer grid).
ProcessPath euler_path(const GompertzParams& params, const FbmPath& fbm);

/// Keeps every (m/n)-th node; n must divide the increment count m.
FbmPath subsample(const FbmPath& path, int n);
ProcessPath subsample(const ProcessPath& path, int n);

}  // namespace fgd
