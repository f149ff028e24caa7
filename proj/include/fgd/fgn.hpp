#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>

#include "fgd/types.hpp"

namespace fgd {

/// Autocovariance of unit-variance fractional Gaussian noise at integer lag:
///   gamma_H(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
double fgn_autocovariance(HurstIndex hurst, long lag);

/// Eigenvalues (length 2m) of the circulant matrix whose first row embeds the
/// fGn covariance (gamma(0), ..., gamma(m), gamma(m-1), ..., gamma(1)).
/// Tiny negative values (>= -1e-9 * gamma(0)) are clamped to zero; anything
/// more negative raises NEGATIVE_EIGENVALUE.
Eigen::VectorXd circulant_eigenvalues(HurstIndex hurst, int points);

/// Samples an fBm path on `grid` by circulant embedding. Exact in
/// distribution; deterministic given (hurst, grid, seed).
FbmPath sample_fbm_circulant(HurstIndex hurst, const GridSpec& grid,
                             std::uint64_t seed);

/// One circulant synthesis yields two independent paths (real and imaginary
/// parts of the complex synthesis); this returns both. The first element is
/// bit-identical to sample_fbm_circulant on the same inputs.
std::array<FbmPath, 2> sample_fbm_circulant_pair(HurstIndex hurst,
                                                 const GridSpec& grid,
                                                 std::uint64_t seed);

/// Dense-factorization sampler used as an exact oracle for small grids.
/// Factorizes the fGn increment covariance and accumulates, which realizes a
/// lower-triangular factorization of the fBm covariance
/// (s^{2H} + t^{2H} - |t-s|^{2H}) / 2. O(m^3); refuses m > oracle_cap.
FbmPath sample_fbm_cholesky(HurstIndex hurst, const GridSpec& grid,
                            std::uint64_t seed, int oracle_cap = 1024);

}  // namespace fgd
