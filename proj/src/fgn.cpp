#include "fgd/fgn.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <complex>
#include <unsupported/Eigen/FFT>

#include "fgd/rng.hpp"

namespace fgd {

namespace {

/// Cumulative sum of unit-grid noise, scaled as T^H * (m^{-H} * S_k).
/// The two-step scaling keeps the self-similarity identity
/// path_T = T^H * path_1 exact in floating point.
FbmPath accumulate_and_scale(HurstIndex hurst, const GridSpec& grid,
                             const Eigen::VectorXd& unit_fgn) {
  const int m = grid.points;
  const double unit_scale = std::pow(static_cast<double>(m), -hurst.value());
  const double horizon_scale = std::pow(grid.horizon, hurst.value());

  Eigen::VectorXd values(m + 1);
  values[0] = 0.0;
  double running = 0.0;
  for (int k = 0; k < m; ++k) {
    running += unit_fgn[k];
    values[k + 1] = horizon_scale * (unit_scale * running);
  }
  if (!values.allFinite()) {
    raise(ErrorCode::overflow, "fBm synthesis produced non-finite values");
  }
  return FbmPath{grid, hurst, std::move(values)};
}

}  // namespace

double fgn_autocovariance(HurstIndex hurst, long lag) {
  const double two_h = hurst.two_h();
  const double k = static_cast<double>(std::labs(lag));
  return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
                std::pow(std::abs(k - 1.0), two_h));
}

Eigen::VectorXd circulant_eigenvalues(HurstIndex hurst, int points) {
  const int m = points;
  const int n = 2 * m;
  Eigen::VectorXcd row(n);
  for (int j = 0; j <= m; ++j) row[j] = fgn_autocovariance(hurst, j);
  for (int j = m + 1; j < n; ++j) row[j] = row[n - j];

  Eigen::FFT<double> fft;
  Eigen::VectorXcd spectrum(n);
  fft.fwd(spectrum, row);

  const double gamma0 = fgn_autocovariance(hurst, 0);
  const double clamp_tol = 1e-9 * gamma0;
  Eigen::VectorXd eigenvalues(n);
  for (int k = 0; k < n; ++k) {
    double lambda = spectrum[k].real();
    if (lambda < 0.0) {
      if (lambda < -clamp_tol) {
        raise(ErrorCode::negative_eigenvalue,
              "circulant embedding eigenvalue " + std::to_string(lambda) +
                  " at index " + std::to_string(k));
      }
      lambda = 0.0;
    }
    eigenvalues[k] = lambda;
  }
  return eigenvalues;
}

std::array<FbmPath, 2> sample_fbm_circulant_pair(HurstIndex hurst,
                                                 const GridSpec& grid,
                                                 std::uint64_t seed) {
  const int m = grid.points;
  const int n = 2 * m;
  const Eigen::VectorXd lambda = circulant_eigenvalues(hurst, m);

  // Synthesis: w = ifft(sqrt(lambda) .* (a + ib)) with a, b iid N(0,1);
  // sqrt(n) * Re(w) and sqrt(n) * Im(w) are independent fGn vectors whose
  // first m entries carry the exact covariance gamma_H.
  Rng rng(seed);
  Eigen::VectorXcd spectral(n);
  for (int k = 0; k < n; ++k) {
    const double scale = std::sqrt(lambda[k]);
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    spectral[k] = std::complex<double>(scale * re, scale * im);
  }

  Eigen::FFT<double> fft;
  Eigen::VectorXcd synth(n);
  fft.inv(synth, spectral);

  const double root_n = std::sqrt(static_cast<double>(n));
  Eigen::VectorXd fgn_a(m), fgn_b(m);
  for (int j = 0; j < m; ++j) {
    fgn_a[j] = root_n * synth[j].real();
    fgn_b[j] = root_n * synth[j].imag();
  }

  return {accumulate_and_scale(hurst, grid, fgn_a),
          accumulate_and_scale(hurst, grid, fgn_b)};
}

FbmPath sample_fbm_circulant(HurstIndex hurst, const GridSpec& grid,
                             std::uint64_t seed) {
  return sample_fbm_circulant_pair(hurst, grid, seed)[0];
}

FbmPath sample_fbm_cholesky(HurstIndex hurst, const GridSpec& grid,
                            std::uint64_t seed, int oracle_cap) {
  const int m = grid.points;
  if (m > oracle_cap) {
    raise(ErrorCode::oracle_too_large,
          "cholesky oracle capped at " + std::to_string(oracle_cap) +
              " increments, requested " + std::to_string(m));
  }

  Eigen::MatrixXd covariance(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double gamma = fgn_autocovariance(hurst, i - j);
      covariance(i, j) = gamma;
      covariance(j, i) = gamma;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    raise(ErrorCode::factorization_failed,
          "fGn covariance is not numerically positive definite at m = " +
              std::to_string(m));
  }

  Rng rng(seed);
  Eigen::VectorXd z(m);
  for (int i = 0; i < m; ++i) z[i] = rng.gaussian();
  const Eigen::VectorXd unit_fgn = llt.matrixL() * z;

  return accumulate_and_scale(hurst, grid, unit_fgn);
}

}  // namespace fgd
