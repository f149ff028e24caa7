#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <unsupported/Eigen/FFT>

#include "fgd/fgn.hpp"
#include "support.hpp"

using namespace fgd;

TEST_CASE("fgn autocovariance spot values") {
  CHECK(fgn_autocovariance(HurstIndex(0.75), 0) == doctest::Approx(1.0));
  CHECK(fgn_autocovariance(HurstIndex(0.5), 1) == doctest::Approx(0.0));
  // 0.5 * (2^{1.5} - 2) = sqrt(2) - 1
  CHECK(fgn_autocovariance(HurstIndex(0.75), 1) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  CHECK(fgn_autocovariance(HurstIndex(0.62), -3) ==
        fgn_autocovariance(HurstIndex(0.62), 3));
}

TEST_CASE("fgn autocovariance sign pattern over lags") {
  for (long lag = 1; lag <= 100; ++lag) {
    CHECK(fgn_autocovariance(HurstIndex(0.75), lag) > 0.0);
    CHECK(fgn_autocovariance(HurstIndex(0.3), lag) < 0.0);
  }
}

TEST_CASE("circulant eigenvalues: Brownian case is the identity") {
  const Eigen::VectorXd lambda = circulant_eigenvalues(HurstIndex(0.5), 4);
  REQUIRE(lambda.size() == 8);
  for (int k = 0; k < 8; ++k) CHECK(lambda[k] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("circulant eigenvalues match a dense eigendecomposition") {
  // 4x4 circulant from gamma(0), gamma(1), gamma(2), gamma(1) at H = 0.75
  const HurstIndex h(0.75);
  const int m = 2;
  Eigen::VectorXd row(2 * m);
  row << fgn_autocovariance(h, 0), fgn_autocovariance(h, 1),
      fgn_autocovariance(h, 2), fgn_autocovariance(h, 1);
  Eigen::MatrixXd circulant(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) circulant(i, j) = row[(j - i + 4) % 4];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(circulant);
  Eigen::VectorXd dense = solver.eigenvalues();

  Eigen::VectorXd fft = circulant_eigenvalues(h, m);
  REQUIRE(fft.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(fft[k] >= 0.0);
  std::sort(fft.data(), fft.data() + fft.size());
  std::sort(dense.data(), dense.data() + dense.size());
  for (int k = 0; k < 4; ++k) {
    CHECK(fft[k] == doctest::Approx(dense[k]).epsilon(1e-10));
  }
}

TEST_CASE("circulant eigenvalues preserve the trace") {
  const Eigen::VectorXd lambda = circulant_eigenvalues(HurstIndex(0.75), 64);
  CHECK(lambda.sum() == doctest::Approx(128.0).epsilon(1e-9));
}

TEST_CASE("eigenvalue realness: FFT imaginary residue is negligible") {
  const HurstIndex h(0.9);
  const int m = 257;  // odd size exercises the generic FFT path
  Eigen::VectorXcd row(2 * m);
  for (int j = 0; j <= m; ++j) row[j] = fgn_autocovariance(h, j);
  for (int j = m + 1; j < 2 * m; ++j) row[j] = row[2 * m - j];
  Eigen::FFT<double> fft;
  Eigen::VectorXcd spectrum(2 * m);
  fft.fwd(spectrum, row);
  double residue = 0.0;
  for (int k = 0; k < 2 * m; ++k) {
    residue = std::max(residue, std::abs(spectrum[k].imag()));
  }
  CHECK(residue < 1e-9 * fgn_autocovariance(h, 0));
}

TEST_CASE("circulant sampler basic contracts") {
  const HurstIndex h(0.75);
  const GridSpec grid(1.0, 256);
  const FbmPath a = sample_fbm_circulant(h, grid, 42);
  const FbmPath b = sample_fbm_circulant(h, grid, 42);

  CHECK(a.values[0] == 0.0);
  REQUIRE(a.values.size() == 257);
  CHECK(a.values.allFinite());
  // determinism is bit-exact
  for (int k = 0; k <= 256; ++k) CHECK(a.values[k] == b.values[k]);

  const FbmPath c = sample_fbm_circulant(h, grid, 43);
  CHECK(a.values[256] != c.values[256]);
}

TEST_CASE("paired synthesis: first path matches the single-path call") {
  const HurstIndex h(0.65);
  const GridSpec grid(2.0, 64);
  const auto pair = sample_fbm_circulant_pair(h, grid, 7);
  const FbmPath single = sample_fbm_circulant(h, grid, 7);
  for (int k = 0; k <= 64; ++k) {
    CHECK(pair[0].values[k] == single.values[k]);
  }
  // the two halves of one synthesis are distinct draws
  CHECK(pair[0].values[64] != pair[1].values[64]);
}

TEST_CASE("self-similar scaling is exact by construction") {
  const HurstIndex h(0.8);
  const double horizon = 3.7;
  const FbmPath unit = sample_fbm_circulant(h, GridSpec(1.0, 128), 99);
  const FbmPath scaled = sample_fbm_circulant(h, GridSpec(horizon, 128), 99);
  const double factor = std::pow(horizon, h.value());
  for (int k = 0; k <= 128; ++k) {
    CHECK(scaled.values[k] == factor * unit.values[k]);
  }
}

TEST_CASE("terminal variance matches T^{2H}" * doctest::timeout(120)) {
  const HurstIndex h(0.75);
  const GridSpec grid(1.0, 64);
  const int replicates = 10000;
  std::vector<double> terminal(replicates);
  for (int r = 0; r < replicates; ++r) {
    terminal[r] = sample_fbm_circulant(h, grid, 1000 + r).values[64];
  }
  const double mean = testsupport::sample_mean(terminal);
  double var = 0.0;
  for (double t : terminal) var += (t - mean) * (t - mean);
  var /= replicates - 1;
  // sample variance of a Gaussian: SE ~ var * sqrt(2/(R-1))
  const double se = var * std::sqrt(2.0 / (replicates - 1));
  CHECK(std::abs(var - 1.0) < 3.0 * se);
}

TEST_CASE("cholesky oracle: contracts and Brownian increments") {
  const GridSpec grid(1.0, 16);
  const FbmPath a = sample_fbm_cholesky(HurstIndex(0.5), grid, 5);
  const FbmPath b = sample_fbm_cholesky(HurstIndex(0.5), grid, 5);
  CHECK(a.values[0] == 0.0);
  for (int k = 0; k <= 16; ++k) CHECK(a.values[k] == b.values[k]);

  // Increment covariance is stationary, so pool each lag across positions:
  // per-replicate lag statistic, then mean +/- SE over replicates.
  const int m = 16;
  const int replicates = 10000;
  const double spacing = 1.0 / m;
  std::vector<std::vector<double>> by_lag(m);
  for (int r = 0; r < replicates; ++r) {
    const FbmPath path = sample_fbm_cholesky(HurstIndex(0.5), grid, 100 + r);
    Eigen::VectorXd inc(m);
    for (int k = 0; k < m; ++k) inc[k] = path.values[k + 1] - path.values[k];
    for (int lag = 0; lag < m; ++lag) {
      double acc = 0.0;
      for (int k = 0; k + lag < m; ++k) acc += inc[k] * inc[k + lag];
      by_lag[lag].push_back(acc / (m - lag));
    }
  }
  for (int lag = 0; lag < m; ++lag) {
    const double target = lag == 0 ? spacing : 0.0;
    const double mean = testsupport::sample_mean(by_lag[lag]);
    const double se = testsupport::standard_error(by_lag[lag]);
    CHECK(std::abs(mean - target) < 3.0 * se);
  }
}

TEST_CASE("cholesky oracle matches the analytic fBm covariance" *
          doctest::timeout(120)) {
  const HurstIndex h(0.75);
  const GridSpec grid(1.0, 32);
  const auto moments = testsupport::increment_moments(
      [&](std::uint64_t seed) { return sample_fbm_cholesky(h, grid, seed); },
      32, 10000, 77);
  const Eigen::MatrixXd target =
      testsupport::increment_covariance(32, 1.0, 0.75);
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      CHECK(std::abs(moments.mean(i, j) - target(i, j)) <
            4.0 * moments.se(i, j) + 1e-12);
    }
  }
}

TEST_CASE("generators agree in law at small size" * doctest::timeout(240)) {
  const HurstIndex h(0.7);
  const GridSpec grid(1.0, 16);
  const int replicates = 10000;
  const auto circulant = testsupport::increment_moments(
      [&](std::uint64_t seed) { return sample_fbm_circulant(h, grid, seed); },
      16, replicates, 10);
  const auto cholesky = testsupport::increment_moments(
      [&](std::uint64_t seed) { return sample_fbm_cholesky(h, grid, seed); },
      16, replicates, 20);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const double se = std::hypot(circulant.se(i, j), cholesky.se(i, j));
      CHECK(std::abs(circulant.mean(i, j) - cholesky.mean(i, j)) <
            5.0 * se + 1e-12);
    }
  }
}

TEST_CASE("cholesky oracle refuses grids beyond its cap") {
  CHECK_THROWS_WITH_AS(
      sample_fbm_cholesky(HurstIndex(0.75), GridSpec(1.0, 2048), 1),
      doctest::Contains("ORACLE_TOO_LARGE"), Error);
}

TEST_CASE("hurst index validation") {
  CHECK_THROWS_AS(HurstIndex(0.0), Error);
  CHECK_THROWS_AS(HurstIndex(1.0), Error);
  CHECK_THROWS_AS(HurstIndex(1.2), Error);
  CHECK_NOTHROW(HurstIndex(0.999));
}
