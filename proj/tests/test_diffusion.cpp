#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fgd/diffusion.hpp"
#include "fgd/fgn.hpp"
#include "fgd/gompertz.hpp"
#include "support.hpp"

using namespace fgd;

namespace {

ProcessPath path_from(std::initializer_list<double> values, double horizon = 1.0) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return make_process_path(GridSpec(horizon, static_cast<int>(values.size()) - 1),
                           std::nullopt, std::move(v));
}

ProcessPath spike_path(int n, double a) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n + 1);
  v[n] += a;
  return make_process_path(GridSpec(1.0, n), std::nullopt, std::move(v));
}

ProcessPath simulate(double sigma, double h, int m, std::uint64_t seed) {
  const GompertzParams params(3.0, 0.5, 2.0, sigma, HurstIndex(h), 1.0);
  return solve_explicit(
      params, sample_fbm_circulant(params.hurst, GridSpec(1.0, m), seed));
}

}  // namespace

TEST_CASE("sigma2_1 hand value: unit variation, unit prefactor") {
  const ProcessPath p = path_from({1.0, 2.0});
  CHECK(sigma2_1(p, 0.75) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sigma estimators vanish on constant paths") {
  const ProcessPath flat = path_from({2.0, 2.0, 2.0, 2.0});
  CHECK(sigma2_1(flat, 0.7) == 0.0);
  CHECK(sigma2_2(flat, 0.7) == 0.0);
  CHECK(sigma2_3(flat, 0.7) == 0.0);
}

TEST_CASE("sigma2_2 inverts an engineered variation exactly") {
  for (double h : {0.6, 0.75, 0.9}) {
    const double sigma_sq_true = 2.25;
    const int n = 2;
    const double horizon = 1.0;
    const double c2 = 4.0 - std::pow(2.0, 2.0 * h);
    const double v_target = c2 * sigma_sq_true * std::pow(horizon, 2.0 * h) *
                            std::pow(static_cast<double>(n), 1.0 - 2.0 * h);
    const ProcessPath p = spike_path(n, std::sqrt(v_target));
    CHECK(sigma2_2(p, h) ==
          doctest::Approx(sigma_sq_true).epsilon(1e-12));
  }
}

TEST_CASE("sigma2_3 hand value") {
  const ProcessPath p = path_from({1.0, 2.0, 1.0});
  CHECK(sigma2_3(p, 0.5) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("sigma estimators reject out-of-range Hurst plug-ins") {
  const ProcessPath p = path_from({1.0, 2.0, 1.0});
  for (double bad : {-0.1, 0.0, 1.0, 1.3}) {
    CHECK_THROWS_WITH_AS(sigma2_1(p, bad), doctest::Contains("INVALID_H"), Error);
    CHECK_THROWS_WITH_AS(sigma2_2(p, bad), doctest::Contains("INVALID_H"), Error);
    CHECK_THROWS_WITH_AS(sigma2_3(p, bad), doctest::Contains("INVALID_H"), Error);
  }
}

TEST_CASE("plug-in sensitivity of sigma2_1 is exactly (n/T)^{2 delta}") {
  const ProcessPath p = simulate(1.5, 0.75, 256, 4);
  const double delta = 0.07;
  const double base = sigma2_1(p, 0.6);
  const double shifted = sigma2_1(p, 0.6 + delta);
  const double factor = std::pow(256.0 / 1.0, 2.0 * delta);
  CHECK(shifted / base == doctest::Approx(factor).epsilon(1e-12));
}

TEST_CASE("nonnegativity on random paths") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ProcessPath p = simulate(1.5, 0.75, 128, 40 + seed);
    CHECK(sigma2_1(p, 0.75) >= 0.0);
    CHECK(sigma2_2(p, 0.75) >= 0.0);
    CHECK(sigma2_3(p, 0.75) >= 0.0);
  }
}

TEST_CASE("sigma4 collapses exactly on power-law variations") {
  const double h = 0.75;
  const double c = 0.4;
  const RatioSchedule schedule({1, 2, 4, 8}, 64);
  std::vector<ProcessPath> paths;
  for (int size : schedule.grid_sizes()) {
    paths.push_back(
        spike_path(size, c * std::pow(size, -h) * std::sqrt(size - 1.0)));
  }
  const double expected = c / (4.0 - std::pow(2.0, 2.0 * h));
  CHECK(sigma4(paths, schedule, h) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sigma4 rejects Hurst plug-ins at or above 1") {
  const RatioSchedule schedule({1, 2}, 8);
  std::vector<ProcessPath> paths{spike_path(8, 0.1), spike_path(4, 0.1)};
  CHECK_THROWS_WITH_AS(sigma4(paths, schedule, 1.0),
                       doctest::Contains("INVALID_H"), Error);
}

TEST_CASE("sigma2 estimators concentrate with the true index supplied" *
          doctest::timeout(300)) {
  const double sigma = 1.5;
  const int n = 1 << 10;
  std::vector<double> e1, e2, e3;
  for (int r = 0; r < 100; ++r) {
    const ProcessPath p = simulate(sigma, 0.75, n, 21000 + r);
    e1.push_back(sigma2_1(p, 0.75));
    e2.push_back(sigma2_2(p, 0.75));
    e3.push_back(sigma2_3(p, 0.75));
  }
  CHECK(std::abs(testsupport::sample_mean(e1) - 2.25) < 0.15);
  CHECK(std::abs(testsupport::sample_mean(e2) - 2.25) < 0.15);
  CHECK(std::abs(testsupport::sample_mean(e3) - 2.25) < 0.15);
}

TEST_CASE("errors shrink as the grid doubles (true H supplied)" *
          doctest::timeout(300)) {
  const double sigma = 1.5;
  const double sigma_sq = sigma * sigma;
  const std::vector<int> grids{256, 512, 1024, 2048, 4096, 8192};
  const int replicates = 60;

  std::vector<std::vector<double>> abs_err(grids.size());
  for (int r = 0; r < replicates; ++r) {
    const ProcessPath fine = simulate(sigma, 0.75, grids.back(), 52000 + r);
    for (std::size_t g = 0; g < grids.size(); ++g) {
      const ProcessPath p = subsample(fine, grids[g]);
      abs_err[g].push_back(std::abs(sigma2_2(p, 0.75) - sigma_sq));
    }
  }
  for (std::size_t g = 0; g + 1 < grids.size(); ++g) {
    const double coarse = testsupport::sample_mean(abs_err[g]);
    const double fine = testsupport::sample_mean(abs_err[g + 1]);
    const double band = 2.0 * std::hypot(testsupport::standard_error(abs_err[g]),
                                         testsupport::standard_error(abs_err[g + 1]));
    CHECK(fine <= coarse + band);
  }
}
