#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fgd/fgn.hpp"
#include "fgd/gompertz.hpp"
#include "support.hpp"

using namespace fgd;

namespace {

FbmPath zero_fbm(HurstIndex hurst, double horizon, int m) {
  return FbmPath{GridSpec(horizon, m), hurst, Eigen::VectorXd::Zero(m + 1)};
}

double deterministic_gompertz(double t, double x0, double alpha, double beta) {
  const double relax = std::exp(-beta * t);
  return std::exp(relax * std::log(x0) + alpha / beta * (1.0 - relax));
}

}  // namespace

TEST_CASE("volterra integral boundary and beta = 0 cases") {
  const FbmPath fbm = sample_fbm_circulant(HurstIndex(0.75), GridSpec(1.0, 64), 3);
  CHECK(volterra_integral(2.0, fbm, 0) == 0.0);

  const Eigen::VectorXd at_zero_beta = volterra_integrals(0.0, fbm);
  for (int k = 0; k <= 64; ++k) {
    CHECK(at_zero_beta[k] == fbm.values[k]);
  }
}

TEST_CASE("volterra integral agrees with the Riemann-Stieltjes oracle" *
          doctest::timeout(60)) {
  const int m = 1 << 14;
  const FbmPath fbm =
      sample_fbm_circulant(HurstIndex(0.75), GridSpec(1.0, m), 2024);
  const double chain_rule = volterra_integral(2.0, fbm, m);
  const double oracle = testsupport::volterra_riemann_stieltjes(2.0, fbm, m);
  CHECK(std::abs(chain_rule - oracle) < 1e-2);
}

TEST_CASE("volterra evaluators converge to each other under refinement" *
          doctest::timeout(60)) {
  // log-log slope of |chain - RS| vs spacing should be at least H - 0.1
  const double h = 0.75;
  const int finest = 1 << 14;
  const FbmPath fine =
      sample_fbm_circulant(HurstIndex(h), GridSpec(1.0, finest), 515);
  std::vector<double> log_d, log_err;
  for (int m = 1 << 10; m <= finest; m *= 2) {
    const FbmPath sub = subsample(fine, m);
    const double chain = volterra_integral(2.0, sub, m);
    const double oracle = testsupport::volterra_riemann_stieltjes(2.0, sub, m);
    log_d.push_back(std::log(1.0 / m));
    log_err.push_back(std::log(std::abs(chain - oracle)));
  }
  double x_mean = testsupport::sample_mean(log_d);
  double y_mean = testsupport::sample_mean(log_err);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_d.size(); ++i) {
    sxx += (log_d[i] - x_mean) * (log_d[i] - x_mean);
    sxy += (log_d[i] - x_mean) * (log_err[i] - y_mean);
  }
  CHECK(sxy / sxx >= h - 0.1);
}

TEST_CASE("explicit solution starts at x0 exactly and stays positive") {
  const HurstIndex h(0.75);
  const GompertzParams params(3.0, 0.5, 2.0, 1.5, h, 1.0);
  const FbmPath fbm = sample_fbm_circulant(h, GridSpec(1.0, 512), 11);
  const ProcessPath path = solve_explicit(params, fbm);
  CHECK(path.values[0] == 3.0);
  for (int k = 0; k <= 512; ++k) CHECK(path.values[k] > 0.0);
}

TEST_CASE("sigma = 0 reproduces the deterministic Gompertz curve") {
  const HurstIndex h(0.75);
  const GompertzParams params(3.0, 0.5, 2.0, 0.0, h, 1.0);
  const FbmPath fbm = zero_fbm(h, 1.0, 256);
  const ProcessPath path = solve_explicit(params, fbm);
  for (int k = 0; k <= 256; ++k) {
    const double expected =
        deterministic_gompertz(path.grid.node(k), 3.0, 0.5, 2.0);
    CHECK(path.values[k] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("deterministic curve approaches exp(alpha/beta) at long horizons") {
  const HurstIndex h(0.75);
  const GompertzParams params(3.0, 0.5, 2.0, 0.0, h, 10.0);
  const ProcessPath path = solve_explicit(params, zero_fbm(h, 10.0, 1024));
  CHECK(path.values[1024] == doctest::Approx(std::exp(0.25)).epsilon(1e-6));
}

TEST_CASE("x0 at the drift fixed point gives a constant path") {
  const HurstIndex h(0.6);
  const double x0 = std::exp(0.5 / 2.0);
  const GompertzParams params(x0, 0.5, 2.0, 0.0, h, 1.0);
  const ProcessPath path = solve_explicit(params, zero_fbm(h, 1.0, 128));
  for (int k = 0; k <= 128; ++k) {
    CHECK(path.values[k] == doctest::Approx(x0).epsilon(1e-12));
  }
}

TEST_CASE("euler: ln 1 kills the drift at alpha = 0") {
  const HurstIndex h(0.75);
  const GompertzParams params(1.0, 0.0, 2.0, 0.0, h, 1.0);
  const ProcessPath path = euler_path(params, zero_fbm(h, 1.0, 1));
  CHECK(path.values[1] == 1.0);
}

TEST_CASE("euler matches the explicit solution on the deterministic ODE" *
          doctest::timeout(60)) {
  const HurstIndex h(0.75);
  const int m = 1 << 16;
  const GompertzParams params(3.0, 0.5, 2.0, 0.0, h, 1.0);
  const FbmPath fbm = zero_fbm(h, 1.0, m);
  const double euler_terminal = euler_path(params, fbm).values[m];
  const double exact_terminal = solve_explicit(params, fbm).values[m];
  CHECK(std::abs(euler_terminal - exact_terminal) / exact_terminal < 1e-3);
}

TEST_CASE("euler cross-checks the explicit solution on one noisy path" *
          doctest::timeout(120)) {
  const HurstIndex h(0.75);
  const int m = 1 << 16;
  const GompertzParams params(3.0, 0.5, 2.0, 1.5, h, 1.0);
  const FbmPath fbm = sample_fbm_circulant(h, GridSpec(1.0, m), 909);
  const double euler_terminal = euler_path(params, fbm).values[m];
  const double exact_terminal = solve_explicit(params, fbm).values[m];
  CHECK(std::abs(euler_terminal - exact_terminal) / exact_terminal < 5e-2);
}

TEST_CASE("euler reports nonpositive states on coarse noisy grids") {
  const HurstIndex h(0.75);
  const GompertzParams params(3.0, 0.5, 2.0, 50.0, h, 1.0);
  bool threw = false;
  for (std::uint64_t seed = 0; seed < 16 && !threw; ++seed) {
    try {
      euler_path(params, sample_fbm_circulant(h, GridSpec(1.0, 4), seed));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::nonpositive_state);
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("explicit solution flags representable-range overflow") {
  const HurstIndex h(0.75);
  const GompertzParams params(3.0, 5000.0, 1.0, 0.0, h, 1.0);
  CHECK_THROWS_WITH_AS(solve_explicit(params, zero_fbm(h, 1.0, 16)),
                       doctest::Contains("OVERFLOW"), Error);
}

TEST_CASE("grid and hurst mismatches are rejected") {
  const GompertzParams params(3.0, 0.5, 2.0, 1.5, HurstIndex(0.75), 1.0);
  CHECK_THROWS_WITH_AS(solve_explicit(params, zero_fbm(HurstIndex(0.6), 1.0, 8)),
                       doctest::Contains("GRID_MISMATCH"), Error);
  CHECK_THROWS_WITH_AS(
      solve_explicit(params, zero_fbm(HurstIndex(0.75), 2.0, 8)),
      doctest::Contains("GRID_MISMATCH"), Error);
}

TEST_CASE("subsample keeps every stride-th node") {
  const HurstIndex h(0.75);
  const FbmPath fbm = sample_fbm_circulant(h, GridSpec(1.0, 8), 21);

  const FbmPath identity = subsample(fbm, 8);
  for (int k = 0; k <= 8; ++k) CHECK(identity.values[k] == fbm.values[k]);

  const FbmPath coarse = subsample(fbm, 2);
  CHECK(coarse.grid.points == 2);
  CHECK(coarse.values[0] == fbm.values[0]);
  CHECK(coarse.values[1] == fbm.values[4]);
  CHECK(coarse.values[2] == fbm.values[8]);

  const FbmPath twice = subsample(subsample(fbm, 4), 2);
  for (int k = 0; k <= 2; ++k) CHECK(twice.values[k] == coarse.values[k]);

  CHECK_THROWS_WITH_AS(subsample(fbm, 3), doctest::Contains("NOT_A_DIVISOR"),
                       Error);
}

TEST_CASE("gompertz params validation") {
  const HurstIndex h(0.75);
  CHECK_THROWS_AS(GompertzParams(-1.0, 0.5, 2.0, 1.5, h, 1.0), Error);
  CHECK_THROWS_AS(GompertzParams(3.0, 0.5, 0.0, 1.5, h, 1.0), Error);
  CHECK_THROWS_AS(GompertzParams(3.0, 0.5, 2.0, -0.5, h, 1.0), Error);
  CHECK_NOTHROW(GompertzParams(3.0, 0.5, -2.0, 0.0, h, 1.0));
}
