#include "fgd/theory.hpp"

#include <cassert>
#include <cmath>

#include "fgd/accum.hpp"
#include "fgd/fgn.hpp"
#include "fgd/rng.hpp"

namespace fgd {

namespace {

double pow_abs(double x, double exponent) {
  return std::pow(std::abs(x), exponent);
}

// Number of consecutive below-tolerance terms required before a tail is
// declared negligible. The series here are not strictly monotone term-wise.
constexpr int kQuietRun = 8;

/// Sums f(j) for j = start, start + 1, ... until a quiet run or the cap.
template <typename TermFn>
double sum_forward(const SeriesPolicy& policy, long start, TermFn&& term) {
  KahanSum sum;
  int quiet = 0;
  for (long j = start, used = 0; used < policy.max_terms; ++j, ++used) {
    const double t = term(j);
    sum.add(t);
    quiet = std::abs(t) < policy.tolerance ? quiet + 1 : 0;
    if (quiet >= kQuietRun) break;
  }
  return sum.value();
}

/// Two-sided sum over j in Z expanding outward from a center index.
template <typename TermFn>
double sum_two_sided(const SeriesPolicy& policy, long center, TermFn&& term) {
  KahanSum sum;
  sum.add(term(center));
  long used = 1;
  for (int side = 0; side < 2; ++side) {
    const long step = side == 0 ? 1 : -1;
    int quiet = 0;
    for (long j = center + step; used < policy.max_terms; j += step, ++used) {
      const double t = term(j);
      sum.add(t);
      quiet = std::abs(t) < policy.tolerance ? quiet + 1 : 0;
      if (quiet >= kQuietRun) break;
    }
  }
  return sum.value();
}

}  // namespace

double rho_first(long j, HurstIndex hurst) {
  return fgn_autocovariance(hurst, j);
}

double rho_second(long j, HurstIndex hurst) {
  const double two_h = hurst.two_h();
  const double x = static_cast<double>(j);
  const double numerator =
      -6.0 * pow_abs(x, two_h) -
      (pow_abs(x - 2.0, two_h) + pow_abs(x + 2.0, two_h)) +
      4.0 * (pow_abs(x - 1.0, two_h) + pow_abs(x + 1.0, two_h));
  return numerator / (2.0 * (4.0 - std::pow(2.0, two_h)));
}

double rho_tilde(long j, HurstIndex hurst) {
  const double two_h = hurst.two_h();
  const double x = static_cast<double>(j);
  const double numerator =
      -pow_abs(x - 2.0, two_h) + 2.0 * pow_abs(x - 1.0, two_h) +
      pow_abs(x, two_h) - 4.0 * pow_abs(x + 1.0, two_h) +
      pow_abs(x + 2.0, two_h) + 2.0 * pow_abs(x + 3.0, two_h) -
      pow_abs(x + 4.0, two_h);
  return numerator /
         (2.0 * (4.0 - std::pow(2.0, two_h)) * std::pow(2.0, hurst.value()));
}

double sigma_sq(HurstIndex hurst, const SeriesPolicy& policy) {
  const double tail = sum_forward(policy, 1, [&](long j) {
    const double rho = rho_second(j, hurst);
    return rho * rho;
  });
  return 2.0 * (1.0 + 2.0 * tail);
}

double sigma_star_first(HurstIndex hurst, const SeriesPolicy& policy) {
  if (hurst.value() >= 0.75) {
    raise(ErrorCode::invalid_h,
          "sigma_star series diverges for H >= 3/4, got " +
              std::to_string(hurst.value()));
  }
  const double tail = sum_forward(policy, 1, [&](long j) {
    const double rho = rho_first(j, hurst);
    return rho * rho;
  });
  return 2.0 * (1.0 + 2.0 * tail);
}

double sigma12(HurstIndex hurst, const SeriesPolicy& policy) {
  return sum_two_sided(policy, 0, [&](long j) {
    const double rho = rho_tilde(j, hurst);
    return rho * rho;
  });
}

double limit_var_h1(HurstIndex hurst, const SeriesPolicy& policy) {
  return 1.5 * sigma_sq(hurst, policy) - 2.0 * sigma12(hurst, policy);
}

double rho_bc(long x, int b, int c, HurstIndex hurst) {
  const double two_h = hurst.two_h();
  const double v = static_cast<double>(x);
  const double bb = static_cast<double>(b);
  const double cc = static_cast<double>(c);
  const double bracket =
      -pow_abs(v, two_h) + 2.0 * pow_abs(v - bb, two_h) -
      pow_abs(v - 2.0 * bb, two_h) + 2.0 * pow_abs(v + cc, two_h) -
      4.0 * pow_abs(v + cc - bb, two_h) +
      2.0 * pow_abs(v + cc - 2.0 * bb, two_h) -
      pow_abs(v + 2.0 * cc, two_h) + 2.0 * pow_abs(v + 2.0 * cc - bb, two_h) -
      pow_abs(v + 2.0 * cc - 2.0 * bb, two_h);
  return bracket * std::pow(bb * cc, -hurst.value()) /
         (2.0 * (4.0 - std::pow(2.0, two_h)));
}

double c_coefficient(int p) {
  if (p < 1) raise(ErrorCode::invalid_params, "c coefficient needs p >= 1");
  double product = 1.0;
  for (int i = 0; i < p; ++i) product *= 2.0 - 2.0 * i;
  double factorial = 1.0;
  for (int i = 2; i <= 2 * p; ++i) factorial *= i;
  return product / factorial;
}

double rho2(int k_i, int k_j, HurstIndex hurst, const SeriesPolicy& policy) {
  if (k_i < 1 || k_j < 1) {
    raise(ErrorCode::invalid_params, "rho2 grid factors must be positive");
  }
  // The p >= 2 terms of the defining series vanish identically.
  assert(c_coefficient(2) == 0.0);

  KahanSum outer;
  for (int s = 0; s < k_i; ++s) {
    // rho_{k_i,k_j}(k_i r + k_j s) peaks where the argument is near zero.
    const long center = std::lround(-static_cast<double>(k_j) * s / k_i);
    outer.add(sum_two_sided(policy, center, [&](long r) {
      const double rho =
          rho_bc(static_cast<long>(k_i) * r + static_cast<long>(k_j) * s, k_i,
                 k_j, hurst);
      return rho * rho;
    }));
  }
  return 2.0 / std::sqrt(static_cast<double>(k_i) * k_j) * outer.value();
}

double sigma2_l(const std::vector<int>& k, const Eigen::VectorXd& d,
                HurstIndex hurst, const SeriesPolicy& policy) {
  if (static_cast<Eigen::Index>(k.size()) != d.size()) {
    raise(ErrorCode::invalid_params, "sigma2_l needs matching k and d sizes");
  }
  KahanSum sum;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = 0; j < k.size(); ++j) {
      sum.add(d[static_cast<Eigen::Index>(i)] *
              d[static_cast<Eigen::Index>(j)] *
              rho2(k[i], k[j], hurst, policy));
    }
  }
  return sum.value();
}

double lambda2_affine(double h) { return 0.5174 + 0.1468 * h; }

double lambda2_mc_corr(double correlation, long replicates,
                       std::uint64_t seed) {
  if (replicates < 1) {
    raise(ErrorCode::invalid_params, "lambda2_mc needs replicates >= 1");
  }
  if (!(correlation >= -1.0 && correlation <= 1.0)) {
    raise(ErrorCode::invalid_params, "correlation outside [-1,1]");
  }
  const double cross = std::sqrt(
      std::max(0.0, 1.0 - correlation * correlation));
  Rng rng(seed);
  KahanSum sum;
  for (long i = 0; i < replicates; ++i) {
    const double z1 = rng.gaussian();
    const double z2 = correlation * z1 + cross * rng.gaussian();
    const double denom = std::abs(z1) + std::abs(z2);
    sum.add(denom == 0.0 ? 1.0 : std::abs(z1 + z2) / denom);
  }
  return sum.value() / static_cast<double>(replicates);
}

double lambda2_mc(HurstIndex hurst, long replicates, std::uint64_t seed) {
  return lambda2_mc_corr(rho_second(1, hurst), replicates, seed);
}

}  // namespace fgd
