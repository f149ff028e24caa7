#pragma once

#include <Eigen/Core>

#include "fgd/types.hpp"

namespace fgd {

/// Increment sequence of order 1 or 2:
///   order 1: X_k - X_{k-1},            k = 1..m   (length m)
///   order 2: X_{k+1} - 2 X_k + X_{k-1}, k = 1..m-1 (length m-1)
struct IncrementSeq {
  int order;
  GridSpec grid;
  Eigen::VectorXd values;
};

Eigen::VectorXd delta(const Eigen::Ref<const Eigen::VectorXd>& values,
                      int order);
IncrementSeq delta(const ProcessPath& path, int order);
IncrementSeq delta(const FbmPath& path, int order);

/// Normalized quadratic variation
///   V^{(i)}_{m,T} = sum_k (Delta^{(i)} X_k / X_{k-1})^2,  k = 1..m-(i-1).
double normalized_variation(const ProcessPath& path, int order);

/// Localized second-difference energy on the fine grid (m = n * k_n):
///   W_{n,k} = sum_{j=-k_n+1}^{k_n-1} (Delta^{(2)} X at fine node j + k k_n)^2,
/// valid for 1 <= k <= n-1.
double w_statistic(const Eigen::Ref<const Eigen::VectorXd>& fine_values, int n,
                   int k);
double w_statistic(const ProcessPath& fine_path, int n, int k);

/// Mean of |a+b| / (|a|+|b|) over consecutive second-difference pairs
/// (N-2 pairs on an N-increment path). Pairs with |a|+|b| = 0 contribute 1,
/// so the result is always in [0, 1].
double ratio_statistic(const Eigen::Ref<const Eigen::VectorXd>& values);
double ratio_statistic(const ProcessPath& path);

/// Normalized fBm variation
///   (n^{2H-1} / c_i) sum_{k=1}^{n-1} (T^{-H} Delta^{(i)} B^H(t_k))^2,
/// with c_1 = 1 and c_2 = 4 - 2^{2H}; requires H != 1/2. Tends to 1 a.s.
double fbm_normalized_variation(const FbmPath& path, int order);

/// Supremum deviation of the running normalized second variation from its
/// limit ramp: max_{k=2..n-1} |S_k - kT/n| with
///   S_k = n^{2H-1} / (T^{2H-1} (4 - 2^{2H})) * sum_{j<=k} (Delta^{(2)} B_j)^2.
double sup_deviation(const FbmPath& path);

}  // namespace fgd
