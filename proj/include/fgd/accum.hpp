#pragma once

#include <Eigen/Core>

namespace fgd {

/// Kahan-Neumaier compensated accumulator. Variation sums feed 1e-12-level
/// algebraic identities, so plain summation is not good enough.
class KahanSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(const Eigen::Ref<const Eigen::VectorXd>& v) {
  KahanSum acc;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc.add(v[i]);
  return acc.value();
}

}  // namespace fgd
