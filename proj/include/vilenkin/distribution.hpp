#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace vilenkin {

/// Distribution function of |f| on a finite probability space: a list of
/// (value, mass) atoms. Enough to evaluate every L_p and weak-L_p quasi-norm.
class Distribution {
 public:
  void add(double value, double mass) { entries_.emplace_back(value, mass); }

  /// |v_i| with mass 1/size each.
  template <typename Derived>
  static Distribution of(const Eigen::DenseBase<Derived>& values) {
    Distribution d;
    const double mass = 1.0 / static_cast<double>(values.size());
    d.entries_.reserve(static_cast<std::size_t>(values.size()));
    for (Eigen::Index j = 0; j < values.cols(); ++j)
      for (Eigen::Index i = 0; i < values.rows(); ++i) d.entries_.emplace_back(std::abs(values(i, j)), mass);
    return d;
  }

  /// (sum mass |v|^p)^{1/p}.
  double lp(double p) const;

  /// sup_{lambda > 0} lambda mu(|f| > lambda)^{1/p}. On a finite space the sup
  /// is approached as lambda rises to each attained value v, where
  /// mu(|f| > lambda) -> mu(|f| >= v).
  double weak_lp(double p) const;

  double sup() const;
  double total_mass() const;
  const std::vector<std::pair<double, double>>& entries() const noexcept { return entries_; }

 private:
  std::vector<std::pair<double, double>> entries_;
};

}  // namespace vilenkin
