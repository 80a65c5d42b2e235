#pragma once

// Dense sampled functions and coefficient arrays on the depth-N truncation of
// G_m (1-D) and G_m x G_m (2-D). One sample per I_N-cylinder, in mixed-radix
// index order; 2-D arrays are indexed (x, y).

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "vilenkin/error.hpp"
#include "vilenkin/group.hpp"

namespace vilenkin {

using cdouble = std::complex<double>;

namespace tag {
struct Samples {};
struct Coefficients {};
}  // namespace tag

template <typename Scalar, typename Domain>
class Dense1 {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Dense1(Base base, int depth) : base_(std::move(base)), depth_(depth) {
    check_depth(base_, depth_);
    values_ = Vector::Zero(base_.product(depth_));
  }
  Dense1(Base base, int depth, Vector values)
      : base_(std::move(base)), depth_(depth), values_(std::move(values)) {
    check_depth(base_, depth_);
    require(values_.size() == base_.product(depth_), ErrorCode::invalid_argument,
            "1-D array has length " + std::to_string(values_.size()) + ", expected M_" +
                std::to_string(depth_) + " = " + std::to_string(base_.product(depth_)));
  }

  const Base& base() const noexcept { return base_; }
  int depth() const noexcept { return depth_; }
  Index size() const noexcept { return values_.size(); }
  const Vector& values() const noexcept { return values_; }
  Vector& values() noexcept { return values_; }
  Scalar operator[](Index i) const { return values_[i]; }
  Scalar& operator[](Index i) { return values_[i]; }

 private:
  Base base_;
  int depth_;
  Vector values_;
};

template <typename Scalar, typename Domain>
class Dense2 {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Dense2(Base base, int depth) : base_(std::move(base)), depth_(depth) {
    check_depth(base_, depth_);
    values_ = Matrix::Zero(base_.product(depth_), base_.product(depth_));
  }
  Dense2(Base base, int depth, Matrix values)
      : base_(std::move(base)), depth_(depth), values_(std::move(values)) {
    check_depth(base_, depth_);
    const Index side = base_.product(depth_);
    require(values_.rows() == side && values_.cols() == side, ErrorCode::invalid_argument,
            "2-D array has shape " + std::to_string(values_.rows()) + "x" + std::to_string(values_.cols()) +
                ", expected " + std::to_string(side) + "x" + std::to_string(side));
  }

  const Base& base() const noexcept { return base_; }
  int depth() const noexcept { return depth_; }
  /// M_N, the number of samples along each axis.
  Index side() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }
  Matrix& values() noexcept { return values_; }
  Scalar operator()(Index x, Index y) const { return values_(x, y); }
  Scalar& operator()(Index x, Index y) { return values_(x, y); }

 private:
  Base base_;
  int depth_;
  Matrix values_;
};

using GridFunction1D = Dense1<cdouble, tag::Samples>;
using RealGrid1D = Dense1<double, tag::Samples>;
using Spectrum1D = Dense1<cdouble, tag::Coefficients>;
using GridFunction2D = Dense2<cdouble, tag::Samples>;
using RealGrid2D = Dense2<double, tag::Samples>;
using Spectrum2D = Dense2<cdouble, tag::Coefficients>;

template <typename A, typename B>
void check_same_grid(const A& a, const B& b) {
  require(a.base() == b.base() && a.depth() == b.depth(), ErrorCode::base_mismatch,
          "arrays live on different truncated groups");
}

/// Tensor product f(x) g(y).
inline GridFunction2D tensor(const GridFunction1D& f, const GridFunction1D& g) {
  check_same_grid(f, g);
  return GridFunction2D(f.base(), f.depth(), f.values() * g.values().transpose());
}

}  // namespace vilenkin
