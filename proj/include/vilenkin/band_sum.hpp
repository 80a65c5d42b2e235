#pragma once

// Finite sums of tensor products of Dirichlet bands,
//
//   f(x, y) = sum_r w_r (D_{b_r} - D_{a_r})(x) (D_{d_r} - D_{c_r})(y),
//
// i.e. functions whose spectrum is a weighted union of index rectangles. Every
// counterexample family is of this form, and S_{m,n} acts on it by clipping the
// bands, so partial sums and their distributions are available without dense
// two-dimensional transforms.

#include <span>
#include <vector>

#include "vilenkin/distribution.hpp"
#include "vilenkin/grid.hpp"
#include "vilenkin/kernels.hpp"

namespace vilenkin {

/// D_hi - D_lo = sum_{lo <= i < hi} psi_i.
struct DirichletBand {
  Index lo = 0;
  Index hi = 0;

  bool empty() const noexcept { return hi <= lo; }
  /// The band after S_m: indices below m survive.
  DirichletBand truncated(Index m) const noexcept;
};

struct BandProduct {
  double weight = 0.0;
  DirichletBand x;
  DirichletBand y;
};

class BandSum {
 public:
  BandSum(Base base, int depth);

  const Base& base() const noexcept { return base_; }
  int depth() const noexcept { return depth_; }
  const std::vector<BandProduct>& terms() const noexcept { return terms_; }

  void add(double weight, DirichletBand x, DirichletBand y);

  /// S_{m,n} of this function; empty terms are dropped.
  BandSum truncated(Index m, Index n) const;

  GridFunction2D materialize(const KernelCache& cache) const;
  Spectrum2D spectrum() const;
  Distribution distribution(const KernelCache& cache) const;

 private:
  Base base_;
  int depth_;
  std::vector<BandProduct> terms_;
};

/// Column r holds band r sampled on the cache grid.
Eigen::MatrixXcd band_factors(std::span<const DirichletBand> bands, const KernelCache& cache);

/// Rows of a factor matrix grouped by value (to a relative 1e-12 quantum), with
/// the Haar mass of each group.
struct FactorClasses {
  Eigen::MatrixXcd rows;
  std::vector<double> mass;
};

FactorClasses compress_rows(const Eigen::MatrixXcd& factors);

/// Distribution of |sum_r w_r u_r(x) v_r(y)| from the grouped left and right factors.
Distribution combine(const FactorClasses& left, std::span<const double> weights, const FactorClasses& right);

}  // namespace vilenkin
