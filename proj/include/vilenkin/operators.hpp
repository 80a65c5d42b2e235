#pragma once

// Rectangular partial sums S_{m,n}, the conditional expectations E_n (block
// averages over I_n x I_n) and the two maximal operators built from them.

#include <functional>
#include <utility>

#include "vilenkin/grid.hpp"

namespace vilenkin {

enum class PartialSumMethod { spectral, convolution };

/// S_m f in one dimension: keeps coefficients i < m. 0 <= m <= M_N.
GridFunction1D partial_sum(const GridFunction1D& f, Index m);

/// S_{m,n} f: keeps coefficients (i, j) with i < m and j < n. 0 <= m, n <= M_N.
///   spectral:    truncate the spectrum and synthesize.
///   convolution: (1/M_N^2) sum_{t,s} f(t, s) D_m(x - t) D_n(y - s), applied one
///                axis at a time.
GridFunction2D partial_sum(const GridFunction2D& f, Index m, Index n,
                           PartialSumMethod method = PartialSumMethod::spectral);

/// Synthesis of the (m, n) truncation of a spectrum.
GridFunction2D partial_sum(const Spectrum2D& s, Index m, Index n);

/// E_n f: the I_n x I_n block average (equal to S_{M_n, M_n} f). 0 <= n <= N.
GridFunction2D cond_expectation(const GridFunction2D& f, int n);

/// The cone 2^{-alpha} <= k/l <= 2^{alpha}.
struct ConeParams {
  double alpha = 0.0;

  bool contains(Index k, Index l) const;
  /// The l range [lo, hi] in the cone for fixed k >= 1 (hi clipped to l_max).
  std::pair<Index, Index> l_range(Index k, Index l_max) const;
};

struct WeightedMaximalOptions {
  Index m_max = 0;  // 0 means M_N
  Index n_max = 0;  // 0 means M_N
  /// Divide by (m + n + 1)^{2/p-2} instead of (m + n)^{2/p-2}.
  bool plus_one = false;
};

/// sup_{1<=m<=m_max, 1<=n<=n_max} |S_{m,n} f| / (m + n)^{2/p-2}, pointwise. 0 < p < 1.
RealGrid2D weighted_maximal(const GridFunction2D& f, double p, const WeightedMaximalOptions& options = {});

/// max_{0<=n<=N} |S_{M_n, M_n} f|, pointwise; the martingale maximal function.
RealGrid2D dyadic_maximal(const GridFunction2D& f);

/// Visits S_{k,l} f for k = 1..k_max and l in l_range(k), in increasing (k, l)
/// order. Each S_{k,l} costs O(M_N^2) amortized: for fixed k the sums over l are
/// built by rank-one updates.
using PartialSumVisitor = std::function<void(Index k, Index l, const Eigen::MatrixXcd& partial)>;
using IndexRange = std::function<std::pair<Index, Index>(Index k)>;

void sweep_partial_sums(const Spectrum2D& s, Index k_max, const IndexRange& l_range, const PartialSumVisitor& visit);

}  // namespace vilenkin
