#include "vilenkin/operators.hpp"

#include <algorithm>
#include <cmath>

#include "vilenkin/kernels.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

namespace {

void check_truncation(Index side, Index m, const char* name) {
  require(m >= 0 && m <= side, ErrorCode::index_out_of_range,
          std::string(name) + " = " + std::to_string(m) + " outside [0, " + std::to_string(side) + "]");
}

// K(x, t) = D_m(x - t) / M_N, so (K f)(x) = int f(t) D_m(x - t) dmu(t).
Eigen::MatrixXcd convolution_matrix(const Base& base, int depth, Index m) {
  const Eigen::VectorXcd kernel = dirichlet(base, depth, m, KernelMethod::closed).values();
  const Index side = base.product(depth);
  Eigen::MatrixXcd k(side, side);
  for (Index x = 0; x < side; ++x)
    for (Index t = 0; t < side; ++t) k(x, t) = kernel[index_sub(base, depth, x, t)];
  return k / static_cast<double>(side);
}

}  // namespace

GridFunction1D partial_sum(const GridFunction1D& f, Index m) {
  check_truncation(f.size(), m, "m");
  Spectrum1D s = forward(f);
  s.values().tail(f.size() - m).setZero();
  return inverse(s);
}

GridFunction2D partial_sum(const Spectrum2D& s, Index m, Index n) {
  check_truncation(s.side(), m, "m");
  check_truncation(s.side(), n, "n");
  if (m == 0 || n == 0) return GridFunction2D(s.base(), s.depth());
  Spectrum2D t(s.base(), s.depth());
  t.values().topLeftCorner(m, n) = s.values().topLeftCorner(m, n);
  return inverse(t);
}

GridFunction2D partial_sum(const GridFunction2D& f, Index m, Index n, PartialSumMethod method) {
  check_truncation(f.side(), m, "m");
  check_truncation(f.side(), n, "n");
  if (m == 0 || n == 0) return GridFunction2D(f.base(), f.depth());
  if (method == PartialSumMethod::spectral) return partial_sum(forward(f), m, n);
  const Eigen::MatrixXcd kx = convolution_matrix(f.base(), f.depth(), m);
  const Eigen::MatrixXcd ky = m == n ? kx : convolution_matrix(f.base(), f.depth(), n);
  return GridFunction2D(f.base(), f.depth(), kx * f.values() * ky.transpose());
}

GridFunction2D cond_expectation(const GridFunction2D& f, int n) {
  require(n >= 0 && n <= f.depth(), ErrorCode::depth_exceeded,
          "E_n needs n <= N, got n = " + std::to_string(n) + ", N = " + std::to_string(f.depth()));
  const Index side = f.side();
  const Index cells = f.base().product(n);  // cells per axis; cell of x is x mod M_n
  const Index per_cell = side / cells;
  Eigen::MatrixXcd sums = Eigen::MatrixXcd::Zero(cells, cells);
  for (Index y = 0; y < side; ++y)
    for (Index x = 0; x < side; ++x) sums(x % cells, y % cells) += f(x, y);
  sums /= static_cast<double>(per_cell * per_cell);
  GridFunction2D e(f.base(), f.depth());
  for (Index y = 0; y < side; ++y)
    for (Index x = 0; x < side; ++x) e(x, y) = sums(x % cells, y % cells);
  return e;
}

bool ConeParams::contains(Index k, Index l) const {
  if (k <= 0 || l <= 0) return false;
  const double ratio = static_cast<double>(k) / static_cast<double>(l);
  const double bound = std::exp2(alpha);
  // Compare on a relative scale so that exact boundary ratios (alpha integer) count.
  constexpr double slack = 1e-12;
  return ratio <= bound * (1 + slack) && ratio * bound >= 1 - slack;
}

std::pair<Index, Index> ConeParams::l_range(Index k, Index l_max) const {
  const double bound = std::exp2(alpha);
  Index lo = std::max<Index>(1, static_cast<Index>(std::floor(static_cast<double>(k) / bound)));
  Index hi = std::min<Index>(l_max, static_cast<Index>(std::ceil(static_cast<double>(k) * bound)));
  while (lo <= hi && !contains(k, lo)) ++lo;
  while (hi >= lo && !contains(k, hi)) --hi;
  return {lo, hi};
}

void sweep_partial_sums(const Spectrum2D& s, Index k_max, const IndexRange& l_range, const PartialSumVisitor& visit) {
  const Index side = s.side();
  check_truncation(side, k_max, "k_max");
  const Eigen::MatrixXcd psi = character_matrix(s.base(), s.depth());
  // rows(x, j) = sum_{i<k} psi_i(x) c(i, j)
  Eigen::MatrixXcd rows = Eigen::MatrixXcd::Zero(side, side);
  Eigen::MatrixXcd partial(side, side);
  for (Index k = 1; k <= k_max; ++k) {
    rows.noalias() += psi.col(k - 1) * s.values().row(k - 1);
    const auto [lo, hi_raw] = l_range(k);
    const Index hi = std::min(hi_raw, side);
    if (lo > hi) continue;
    check_truncation(side, lo, "l");
    partial.noalias() = rows.leftCols(lo) * psi.leftCols(lo).transpose();
    visit(k, lo, partial);
    for (Index l = lo + 1; l <= hi; ++l) {
      partial.noalias() += rows.col(l - 1) * psi.col(l - 1).transpose();
      visit(k, l, partial);
    }
  }
}

RealGrid2D weighted_maximal(const GridFunction2D& f, double p, const WeightedMaximalOptions& options) {
  require(p > 0.0 && p < 1.0, ErrorCode::invalid_argument, "weighted maximal operator needs 0 < p < 1");
  const Index side = f.side();
  const Index m_max = options.m_max == 0 ? side : options.m_max;
  const Index n_max = options.n_max == 0 ? side : options.n_max;
  check_truncation(side, m_max, "m_max");
  check_truncation(side, n_max, "n_max");
  const double exponent = 2.0 / p - 2.0;
  RealGrid2D out(f.base(), f.depth());
  sweep_partial_sums(forward(f), m_max, [n_max](Index) { return std::pair<Index, Index>{1, n_max}; },
                     [&](Index m, Index n, const Eigen::MatrixXcd& partial) {
                       const double weight = std::pow(static_cast<double>(m + n + (options.plus_one ? 1 : 0)), exponent);
                       out.values() = out.values().cwiseMax(partial.cwiseAbs() / weight);
                     });
  return out;
}

RealGrid2D dyadic_maximal(const GridFunction2D& f) {
  RealGrid2D out(f.base(), f.depth());
  for (int n = 0; n <= f.depth(); ++n) out.values() = out.values().cwiseMax(cond_expectation(f, n).values().cwiseAbs());
  return out;
}

}  // namespace vilenkin
