#pragma once

// Dirichlet kernels D_n = sum_{i<n} psi_i on the depth-N grid and the kernel
// integrals that control partial sums of localized functions.

#include <array>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string_view>
#include <vector>

#include "vilenkin/grid.hpp"

namespace vilenkin {

enum class KernelMethod { direct, closed };

/// D_n sampled on the depth-N grid, 0 <= n <= M_N.
///   direct: literal character sum.
///   closed: D_n = psi_n sum_j D_{M_j} sum_{u=m_j-n_j}^{m_j-1} r_j^u, with
///           D_{M_j} = M_j on I_j and 0 elsewhere.
GridFunction1D dirichlet(const Base& base, int depth, Index n, KernelMethod method);

/// D_{M_k} = M_k 1_{I_k}, exact integers.
RealGrid1D dirichlet_power(const Base& base, int depth, int k);

/// D_{s M_n} = D_{M_n} sum_{k<s} r_n^k, for 1 <= s <= m_n.
GridFunction1D dirichlet_block(const Base& base, int depth, int s, int n);

/// Write-once cache of kernel grids for one truncated group. Concurrent
/// readers are fine; two threads racing on a missing key both compute it and
/// the first insert wins (the values are identical).
class KernelCache {
 public:
  KernelCache(Base base, int depth, KernelMethod method = KernelMethod::closed);

  const Base& base() const noexcept { return base_; }
  int depth() const noexcept { return depth_; }
  Index side() const noexcept { return base_.product(depth_); }

  const Eigen::VectorXcd& get(Index n) const;

 private:
  Base base_;
  int depth_;
  KernelMethod method_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Index, std::unique_ptr<const Eigen::VectorXcd>> kernels_;
};

/// int_{I_N} |D_n(x - t)| dmu(t), as an exact Riemann sum on the cache grid
/// (x is a grid index; cell_depth N must not exceed the grid depth).
double kernel_integral_1d(const KernelCache& cache, Index n, Index x, int cell_depth);

/// int_{I_N x I_N} |D_m(x - t) D_n(y - s)|, evaluated as the product of the two
/// one-dimensional integrals.
double kernel_integral_2d(const KernelCache& cache, Index m, Index n, Index x, Index y, int cell_depth);

/// Which piece of the complement of I_N x I_N a sample point lies in.
enum class RegionClass {
  cell_shell,   // x in I_N, y in I_s \ I_{s+1}; bound m^eps M_s / M_N^{1+eps}
  shell_cell,   // x in I_s \ I_{s+1}, y in I_N; bound n^eps M_s / M_N^{1+eps}
  shell_shell,  // both in shells s1, s2; bound M_{s1} M_{s2} / M_N^2
};

std::string_view to_string(RegionClass region);

struct KernelEstimateReport {
  RegionClass region = RegionClass::cell_shell;
  int s1 = 0;  // shell of x (cell_depth when x ranges over I_N)
  int s2 = 0;  // shell of y (cell_depth when y ranges over I_N)
  Index m = 0;
  Index n = 0;
  int cell_depth = 0;
  double eps = 0.0;  // 0 for shell_shell, whose bound has no epsilon
  double lhs = 0.0;  // sup of the integral over the region
  double rhs_scale = 0.0;
  double ratio = 0.0;
};

struct RegionSummary {
  RegionClass region = RegionClass::cell_shell;
  double eps = 0.0;
  double max_ratio = 0.0;
};

struct Lemma1Result {
  std::vector<KernelEstimateReport> reports;
  std::vector<RegionSummary> summary;

  double max_ratio(RegionClass region, double eps) const;
};

struct SamplePolicy {
  /// Kernel indices 1..M_D are all scanned for the summary when M_D is at most
  /// this; otherwise only the report indices are.
  Index exhaustive_limit = 4096;
  /// Emit report rows for every scanned index (instead of the scale points
  /// 1, M_j - 1, M_j, M_j + 1).
  bool full_reports = false;
};

/// Sweeps every shell (pair) at cell depth N on the full-depth grid of `base`.
/// Requires 1 <= N <= base.depth() - 1 and a nonempty eps list with 0 < eps <= 1.
Lemma1Result lemma1_sweep(const Base& base, int cell_depth, std::span<const double> eps_list,
                          const SamplePolicy& policy = {});

}  // namespace vilenkin
