#include "vilenkin/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

#include "vilenkin/transform.hpp"

namespace vilenkin {

namespace {

void check_kernel_index(const Base& base, int depth, Index n) {
  require(n >= 0 && n <= base.product(depth), ErrorCode::index_out_of_range,
          "kernel index " + std::to_string(n) + " outside [0, M_" + std::to_string(depth) + "]");
}

}  // namespace

RealGrid1D dirichlet_power(const Base& base, int depth, int k) {
  check_depth(base, depth);
  require(k >= 0 && k <= depth, ErrorCode::depth_exceeded, "D_{M_k} needs k <= depth");
  RealGrid1D d(base, depth);
  const Index mk = base.product(k);
  // I_k: the first k digits vanish, i.e. the index is a multiple of M_k.
  for (Index x = 0; x < d.size(); x += mk) d[x] = static_cast<double>(mk);
  return d;
}

GridFunction1D dirichlet(const Base& base, int depth, Index n, KernelMethod method) {
  check_depth(base, depth);
  check_kernel_index(base, depth, n);
  const Index side = base.product(depth);
  GridFunction1D d(base, depth);
  if (n == 0) return d;
  if (n == side) {
    d.values() = dirichlet_power(base, depth, depth).values().cast<cdouble>();
    return d;
  }
  if (method == KernelMethod::direct) {
    for (Index i = 0; i < n; ++i)
      for (Index x = 0; x < side; ++x) d[x] += character(base, depth, i, x);
    return d;
  }
  const DigitExpansion digits = digits_of(n, base);
  for (Index x = 0; x < side; ++x) {
    const int shell = shell_of_index(base, depth, x);
    cdouble sum = 0.0;
    Index rest = x;
    for (int j = 0; j <= digits.order && j <= shell; ++j) {
      const int m = base.generator(j);
      const int xj = static_cast<int>(rest % m);
      rest /= m;
      const int nj = digits.digit(j);
      if (nj == 0) continue;
      cdouble inner = 0.0;
      for (int u = m - nj; u < m; ++u) inner += unit_root(static_cast<Index>(u) * xj, m);
      sum += static_cast<double>(base.product(j)) * inner;
    }
    d[x] = character(base, depth, n, x) * sum;
  }
  return d;
}

GridFunction1D dirichlet_block(const Base& base, int depth, int s, int n) {
  check_depth(base, depth);
  require(n >= 0 && n < depth, ErrorCode::depth_exceeded, "D_{s M_n} needs n < depth");
  require(s >= 1 && s <= base.generator(n), ErrorCode::index_out_of_range,
          "block multiplier s = " + std::to_string(s) + " outside [1, m_" + std::to_string(n) + "]");
  const RealGrid1D dm = dirichlet_power(base, depth, n);
  GridFunction1D d(base, depth);
  const int m = base.generator(n);
  for (Index x = 0; x < d.size(); ++x) {
    if (dm[x] == 0.0) continue;
    const int xn = static_cast<int>((x / base.product(n)) % m);
    cdouble sum = 0.0;
    for (int k = 0; k < s; ++k) sum += unit_root(static_cast<Index>(k) * xn, m);
    d[x] = dm[x] * sum;
  }
  return d;
}

KernelCache::KernelCache(Base base, int depth, KernelMethod method)
    : base_(std::move(base)), depth_(depth), method_(method) {
  check_depth(base_, depth_);
}

const Eigen::VectorXcd& KernelCache::get(Index n) const {
  {
    std::shared_lock lock(mutex_);
    if (const auto it = kernels_.find(n); it != kernels_.end()) return *it->second;
  }
  auto computed = std::make_unique<const Eigen::VectorXcd>(dirichlet(base_, depth_, n, method_).values());
  std::unique_lock lock(mutex_);
  const auto [it, inserted] = kernels_.try_emplace(n, std::move(computed));
  return *it->second;
}

double kernel_integral_1d(const KernelCache& cache, Index n, Index x, int cell_depth) {
  require(cell_depth >= 0 && cell_depth <= cache.depth(), ErrorCode::depth_exceeded,
          "cell depth " + std::to_string(cell_depth) + " exceeds grid depth " + std::to_string(cache.depth()));
  const Eigen::VectorXcd& kernel = cache.get(n);
  const Index side = cache.side();
  const Index step = cache.base().product(cell_depth);
  double sum = 0.0;
  for (Index t = 0; t < side; t += step) sum += std::abs(kernel[index_sub(cache.base(), cache.depth(), x, t)]);
  return sum / static_cast<double>(side);
}

double kernel_integral_2d(const KernelCache& cache, Index m, Index n, Index x, Index y, int cell_depth) {
  return kernel_integral_1d(cache, m, x, cell_depth) * kernel_integral_1d(cache, n, y, cell_depth);
}

std::string_view to_string(RegionClass region) {
  switch (region) {
    case RegionClass::cell_shell: return "cell_shell";
    case RegionClass::shell_cell: return "shell_cell";
    case RegionClass::shell_shell: return "shell_shell";
  }
  return "?";
}

double Lemma1Result::max_ratio(RegionClass region, double eps) const {
  for (const auto& s : summary)
    if (s.region == region && (region == RegionClass::shell_shell || s.eps == eps)) return s.max_ratio;
  fail(ErrorCode::invalid_argument, "no summary for region " + std::string(to_string(region)));
}

namespace {

// sup over x in a region of int_{I_N} |D_n(x - t)|, for every scanned n.
struct RegionMaxima {
  std::vector<double> in_cell;                // region I_N
  std::vector<std::vector<double>> in_shell;  // region I_s \ I_{s+1}, s < N
};

RegionMaxima region_maxima(const KernelCache& cache, int cell_depth, std::span<const Index> indices) {
  const Base& base = cache.base();
  const int depth = cache.depth();
  RegionMaxima r;
  r.in_cell.assign(indices.size(), 0.0);
  r.in_shell.assign(static_cast<std::size_t>(cell_depth), std::vector<double>(indices.size(), 0.0));
  std::vector<int> shell(static_cast<std::size_t>(cache.side()));
  for (Index x = 0; x < cache.side(); ++x) shell[static_cast<std::size_t>(x)] = shell_of_index(base, depth, x);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    for (Index x = 0; x < cache.side(); ++x) {
      const int s = shell[static_cast<std::size_t>(x)];
      const double v = kernel_integral_1d(cache, indices[k], x, cell_depth);
      double& slot = s >= cell_depth ? r.in_cell[k] : r.in_shell[static_cast<std::size_t>(s)][k];
      slot = std::max(slot, v);
    }
  }
  return r;
}

std::vector<Index> scale_points(const Base& base, int depth) {
  std::set<Index> points{1};
  for (int j = 1; j <= depth; ++j) {
    const Index mj = base.product(j);
    points.insert(mj - 1);
    points.insert(mj);
    if (j < depth) points.insert(mj + 1);
  }
  return {points.begin(), points.end()};
}

}  // namespace

Lemma1Result lemma1_sweep(const Base& base, int cell_depth, std::span<const double> eps_list,
                          const SamplePolicy& policy) {
  const int depth = base.depth();
  require(cell_depth >= 1 && cell_depth <= depth - 1, ErrorCode::depth_exceeded,
          "cell depth must lie in [1, depth - 1]");
  require(!eps_list.empty(), ErrorCode::invalid_argument, "empty eps list: nothing to sweep");
  for (double eps : eps_list)
    require(eps > 0.0 && eps <= 1.0, ErrorCode::invalid_argument, "eps must lie in (0, 1]");

  const KernelCache cache(base, depth);
  const Index side = cache.side();
  const std::vector<Index> report_points = scale_points(base, depth);
  std::vector<Index> scanned;
  if (side <= policy.exhaustive_limit) {
    for (Index n = 1; n <= side; ++n) scanned.push_back(n);
  } else {
    scanned = report_points;
  }
  const RegionMaxima maxima = region_maxima(cache, cell_depth, scanned);
  const std::set<Index> report_set(report_points.begin(), report_points.end());
  auto reported = [&](Index v) { return policy.full_reports || report_set.count(v) > 0; };

  const double mn = static_cast<double>(base.product(cell_depth));
  Lemma1Result result;

  auto emit = [&](RegionClass region, int s1, int s2, std::size_t im, std::size_t in, double eps, double lhs,
                  double rhs) {
    const double ratio = lhs / rhs;
    if (reported(scanned[im]) && reported(scanned[in]))
      result.reports.push_back({region, s1, s2, scanned[im], scanned[in], cell_depth, eps, lhs, rhs, ratio});
    return ratio;
  };

  for (double eps : eps_list) {
    double max_a = 0.0, max_b = 0.0;
    for (int s = 0; s < cell_depth; ++s) {
      const double ms = static_cast<double>(base.product(s));
      const auto& shell = maxima.in_shell[static_cast<std::size_t>(s)];
      for (std::size_t i = 0; i < scanned.size(); ++i)
        for (std::size_t j = 0; j < scanned.size(); ++j) {
          const double mi = static_cast<double>(scanned[i]), nj = static_cast<double>(scanned[j]);
          const double scale_a = std::pow(mi, eps) * ms / std::pow(mn, 1.0 + eps);
          max_a = std::max(max_a, emit(RegionClass::cell_shell, cell_depth, s, i, j, eps,
                                       maxima.in_cell[i] * shell[j], scale_a));
          const double scale_b = std::pow(nj, eps) * ms / std::pow(mn, 1.0 + eps);
          max_b = std::max(max_b, emit(RegionClass::shell_cell, s, cell_depth, i, j, eps,
                                       shell[i] * maxima.in_cell[j], scale_b));
        }
    }
    result.summary.push_back({RegionClass::cell_shell, eps, max_a});
    result.summary.push_back({RegionClass::shell_cell, eps, max_b});
  }

  double max_c = 0.0;
  for (int s1 = 0; s1 < cell_depth; ++s1)
    for (int s2 = 0; s2 < cell_depth; ++s2) {
      const double scale = static_cast<double>(base.product(s1)) * static_cast<double>(base.product(s2)) / (mn * mn);
      const auto& r1 = maxima.in_shell[static_cast<std::size_t>(s1)];
      const auto& r2 = maxima.in_shell[static_cast<std::size_t>(s2)];
      for (std::size_t i = 0; i < scanned.size(); ++i)
        for (std::size_t j = 0; j < scanned.size(); ++j)
          max_c = std::max(max_c, emit(RegionClass::shell_shell, s1, s2, i, j, 0.0, r1[i] * r2[j], scale));
    }
  result.summary.push_back({RegionClass::shell_shell, 0.0, max_c});
  return result;
}

}  // namespace vilenkin
