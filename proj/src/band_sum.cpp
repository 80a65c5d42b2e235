#include "vilenkin/band_sum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vilenkin {

double Distribution::lp(double p) const {
  require(p > 0.0, ErrorCode::invalid_argument, "L_p needs p > 0");
  double sum = 0.0;
  for (const auto& [v, mass] : entries_)
    if (v > 0.0) sum += mass * std::pow(v, p);
  return std::pow(sum, 1.0 / p);
}

double Distribution::weak_lp(double p) const {
  require(p > 0.0, ErrorCode::invalid_argument, "weak-L_p needs p > 0");
  std::vector<std::pair<double, double>> sorted = entries_;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = 0.0, cumulative = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i].second;
    // Only the last of a run of equal values sees the full mass mu(|f| >= v).
    if (i + 1 < sorted.size() && sorted[i + 1].first == sorted[i].first) continue;
    if (sorted[i].first <= 0.0) break;
    best = std::max(best, sorted[i].first * std::pow(std::min(cumulative, 1.0), 1.0 / p));
  }
  return best;
}

double Distribution::sup() const {
  double s = 0.0;
  for (const auto& e : entries_) s = std::max(s, e.first);
  return s;
}

double Distribution::total_mass() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.second;
  return s;
}

DirichletBand DirichletBand::truncated(Index m) const noexcept {
  return {lo, std::clamp(m, lo, std::max(lo, hi))};
}

BandSum::BandSum(Base base, int depth) : base_(std::move(base)), depth_(depth) { check_depth(base_, depth_); }

void BandSum::add(double weight, DirichletBand x, DirichletBand y) {
  const Index side = base_.product(depth_);
  for (const DirichletBand& b : {x, y})
    require(b.lo >= 0 && b.lo <= b.hi && b.hi <= side, ErrorCode::index_out_of_range,
            "band [" + std::to_string(b.lo) + ", " + std::to_string(b.hi) + ") outside [0, " + std::to_string(side) + "]");
  terms_.push_back({weight, x, y});
}

BandSum BandSum::truncated(Index m, Index n) const {
  BandSum out(base_, depth_);
  for (const BandProduct& t : terms_) {
    const DirichletBand x = t.x.truncated(m), y = t.y.truncated(n);
    if (!x.empty() && !y.empty() && t.weight != 0.0) out.terms_.push_back({t.weight, x, y});
  }
  return out;
}

Eigen::MatrixXcd band_factors(std::span<const DirichletBand> bands, const KernelCache& cache) {
  Eigen::MatrixXcd u(cache.side(), static_cast<Index>(bands.size()));
  for (std::size_t r = 0; r < bands.size(); ++r)
    u.col(static_cast<Index>(r)) = cache.get(bands[r].hi) - cache.get(bands[r].lo);
  return u;
}

namespace {

void check_cache(const BandSum& f, const KernelCache& cache) {
  require(f.base() == cache.base() && f.depth() == cache.depth(), ErrorCode::base_mismatch,
          "kernel cache lives on a different grid");
}

std::pair<std::vector<DirichletBand>, std::vector<DirichletBand>> split(const BandSum& f) {
  std::vector<DirichletBand> xs, ys;
  for (const auto& t : f.terms()) {
    xs.push_back(t.x);
    ys.push_back(t.y);
  }
  return {xs, ys};
}

}  // namespace

GridFunction2D BandSum::materialize(const KernelCache& cache) const {
  check_cache(*this, cache);
  GridFunction2D out(base_, depth_);
  if (terms_.empty()) return out;
  const auto [xs, ys] = split(*this);
  const Eigen::MatrixXcd u = band_factors(xs, cache), v = band_factors(ys, cache);
  Eigen::VectorXd w(static_cast<Index>(terms_.size()));
  for (std::size_t r = 0; r < terms_.size(); ++r) w[static_cast<Index>(r)] = terms_[r].weight;
  out.values() = u * w.cast<cdouble>().asDiagonal() * v.transpose();
  return out;
}

Spectrum2D BandSum::spectrum() const {
  Spectrum2D s(base_, depth_);
  for (const auto& t : terms_)
    s.values().block(t.x.lo, t.y.lo, t.x.hi - t.x.lo, t.y.hi - t.y.lo).array() += t.weight;
  return s;
}

Distribution BandSum::distribution(const KernelCache& cache) const {
  check_cache(*this, cache);
  if (terms_.empty()) {
    Distribution d;
    d.add(0.0, 1.0);
    return d;
  }
  const auto [xs, ys] = split(*this);
  std::vector<double> w;
  for (const auto& t : terms_) w.push_back(t.weight);
  return combine(compress_rows(band_factors(xs, cache)), w, compress_rows(band_factors(ys, cache)));
}

FactorClasses compress_rows(const Eigen::MatrixXcd& factors) {
  const Index rows = factors.rows(), cols = factors.cols();
  const double scale = std::max(1.0, factors.cwiseAbs().maxCoeff());
  const double quantum = 1e-12 * scale;
  std::vector<std::vector<long long>> keys(static_cast<std::size_t>(rows), std::vector<long long>(static_cast<std::size_t>(2 * cols)));
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) {
      keys[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * c)] = std::llround(factors(i, c).real() / quantum);
      keys[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * c + 1)] = std::llround(factors(i, c).imag() / quantum);
    }
  std::vector<Index> order(static_cast<std::size_t>(rows));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)]; });
  FactorClasses out;
  std::vector<Index> representatives;
  const double unit = 1.0 / static_cast<double>(rows);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || keys[static_cast<std::size_t>(order[k])] != keys[static_cast<std::size_t>(order[k - 1])]) {
      representatives.push_back(order[k]);
      out.mass.push_back(0.0);
    }
    out.mass.back() += unit;
  }
  out.rows.resize(static_cast<Index>(representatives.size()), cols);
  for (std::size_t k = 0; k < representatives.size(); ++k) out.rows.row(static_cast<Index>(k)) = factors.row(representatives[k]);
  return out;
}

Distribution combine(const FactorClasses& left, std::span<const double> weights, const FactorClasses& right) {
  require(left.rows.cols() == static_cast<Index>(weights.size()) && right.rows.cols() == left.rows.cols(),
          ErrorCode::invalid_argument, "factor ranks disagree");
  Eigen::VectorXcd w(static_cast<Index>(weights.size()));
  for (std::size_t r = 0; r < weights.size(); ++r) w[static_cast<Index>(r)] = weights[r];
  const Eigen::MatrixXcd values = left.rows * w.asDiagonal() * right.rows.transpose();
  Distribution d;
  for (Index i = 0; i < values.rows(); ++i)
    for (Index j = 0; j < values.cols(); ++j)
      d.add(std::abs(values(i, j)), left.mass[static_cast<std::size_t>(i)] * right.mass[static_cast<std::size_t>(j)]);
  return d;
}

}  // namespace vilenkin
