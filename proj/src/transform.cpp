#include "vilenkin/transform.hpp"

#include <numbers>
#include <vector>

namespace vilenkin {

cdouble unit_root(Index r, Index order) {
  r %= order;
  if (r < 0) r += order;
  if ((4 * r) % order == 0) {
    switch ((4 * r) / order) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(order);
  return {std::cos(angle), std::sin(angle)};
}

namespace {

// sum_k n_k x_k (M_N / m_k) mod M_N: the character phase in units of 2 pi / M_N.
Index phase_index(const Base& base, int depth, Index n, Index x) {
  const Index total = base.product(depth);
  Index phase = 0;
  for (int k = 0; k < depth && n > 0; ++k) {
    const int m = base.generator(k);
    const Index nk = n % m, xk = x % m;
    phase = (phase + ((nk * xk) % m) * (total / m)) % total;
    n /= m;
    x /= m;
  }
  return phase;
}

}  // namespace

cdouble character(const Base& base, int depth, Index n, Index x) {
  const Index total = base.product(depth);
  require(n >= 0 && n < total, ErrorCode::index_out_of_range,
          "character index " + std::to_string(n) + " outside [0, M_" + std::to_string(depth) + ")");
  require(x >= 0 && x < total, ErrorCode::index_out_of_range, "point index " + std::to_string(x));
  return unit_root(phase_index(base, depth, n, x), total);
}

cdouble character(Index n, const GroupPoint& x) { return character(x.base, x.depth, n, index_of(x)); }

Eigen::MatrixXcd character_matrix(const Base& base, int depth) {
  check_depth(base, depth);
  const Index total = base.product(depth);
  std::vector<cdouble> roots(static_cast<std::size_t>(total));
  for (Index r = 0; r < total; ++r) roots[static_cast<std::size_t>(r)] = unit_root(r, total);
  Eigen::MatrixXcd psi(total, total);
  for (Index i = 0; i < total; ++i)
    for (Index x = 0; x < total; ++x)
      psi(x, i) = roots[static_cast<std::size_t>(phase_index(base, depth, i, x))];
  return psi;
}

GridFunction1D character_grid(const Base& base, int depth, Index n) {
  GridFunction1D g(base, depth);
  for (Index x = 0; x < g.size(); ++x) g[x] = character(base, depth, n, x);
  return g;
}

void apply_stages(const Base& base, int depth, std::span<cdouble> data, Direction direction) {
  check_depth(base, depth);
  const Index total = base.product(depth);
  require(static_cast<Index>(data.size()) == total, ErrorCode::invalid_argument, "stage input length");
  const int sign = direction == Direction::forward ? -1 : 1;
  std::vector<cdouble> gathered, dft;
  for (int k = 0; k < depth; ++k) {
    const int m = base.generator(k);
    const Index stride = base.product(k);
    const Index block = base.product(k + 1);
    if (m == 2) {
      for (Index outer = 0; outer < total; outer += block)
        for (Index inner = 0; inner < stride; ++inner) {
          cdouble& a = data[static_cast<std::size_t>(outer + inner)];
          cdouble& b = data[static_cast<std::size_t>(outer + inner + stride)];
          const cdouble sum = a + b;
          b = a - b;
          a = sum;
        }
      continue;
    }
    dft.resize(static_cast<std::size_t>(m * m));
    for (int u = 0; u < m; ++u)
      for (int v = 0; v < m; ++v) dft[static_cast<std::size_t>(u * m + v)] = unit_root(sign * u * v, m);
    gathered.resize(static_cast<std::size_t>(m));
    for (Index outer = 0; outer < total; outer += block)
      for (Index inner = 0; inner < stride; ++inner) {
        const Index origin = outer + inner;
        for (int v = 0; v < m; ++v) gathered[static_cast<std::size_t>(v)] = data[static_cast<std::size_t>(origin + v * stride)];
        for (int u = 0; u < m; ++u) {
          cdouble acc = 0.0;
          for (int v = 0; v < m; ++v) acc += dft[static_cast<std::size_t>(u * m + v)] * gathered[static_cast<std::size_t>(v)];
          data[static_cast<std::size_t>(origin + u * stride)] = acc;
        }
      }
  }
}

namespace {

void transform_columns(const Base& base, int depth, Eigen::MatrixXcd& a, Direction direction) {
  for (Index c = 0; c < a.cols(); ++c)
    apply_stages(base, depth, std::span<cdouble>(a.col(c).data(), static_cast<std::size_t>(a.rows())), direction);
}

}  // namespace

Spectrum1D forward(const GridFunction1D& f, Mode mode) {
  const double scale = 1.0 / static_cast<double>(f.size());
  if (mode == Mode::naive) {
    const Eigen::MatrixXcd psi = character_matrix(f.base(), f.depth());
    return Spectrum1D(f.base(), f.depth(), (psi.adjoint() * f.values()) * scale);
  }
  Eigen::VectorXcd v = f.values();
  apply_stages(f.base(), f.depth(), std::span<cdouble>(v.data(), static_cast<std::size_t>(v.size())), Direction::forward);
  return Spectrum1D(f.base(), f.depth(), v * scale);
}

GridFunction1D inverse(const Spectrum1D& s, Mode mode) {
  if (mode == Mode::naive) {
    const Eigen::MatrixXcd psi = character_matrix(s.base(), s.depth());
    return GridFunction1D(s.base(), s.depth(), psi * s.values());
  }
  Eigen::VectorXcd v = s.values();
  apply_stages(s.base(), s.depth(), std::span<cdouble>(v.data(), static_cast<std::size_t>(v.size())), Direction::inverse);
  return GridFunction1D(s.base(), s.depth(), std::move(v));
}

Spectrum2D forward(const GridFunction2D& f, Mode mode) {
  const double scale = 1.0 / static_cast<double>(f.side() * f.side());
  if (mode == Mode::naive) {
    const Eigen::MatrixXcd psi = character_matrix(f.base(), f.depth());
    return Spectrum2D(f.base(), f.depth(), (psi.adjoint() * f.values() * psi.conjugate()) * scale);
  }
  Eigen::MatrixXcd a = f.values();
  transform_columns(f.base(), f.depth(), a, Direction::forward);
  Eigen::MatrixXcd t = a.transpose();
  transform_columns(f.base(), f.depth(), t, Direction::forward);
  return Spectrum2D(f.base(), f.depth(), t.transpose() * scale);
}

GridFunction2D inverse(const Spectrum2D& s, Mode mode) {
  if (mode == Mode::naive) {
    const Eigen::MatrixXcd psi = character_matrix(s.base(), s.depth());
    return GridFunction2D(s.base(), s.depth(), psi * s.values() * psi.transpose());
  }
  Eigen::MatrixXcd a = s.values();
  transform_columns(s.base(), s.depth(), a, Direction::inverse);
  Eigen::MatrixXcd t = a.transpose();
  transform_columns(s.base(), s.depth(), t, Direction::inverse);
  return GridFunction2D(s.base(), s.depth(), t.transpose());
}

}  // namespace vilenkin
