#include "vilenkin/norms.hpp"

#include <cmath>

#include "vilenkin/distribution.hpp"
#include "vilenkin/operators.hpp"

namespace vilenkin {

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::lp: return "Lp";
    case NormKind::weak_lp: return "weakLp";
    case NormKind::hardy: return "Hardy";
    case NormKind::hardy_upper: return "HardyUpper";
  }
  return "?";
}

namespace {

void check_positive(double p) { require(p > 0.0, ErrorCode::invalid_argument, "quasi-norm needs p > 0"); }

void check_hardy(double p) {
  require(p > 0.0 && p <= 1.0, ErrorCode::invalid_argument, "Hardy norm needs 0 < p <= 1");
}

template <typename Matrix>
double lp_of(const Matrix& values, double p) {
  double sum = 0.0;
  for (Index j = 0; j < values.cols(); ++j)
    for (Index i = 0; i < values.rows(); ++i) {
      const double a = std::abs(values(i, j));
      if (a > 0.0) sum += std::pow(a, p);
    }
  return std::pow(sum / static_cast<double>(values.size()), 1.0 / p);
}

}  // namespace

NormValue lp_quasinorm(const GridFunction2D& f, double p) {
  check_positive(p);
  return {lp_of(f.values(), p), p, NormKind::lp};
}

NormValue lp_quasinorm(const RealGrid2D& f, double p) {
  check_positive(p);
  return {lp_of(f.values(), p), p, NormKind::lp};
}

NormValue weak_lp_norm(const GridFunction2D& f, double p) {
  check_positive(p);
  return {Distribution::of(f.values()).weak_lp(p), p, NormKind::weak_lp};
}

NormValue hardy_square_norm(const GridFunction2D& f, double p) {
  check_hardy(p);
  return {lp_quasinorm(dyadic_maximal(f), p).value, p, NormKind::hardy};
}

NormValue hardy_upper_from_atoms(const AtomicDecomposition& d, double p) {
  check_hardy(p);
  double sum = 0.0;
  for (const auto& t : d.terms()) sum += std::pow(std::abs(t.lambda), p);
  return {std::pow(sum, 1.0 / p), p, NormKind::hardy_upper};
}

NormValue modulus_of_continuity(const GridFunction2D& f, int k, double p) {
  require(k >= 0 && k <= f.depth(), ErrorCode::depth_exceeded,
          "modulus of continuity needs k <= N = " + std::to_string(f.depth()) + ", got " + std::to_string(k));
  GridFunction2D diff = f;
  diff.values() -= cond_expectation(f, k).values();
  return hardy_square_norm(diff, p);
}

NormValue modulus_of_continuity(const AtomicDecomposition& d, int k, double p) {
  return modulus_of_continuity(compose(d, d.depth()), k, p);
}

}  // namespace vilenkin
