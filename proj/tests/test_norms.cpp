#include <doctest.h>

#include "oracles.hpp"
#include "vilenkin/norms.hpp"
#include "vilenkin/operators.hpp"
#include "vilenkin/transform.hpp"

using namespace vilenkin;

namespace {

GridFunction2D indicator_I1(const Base& b, int N) {
  GridFunction2D f(b, N);
  for (Index x = 0; x < f.side(); x += b.product(1))
    for (Index y = 0; y < f.side(); y += b.product(1)) f(x, y) = 1.0;
  return f;
}

}  // namespace

TEST_CASE("L_p quasi-norm") {
  const Base b = parse_base("2x4");
  GridFunction2D one(b, 4);
  one.values().setOnes();
  for (double p : {0.25, 0.5, 1.0, 3.0}) CHECK(lp_quasinorm(one, p).value == doctest::Approx(1.0));
  CHECK(lp_quasinorm(indicator_I1(b, 4), 0.5).value == 0.0625);
  const GridFunction2D psi = tensor(character_grid(b, 4, 5), character_grid(b, 4, 11));
  for (double p : {0.5, 0.75}) CHECK(lp_quasinorm(psi, p).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp_quasinorm(GridFunction2D(b, 4), 0.5).value == 0.0);
  CHECK_THROWS_AS(lp_quasinorm(one, 0.0), Error);
  CHECK(lp_quasinorm(one, 0.5).kind == NormKind::lp);
}

TEST_CASE("weak L_p quasi-norm") {
  const Base b = parse_base("2x4");
  CHECK(weak_lp_norm(indicator_I1(b, 4), 0.5).value == 0.0625);
  GridFunction2D c(b, 4);
  c.values().setConstant(cdouble(0, -3));
  CHECK(weak_lp_norm(c, 0.7).value == doctest::Approx(3.0));
  for (unsigned seed = 0; seed < 10; ++seed) {
    const GridFunction2D f = oracle::random_grid(parse_base("2,3,2"), 3, seed);
    for (double p : {0.5, 0.75, 1.0}) {
      const double weak = weak_lp_norm(f, p);
      CHECK(weak == doctest::Approx(oracle::weak_lp(f.values(), p)).epsilon(1e-13));
      CHECK(weak <= lp_quasinorm(f, p).value * (1 + 1e-12));
    }
  }
  CHECK_THROWS_AS(weak_lp_norm(c, -1.0), Error);
}

TEST_CASE("Hardy norm") {
  const Base b = parse_base("2,3,2");
  GridFunction2D one(b, 3);
  one.values().setOnes();
  CHECK(hardy_square_norm(one, 0.5).value == doctest::Approx(1.0));
  const GridFunction2D psi = tensor(character_grid(b, 3, 1), character_grid(b, 3, 1));
  CHECK(hardy_square_norm(psi, 0.5).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(hardy_square_norm(one, 1.5), Error);
  CHECK_THROWS_AS(hardy_square_norm(one, 0.0), Error);
}

TEST_CASE("all quasi-norms are homogeneous") {
  const Base b = parse_base("2,3,2");
  const Atom a = random_atom(b, 3, 1, 0.5, 3);
  for (double lambda : {-2.5, 0.125, 7.0}) {
    GridFunction2D g = a.values;
    g.values() *= lambda;
    for (double p : {0.5, 0.75}) {
      CHECK(lp_quasinorm(g, p).value == doctest::Approx(std::abs(lambda) * lp_quasinorm(a.values, p).value).epsilon(1e-12));
      CHECK(weak_lp_norm(g, p).value == doctest::Approx(std::abs(lambda) * weak_lp_norm(a.values, p).value).epsilon(1e-12));
      // Rounding noise in the vanishing mean is raised to the power p, hence the looser bound.
      CHECK(hardy_square_norm(g, p).value ==
            doctest::Approx(std::abs(lambda) * hardy_square_norm(a.values, p).value).epsilon(1e-6));
      AtomicDecomposition d(b, 3, p), scaled(b, 3, p);
      Atom ap = a;
      ap.p = p;
      ap.quasi_constant = 1e6;
      d.add(1.0, ap);
      scaled.add(lambda, ap);
      CHECK(hardy_upper_from_atoms(scaled, p).value ==
            doctest::Approx(std::abs(lambda) * hardy_upper_from_atoms(d, p).value).epsilon(1e-12));
    }
  }
}

TEST_CASE("p-triangle inequality") {
  const Base b = parse_base("2,3,2");
  for (unsigned seed = 0; seed < 20; ++seed) {
    const GridFunction2D f = oracle::random_grid(b, 3, seed), g = oracle::random_grid(b, 3, seed + 100);
    GridFunction2D sum = f;
    sum.values() += g.values();
    for (double p : {0.3, 0.5, 1.0}) {
      const double lhs = std::pow(lp_quasinorm(sum, p).value, p);
      CHECK(lhs <= std::pow(lp_quasinorm(f, p).value, p) + std::pow(lp_quasinorm(g, p).value, p) + 1e-12);
    }
  }
}

TEST_CASE("atomic upper bound") {
  const Base b = parse_base("2x4");
  AtomicDecomposition one(b, 4, 0.5);
  one.add(1.0, random_atom(b, 4, 1, 0.5, 1));
  CHECK(hardy_upper_from_atoms(one, 0.5).value == doctest::Approx(1.0));
  one.add(1.0, random_atom(b, 4, 2, 0.5, 2));
  CHECK(hardy_upper_from_atoms(one, 0.5).value == doctest::Approx(4.0));

  const std::vector<int> alphas{1, 2, 3};
  const AtomicDecomposition d = thm3b_martingale(parse_base("2x5"), 5, alphas, 0.5, 3);
  double sum = 0.0;
  for (int a : alphas) sum += std::pow(std::pow(2.0, a), -2.0 * 0.5);
  CHECK(hardy_upper_from_atoms(d, 0.5).value == doctest::Approx(sum * sum).epsilon(1e-14));
}

TEST_CASE("modulus of continuity") {
  const Base b = parse_base("2,3,2");
  Spectrum2D s(b, 3);
  s(1, 0) = 2.0;
  s(0, 1) = cdouble(0, 1);
  s(1, 1) = -1.0;
  const GridFunction2D f = inverse(s);
  CHECK(modulus_of_continuity(f, 1, 0.5).value < 1e-12);  // indices < M_1 = 2
  CHECK(modulus_of_continuity(f, 0, 0.5).value > 0.1);
  GridFunction2D c(b, 3);
  c.values().setConstant(4.0);
  for (int k = 0; k <= 3; ++k) CHECK(modulus_of_continuity(c, k, 0.75).value < 1e-12);
  CHECK_THROWS_AS(modulus_of_continuity(c, 4, 0.5), Error);
}

TEST_CASE("single atoms stay within a depth-stable multiple of the atomic bound") {
  for (double p : {0.5, 0.75}) {
    std::vector<double> fitted;
    for (int N : {2, 3, 4}) {
      const Base b = parse_base("2,3,2,2", N);
      double c_fit = 0.0;
      for (int i = 0; i < 200; ++i) {
        AtomicDecomposition d(b, N, p);
        const double lambda = 0.5 + (i % 7);
        d.add(lambda, random_atom(b, N, i % N, p, static_cast<std::uint64_t>(1000 * N + i)));
        const double ratio = hardy_square_norm(compose(d, N), p).value / hardy_upper_from_atoms(d, p).value;
        CHECK(std::isfinite(ratio));
        c_fit = std::max(c_fit, ratio);
      }
      fitted.push_back(c_fit);
    }
    CHECK(fitted[1] <= 2.0 * fitted[0]);
    CHECK(fitted[2] <= 2.0 * fitted[1]);
  }
}
