#include <doctest.h>

#include "oracles.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/manifest.hpp"
#include "vilenkin/norms.hpp"
#include "vilenkin/operators.hpp"
#include "vilenkin/transform.hpp"

using namespace vilenkin;

TEST_CASE("hand-built atom is valid with C = 1") {
  const Base b = parse_base("2x4");
  GridFunction2D f(b, 4);
  for (Index x = 0; x < 16; x += 2)
    for (Index y = 0; y < 16; y += 2) f(x, y) = 16.0 * ((x / 2) % 2 == 0 ? 1.0 : -1.0);
  const AtomValidation v = validate_atom(Atom{f, 1, 0.5, 1.0});
  CHECK(v.valid());
  CHECK(v.min_constant == 1.0);
  CHECK_FALSE(v.degenerate);

  GridFunction2D leak = f;
  leak(1, 0) = 1e-3;
  const AtomValidation bad = validate_atom(Atom{leak, 1, 0.5, 1.0});
  CHECK_FALSE(bad.support_ok);
  CHECK(bad.support_violation == 1e-3);

  GridFunction2D biased = f;
  biased(0, 0) += 1.0;
  CHECK_FALSE(validate_atom(Atom{biased, 1, 0.5, 1.0}).mean_ok);

  GridFunction2D tall = f;
  tall.values() *= 2.0;
  const AtomValidation over = validate_atom(Atom{tall, 1, 0.5, 1.0});
  CHECK_FALSE(over.sup_ok);
  CHECK(over.min_constant == 2.0);
}

TEST_CASE("the zero atom is degenerate but passes") {
  const AtomValidation v = validate_atom(Atom{GridFunction2D(parse_base("2x3"), 3), 1, 0.5, 1.0});
  CHECK(v.support_ok);
  CHECK(v.mean_ok);
  CHECK(v.degenerate);
}

TEST_CASE("random atoms") {
  const Base b = parse_base("2,3,2,3");
  const Atom a = random_atom(b, 4, 2, 0.5, 42), again = random_atom(b, 4, 2, 0.5, 42);
  CHECK(a.values.values() == again.values.values());
  CHECK(a.values.values() != random_atom(b, 4, 2, 0.5, 43).values.values());
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    for (int na = 0; na < 4; ++na) {
      const Atom r = random_atom(b, 4, na, 0.75, seed);
      const AtomValidation v = validate_atom(r);
      CHECK(v.valid());
      CHECK(v.min_constant <= 1.0 + 1e-12);
    }
  const Atom whole = random_atom(b, 4, 0, 0.5, 7);
  CHECK(whole.values.values().cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
  CHECK_THROWS_AS(random_atom(b, 4, 4, 0.5, 1), Error);
}

TEST_CASE("theorem 1(b) family") {
  const Base b = parse_base("2x4");
  const GridFunction2D f = thm1b_family(b, 4, 1);
  for (Index x = 0; x < 16; ++x)
    for (Index y = 0; y < 16; ++y) {
      const double expected = (x % 2 == 0 ? 2.0 * ((x / 2) % 2 == 0 ? 1 : -1) : 0.0) * (y % 2 == 0 ? 2.0 : 0.0);
      CHECK(f(x, y) == cdouble(expected));
    }
  const Spectrum2D s = forward(f);
  for (Index i = 0; i < 16; ++i)
    for (Index j = 0; j < 16; ++j) {
      const bool inside = (i == 2 || i == 3) && (j == 0 || j == 1);
      CHECK(std::abs(s(i, j) - cdouble(inside ? 1.0 : 0.0)) < 1e-14);
    }
  const KernelCache cache(b, 4);
  CHECK(oracle::max_abs(thm1b_bands(b, 4, 1).materialize(cache).values(), f.values()) < 1e-12);
  for (int a = 1; a <= 3; ++a) {
    const GridFunction2D g = thm1b_family(b, 4, a);
    const GridFunction2D partial = partial_sum(g, b.product(a) + 1, 1);
    CHECK((partial.values().cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
    CHECK(weak_lp_norm(partial, 0.5).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(thm1b_family(b, 4, 4), Error);
}

TEST_CASE("theorem 3(b) martingale") {
  const Base b = parse_base("2x5");
  const std::vector<int> alphas{2, 3};
  const AtomicDecomposition one = thm3b_martingale(b, 5, alphas, 0.5, 1);
  CHECK(one.terms().size() == 1);
  CHECK(one.terms()[0].lambda == 1.0 / 16.0);

  const AtomicDecomposition two = thm3b_martingale(b, 5, alphas, 0.5, 2);
  const Spectrum2D s = forward(compose(two, 5));
  auto block = [](Index i) { return (i >= 4 && i < 8) ? 0 : (i >= 8 && i < 16) ? 1 : -1; };
  for (Index i = 0; i < 32; ++i)
    for (Index j = 0; j < 32; ++j) {
      const bool on = block(i) >= 0 && block(i) == block(j);
      CHECK(std::abs(s(i, j) - cdouble(on ? 1.0 : 0.0)) < 1e-10);
    }
  for (const auto& t : two.terms()) {
    const AtomValidation v = validate_atom(t.atom);
    CHECK(v.valid());
    CHECK(v.min_constant <= t.atom.quasi_constant);
  }
  const std::vector<int> too_deep{2, 5};
  CHECK_THROWS_AS(thm3b_martingale(b, 5, too_deep, 0.5, 2), Error);
  CHECK_THROWS_AS(thm3b_martingale(b, 5, alphas, 1.0, 1), Error);
}

TEST_CASE("theorem 3(b) remainder stays large in weak L_p") {
  const Base b = parse_base("2x6");
  const std::vector<int> alphas{1, 2, 3, 4, 5};
  const AtomicDecomposition d = thm3b_martingale(b, 6, alphas, 0.5, 5);
  const GridFunction2D f = compose(d, 6);
  for (int k = 1; k <= 3; ++k) {
    const Index m = b.product(k) + 1;
    GridFunction2D rest = f;
    rest.values() -= partial_sum(f, m, m).values();
    const double weak = weak_lp_norm(rest, 0.5);
    CHECK(std::pow(weak, 0.5) >= std::pow(2.0, -0.5));
  }
}

TEST_CASE("Phi weights") {
  const Base b = parse_base("2x8");
  const PhiWeight log = PhiWeight::parse("log");
  CHECK(log(3, 1) == doctest::Approx(3.0));
  CHECK(PhiWeight::parse("pow:0.5")(3, 8) == doctest::Approx(3.0));
  CHECK(PhiWeight::parse("sumpow:2")(1, 2) == doctest::Approx(9.0));
  CHECK(PhiWeight::parse("pow:0.5").spec() == "pow:0.5");
  log.check_unbounded(b, 8);
  CHECK_THROWS_AS(PhiWeight::power(0.0).check_unbounded(b, 8), Error);
  CHECK_THROWS_AS(PhiWeight::table({1.0, 1.0, 1.0}).check_unbounded(b, 8), Error);
  CHECK_THROWS_AS(PhiWeight::table({1.0, 2.0, 1.5}).check_monotone(b, 8), Error);
  CHECK_THROWS_AS(PhiWeight::parse("pow:"), Error);
  CHECK_THROWS_AS(PhiWeight::parse("cubic"), Error);
}

TEST_CASE("theorem 4(b) martingale") {
  CHECK((thm4b_alphas(1.0, 2) == std::vector<int>{2, 5}));
  CHECK((thm4b_alphas(1.5, 3) == std::vector<int>{2, 5, 8}));
  CHECK((thm4b_alphas(0.0, 3) == std::vector<int>{2, 4, 6}));
  CHECK(thm4b_depth(1.0, 2) == 7);

  const Base b = parse_base("2x12", 7);
  const PhiWeight phi = PhiWeight::log_kind();
  const double p = 0.5;
  const AtomicDecomposition d = thm4b_martingale(b, 7, phi, p, 1.0, 2);
  REQUIRE(d.terms().size() == 2);
  for (const auto& t : d.terms()) {
    const int a = t.origin.alpha_k, top = t.origin.top;
    CHECK(top == a + 2);
    const double ma = std::pow(2.0, a);
    CHECK(t.lambda == doctest::Approx(std::pow(4.0, -(2 / p - 2)) * std::pow(phi(ma, ma), -0.25)).epsilon(1e-14));
    const AtomValidation v = validate_atom(t.atom);
    CHECK(v.valid());
    CHECK(v.min_constant <= std::pow(std::pow(2.0, top) / ma, 2 / p));
  }

  const Spectrum2D s = forward(compose(d, 7));
  for (Index i = 0; i < 128; ++i)
    for (Index j = 0; j < 128; ++j) {
      double expected = 0.0;
      for (int a : {2, 5}) {
        const Index lo = Index{1} << a, hi = Index{1} << (a + 2);
        if (i >= lo && i < hi && j >= lo && j < hi)
          expected = std::pow(static_cast<double>(lo), 2 / p - 2) / std::pow(phi(lo, lo), 0.25);
      }
      CHECK(std::abs(s(i, j) - expected) <= 1e-10 * std::max(1.0, expected));
    }

  // |II| on (G \ I_1)^2 for M_a < m, n < 2^alpha M_a with odd m, n.
  const double ma = 32.0;
  const double level = std::pow(ma, 2 / p - 2) / std::pow(phi(ma, ma), 0.25);
  const GridFunction2D f = compose(d, 7);
  const GridFunction2D below = partial_sum(f, 32, 32);
  for (Index m : {33, 41, 63})
    for (Index n : {35, 47}) {
      const GridFunction2D s_mn = partial_sum(f, m, n);
      for (Index x = 1; x < 128; x += 2)
        for (Index y = 1; y < 128; y += 2) CHECK(std::abs(s_mn(x, y) - below(x, y)) == doctest::Approx(level).epsilon(1e-10));
    }

  CHECK_THROWS_AS(thm4b_martingale(b, 6, phi, p, 1.0, 2), Error);
  CHECK_THROWS_AS(thm4b_martingale(b, 7, PhiWeight::power(0.0), p, 1.0, 2), Error);

  const auto partial = thm4b_summability(b, phi, p, thm4b_alphas(1.0, 2));
  CHECK(partial.size() == 2);
  CHECK(partial[1] > partial[0]);
}

TEST_CASE("composition") {
  const Base b = parse_base("2,3,2,3");
  const AtomicDecomposition empty(b, 4, 0.5);
  CHECK(compose(empty, 4).values().cwiseAbs().maxCoeff() == 0.0);

  AtomicDecomposition single(b, 4, 0.5);
  single.add(2.0, random_atom(b, 4, 2, 0.5, 9));
  for (int n = 0; n <= 2; ++n) CHECK(compose(single, n).values().cwiseAbs().maxCoeff() < 1e-9);

  AtomicDecomposition pair(b, 4, 0.75);
  pair.add(0.5, random_atom(b, 4, 1, 0.75, 1));
  pair.add(-1.5, random_atom(b, 4, 3, 0.75, 2));
  const GridFunction2D top = compose(pair, 4);
  for (int n = 0; n <= 4; ++n) {
    GridFunction2D direct(b, 4);
    for (const auto& t : pair.terms()) direct.values() += t.lambda * partial_sum(t.atom.values, b.product(n), b.product(n)).values();
    CHECK(oracle::max_abs(compose(pair, n).values(), direct.values()) < 1e-10);
    CHECK(oracle::max_abs(cond_expectation(top, n).values(), compose(pair, n).values()) < 1e-10);
  }
  CHECK_THROWS_AS(compose(pair, 5), Error);

  Atom bad = random_atom(b, 4, 1, 0.75, 1);
  bad.values(0, 0) += 1.0;
  CHECK_THROWS_AS(pair.add(1.0, bad), Error);
}

TEST_CASE("band form matches the dense martingale") {
  const Base b = parse_base("2x6");
  const std::vector<int> alphas{1, 3, 4};
  const AtomicDecomposition d = thm3b_martingale(b, 6, alphas, 0.5, 3);
  const KernelCache cache(b, 6);
  CHECK(oracle::max_abs(band_form(d).materialize(cache).values(), compose(d, 6).values()) < 1e-9);
  AtomicDecomposition r(b, 6, 0.5);
  r.add(1.0, random_atom(b, 6, 1, 0.5, 1), {Family::random_atom, 0, 0, 1, 1});
  CHECK_THROWS_AS(band_form(r), Error);
}

TEST_CASE("manifests regenerate decompositions") {
  const Base b = parse_base("2,3x3");
  AtomicDecomposition d(b, 5, 0.5);
  d.add(0.25, random_atom(b, 5, 2, 0.5, 77), {Family::random_atom, 0, 0, 77, 2});
  d.add(1.0 / 3.0, kernel_difference_atom(b, 5, 0.5, 1, 2, 1), {Family::thm3b, 1, 2, 0, 1});
  d.add(0.1, kernel_difference_atom(b, 5, 0.5, 2, 4, 4), {Family::thm4b, 2, 4, 0, 2});
  const std::string text = to_manifest(d);
  CHECK(text.find("\"values\"") == std::string::npos);
  const AtomicDecomposition back = from_manifest(text);
  REQUIRE(back.terms().size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.terms()[i].lambda == d.terms()[i].lambda);
    CHECK(back.terms()[i].atom.values.values() == d.terms()[i].atom.values.values());
  }
  CHECK(to_manifest(back) == text);
  CHECK_THROWS_AS(from_manifest("{}"), Error);
  CHECK_THROWS_AS(from_manifest("not json"), Error);
}
