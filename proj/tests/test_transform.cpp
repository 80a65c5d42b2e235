#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "vilenkin/grid_io.hpp"
#include "vilenkin/transform.hpp"

using namespace vilenkin;

TEST_CASE("unit roots are exact at quarter turns") {
  CHECK(unit_root(0, 4) == cdouble(1, 0));
  CHECK(unit_root(1, 4) == cdouble(0, 1));
  CHECK(unit_root(2, 4) == cdouble(-1, 0));
  CHECK(unit_root(3, 4) == cdouble(0, -1));
  CHECK(unit_root(1, 2) == cdouble(-1, 0));
  CHECK(unit_root(7, 4) == cdouble(0, -1));
}

TEST_CASE("characters match the digit formula") {
  for (const char* spec : {"2,3,4", "3,3,2", "2x5"}) {
    const Base b = parse_base(spec);
    const int N = b.depth();
    const Index M = b.product(N);
    for (Index n = 0; n < M; ++n)
      for (Index x = 0; x < M; ++x) {
        const cdouble c = character(b, N, n, x);
        CHECK(std::abs(c - oracle::character(b, N, n, x)) < 1e-13);
        CHECK(c == character(n, point_of(x, b, N)));
      }
    // psi_n(x + t) = psi_n(x) psi_n(t)
    for (Index n = 0; n < M; n += 3)
      for (Index x = 0; x < M; x += 2)
        for (Index t = 0; t < M; t += 5)
          CHECK(std::abs(character(b, N, n, index_add(b, N, x, t)) - character(b, N, n, x) * character(b, N, n, t)) <
                1e-13);
  }
}

TEST_CASE("characters are orthonormal") {
  const Base b = parse_base("2,3,4,2");
  const Eigen::MatrixXcd psi = character_matrix(b, 4);
  const Eigen::MatrixXcd gram = psi.adjoint() * psi / static_cast<double>(psi.rows());
  CHECK((gram - Eigen::MatrixXcd::Identity(psi.rows(), psi.rows())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fast transform agrees with the naive one") {
  for (const char* spec : {"2x7", "2,3,4,2,3", "5,3,2"}) {
    const Base b = parse_base(spec);
    const int N = b.depth();
    const GridFunction2D f2 = oracle::random_grid(b, N, 11);
    GridFunction1D f1(b, N, f2.values().col(0));
    CHECK(oracle::max_abs(forward(f1, Mode::fast).values(), forward(f1, Mode::naive).values()) < 1e-12);
    CHECK(oracle::max_abs(inverse(forward(f1)).values(), f1.values()) < 1e-12);
    const Spectrum1D s1(b, N, f1.values());
    CHECK(oracle::max_abs(inverse(s1, Mode::fast).values(), inverse(s1, Mode::naive).values()) < 1e-10);
    if (b.product(N) <= 150) {
      CHECK(oracle::max_abs(forward(f2, Mode::fast).values(), forward(f2, Mode::naive).values()) < 1e-12);
      const Spectrum2D s2(b, N, f2.values());
      CHECK(oracle::max_abs(inverse(s2, Mode::fast).values(), inverse(s2, Mode::naive).values()) < 1e-10);
    }
    CHECK(oracle::max_abs(inverse(forward(f2)).values(), f2.values()) < 1e-12);
  }
}

TEST_CASE("forward transform equals the defining integral") {
  const Base b = parse_base("3,2,2");
  const GridFunction2D f = oracle::random_grid(b, 3, 5);
  CHECK(oracle::max_abs(forward(f).values(), oracle::coefficients(f)) < 1e-13);
}

TEST_CASE("tensor characters have delta spectra") {
  const Base b = parse_base("2,3,2");
  const GridFunction2D f = tensor(character_grid(b, 3, 3), character_grid(b, 3, 5));
  const Spectrum2D s = forward(f);
  for (Index i = 0; i < 12; ++i)
    for (Index j = 0; j < 12; ++j) CHECK(std::abs(s(i, j) - cdouble(i == 3 && j == 5 ? 1.0 : 0.0)) < 1e-14);
}

TEST_CASE("grid files round trip bit for bit") {
  const Base b = parse_base("2,3x2");
  const GridFunction2D f = oracle::random_grid(b, 4, 3);
  std::stringstream io;
  write_grid(io, GridHeader{b, 4, 2}, GridPayload(std::in_place_type<Eigen::MatrixXcd>, f.values()));
  const GridFile back = read_grid(io);
  CHECK(back.header.base == b);
  CHECK(back.header.depth == 4);
  CHECK(std::get<Eigen::MatrixXcd>(back.values) == f.values());

  std::stringstream bad("not a grid\n");
  CHECK_THROWS_AS(read_grid(bad), Error);
  std::stringstream truncated("vilenkin-grid v1; base=2x2; depth=2; dims=1\n1,0\n");
  CHECK_THROWS_AS(read_grid(truncated), Error);
}
