#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "stiffkit/codes.hpp"

using namespace stiffkit;

TEST_CASE("constructor sizes and norms") {
  CHECK(cross_polytope(5).size() == 10);
  CHECK(cube(4).size() == 16);
  CHECK(cube(4).norm_sq() == 4);
  CHECK(demicube(5, Parity::Even).size() == 16);
  CHECK(demicube(5, Parity::Odd).size() == 16);
  CHECK(e8_roots().size() == 240);
  CHECK(polytope_2_41().size() == 2160);
  CHECK(polytope_2_41().norm_sq() == 16);
  CHECK(ngon(7).size() == 7);
}

TEST_CASE("demicube parity counts negative coordinates") {
  for (Parity parity : {Parity::Even, Parity::Odd}) {
    const LatticeCode h = demicube(6, parity);
    for (std::size_t i = 0; i < h.size(); ++i) {
      int negatives = 0;
      for (auto x : h.point(i)) negatives += x < 0;
      CHECK((negatives % 2 == 0) == (parity == Parity::Even));
    }
  }
}

TEST_CASE("e8_roots matches the norm-8 shell of the doubled lattice") {
  std::vector<std::int64_t> coords;
  for (const auto& y : oracle::e8_shell_doubled(8)) coords.insert(coords.end(), y.begin(), y.end());
  CHECK(same_point_set(e8_roots(), LatticeCode("shell", 8, 8, coords)));
}

TEST_CASE("2_41 integer dots from one point are multiples of 4") {
  const LatticeCode code = polytope_2_41();
  std::set<std::int64_t> dots;
  for (std::size_t j = 0; j < code.size(); ++j) dots.insert(code.int_dot(0, j));
  CHECK(dots == std::set<std::int64_t>{-16, -12, -8, -4, 0, 4, 8, 12, 16});
  CHECK(code.unit_dot(0, 0) == 1);
}

TEST_CASE("LatticeCode validation") {
  CHECK_THROWS_AS(LatticeCode("bad", 2, 1, {1, 0, 1, 1}), InvalidArgument);   // wrong norm
  CHECK_THROWS_AS(LatticeCode("dup", 2, 1, {1, 0, 1, 0}), InvalidArgument);   // duplicate
  CHECK_THROWS_AS(LatticeCode("odd", 2, 1, {1, 0, 1}), InvalidArgument);      // ragged
  CHECK_THROWS_AS(LatticeCode::from_points("empty", 3, {}), InvalidArgument);
  const LatticeCode c = LatticeCode::from_points("pair", 2, {3, 4, -4, 3});
  CHECK(c.norm_sq() == 25);
  CHECK(c.unit_dot(0, 1) == 0);
  CHECK(c.max_abs_coord() == 4);
}

TEST_CASE("FloatCode validation") {
  CHECK_THROWS_AS(FloatCode("bad", 2, {1.0, 0.1}), InvalidArgument);
  CHECK_THROWS_AS(FloatCode("dup", 2, {1.0, 0.0, 1.0, 0.0}), InvalidArgument);
  CHECK_NOTHROW(FloatCode("ok", 2, {1.0, 1e-12}, 1e-9));
}

TEST_CASE("to_float normalises and same_point_set ignores order") {
  const LatticeCode c = cube(3);
  const FloatCode f = to_float(c);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double s = 0;
    for (double x : f.point(i)) s += x * x;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(oracle::same_sets(oracle::rows(c), oracle::cube_vertices(3), 1e-15));
  std::vector<std::int64_t> reversed;
  for (std::size_t i = c.size(); i-- > 0;) reversed.insert(reversed.end(), c.point(i).begin(), c.point(i).end());
  CHECK(same_point_set(c, LatticeCode("rev", 3, 3, reversed)));
  CHECK(same_point_set(Code(c), Code(f)));
  CHECK_FALSE(same_point_set(c, demicube(3)));
}

TEST_CASE("size cap guards the constructors") {
  Limits tight;
  tight.size_cap = 100;
  CHECK_THROWS_AS(cube(7, tight), CapExceeded);
  CHECK_NOTHROW(cube(6, tight));
  CHECK_THROWS_AS(cross_polytope(51, tight), CapExceeded);
  CHECK_THROWS_AS(cube(1), InvalidArgument);
  CHECK_THROWS_AS(ngon(1), InvalidArgument);
}

TEST_CASE("exact dots against a probe") {
  const ExactPoint p = ExactPoint::from_vector({1, 1, 0});
  CHECK(p.norm_sq == 2);
  const LatticeCode c = cross_polytope(3);
  CHECK(exact_dot(p, c, 0) == Surd::inverse_sqrt(2));
  CHECK(exact_dot(p, c, 5) == Surd(0));
  CHECK_THROWS_AS(ExactPoint::from_vector({0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(exact_dot(ExactPoint::from_vector({1, 0}), c, 0), InvalidArgument);
  const ExactPoint q = ExactPoint::of(cube(3), 0);
  CHECK(exact_dot(q, cube(3), 0) == Surd(1));
}

TEST_CASE("ngon points are equally spaced") {
  const FloatCode g = ngon(5);
  for (std::size_t i = 0; i < 5; ++i) {
    auto a = g.point(i), b = g.point((i + 1) % 5);
    CHECK(a[0] * b[0] + a[1] * b[1] == doctest::Approx(std::cos(2 * std::numbers::pi / 5)));
  }
}
