#include <doctest.h>

#include <cmath>

#include "stiffkit/exact.hpp"

using namespace stiffkit;

TEST_CASE("make_rational reduces and rejects zero denominators") {
  CHECK(to_string(make_rational(45, 24)) == "15/8");
  CHECK(to_string(make_rational(-7, 7)) == "-1");
  CHECK(to_string(make_rational(3, -6)) == "-1/2");
  CHECK_THROWS_AS(make_rational(1, 0), InvalidArgument);
}

TEST_CASE("parse_rational accepts fractions and decimals") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-6/4") == make_rational(-3, 2));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational("-1.5") == make_rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("split_square_factor") {
  auto s = split_square_factor(72);  // 36 * 2
  CHECK(s.square_root_part == 6);
  CHECK(s.square_free_part == 2);
  s = split_square_factor(0);
  CHECK(s.square_free_part * s.square_root_part * s.square_root_part == 0);
  s = split_square_factor(97);
  CHECK(s.square_root_part == 1);
  CHECK(s.square_free_part == 97);
}

TEST_CASE("surds are kept canonical") {
  const Surd a = Surd::normalized(1, 8);  // sqrt(8) = 2 sqrt(2)
  CHECK(a.coeff() == 2);
  CHECK(a.radicand() == 2);
  CHECK(Surd::normalized(3, 9) == Surd(9));
  CHECK(Surd::normalized(0, 5) == Surd(0));
  CHECK(Surd::normalized(0, 5).radicand() == 1);
  CHECK(Surd::inverse_sqrt(2) == Surd::normalized(make_rational(1, 2), 2));
  CHECK(Surd::inverse_sqrt(2).square() == make_rational(1, 2));
  CHECK_THROWS_AS(Surd::normalized(1, -3), InvalidArgument);
}

TEST_CASE("surd arithmetic") {
  const Surd r2 = Surd::normalized(1, 2), r3 = Surd::normalized(1, 3);
  CHECK(r2 * r2 == Surd(2));
  CHECK(r2 * r3 == Surd::normalized(1, 6));
  CHECK(r2 + r2 == Surd::normalized(2, 2));
  CHECK((r2 - r2).is_zero());
  CHECK(Surd(0) + r3 == r3);
  CHECK_THROWS_AS(r2 + r3, MixedRadicand);
  CHECK(r2 / Rational(4) == Surd::normalized(make_rational(1, 4), 2));
  CHECK((-r2).sign() == -1);
  CHECK(r2.to_double() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("surd ordering compares squares exactly") {
  const Surd a = Surd::normalized(1, 2);            // 1.41421...
  const Surd b = Surd(make_rational(141421, 100000));  // just below
  CHECK(b < a);
  CHECK(-a < -b);
  CHECK(-a < Surd(0));
  CHECK(Surd::normalized(1, 3) > Surd::normalized(1, 2));
  CHECK(surd_cmp(a, a) == std::strong_ordering::equal);
}

TEST_CASE("surd parsing and printing round-trip") {
  for (const char* text : {"0", "-3/4", "sqrt(2)", "-1/2*sqrt(2)", "5/3*sqrt(7)"}) {
    const Surd s = Surd::parse(text);
    CHECK(Surd::parse(s.str()) == s);
  }
  CHECK(Surd::parse("-1/2*sqrt(2)") == Surd::normalized(make_rational(-1, 2), 2));
  CHECK(Surd::parse("sqrt(8)") == Surd::normalized(2, 2));
  CHECK(Surd::parse("-sqrt(3)/3") == Surd::normalized(make_rational(-1, 3), 3));
  CHECK(Surd::parse("0.5") == Surd(make_rational(1, 2)));
  CHECK_THROWS_AS(Surd::parse("sqrt(-2)"), Error);
  CHECK_THROWS_AS(Surd::parse("x"), Error);
}

TEST_CASE("quadratic field arithmetic") {
  const QuadraticValue x(1, 1, 2);  // 1 + sqrt2
  const QuadraticValue y(1, -1, 2);  // 1 - sqrt2
  const QuadraticValue p = x * y;
  CHECK(p == QuadraticValue(-1, 0, 2));
  CHECK(p.is_rational());
  CHECK(x / x == QuadraticValue(1, 0, 2));
  CHECK((x + y).as_surd() == Surd(2));
  CHECK((x - y).as_surd() == Surd::normalized(2, 2));
  CHECK(x.to_double() == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(QuadraticValue::from_surd(Surd::normalized(3, 2), 2) == QuadraticValue(0, 3, 2));
  CHECK_THROWS_AS(QuadraticValue::from_surd(Surd::normalized(1, 3), 2), MixedRadicand);
  CHECK_THROWS(x * QuadraticValue(0, 1, 3));
}

TEST_CASE("recognize_rational") {
  auto q = recognize_rational(0.2857142857142857, 100, 1e-12);
  REQUIRE(q.has_value());
  CHECK(*q == make_rational(2, 7));
  CHECK_FALSE(recognize_rational(std::sqrt(2.0), 50, 1e-12).has_value());
  CHECK(*recognize_rational(-0.125, 10, 1e-15) == make_rational(-1, 8));
}
