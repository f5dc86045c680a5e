#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "stiffkit/gegenbauer.hpp"

using namespace stiffkit;

TEST_CASE("moments of the normalised weight") {
  for (int d = 1; d <= 8; ++d) {
    CHECK(moment(d, 0) == 1);
    CHECK(moment(d, 1) == 0);
    CHECK(moment(d, 5) == 0);
    // E[t^2] for one coordinate of a uniform point on S^d is 1/(d+1)
    CHECK(moment(d, 2) == make_rational(1, d + 1));
    // E[t^4] = 3 / ((d+1)(d+3))
    CHECK(moment(d, 4) == make_rational(3, (d + 1) * (d + 3)));
  }
  CHECK(moment(2, 2) == make_rational(1, 3));
}

TEST_CASE("moments agree with numerical quadrature") {
  for (int d : {3, 4, 7}) {
    for (int k : {2, 6}) {
      // midpoint rule on the substitution t = cos(theta): weight sin^{d-1}
      const int steps = 200000;
      double num = 0, den = 0;
      for (int s = 0; s < steps; ++s) {
        const double th = (s + 0.5) * std::numbers::pi / steps;
        const double w = std::pow(std::sin(th), d - 1);
        num += std::pow(std::cos(th), k) * w;
        den += w;
      }
      CHECK(moment(d, k).get_d() == doctest::Approx(num / den).epsilon(1e-9));
    }
  }
}

TEST_CASE("P_n against the three-term recurrence") {
  for (int d = 1; d <= 9; ++d)
    for (int n = 0; n <= 10; ++n) {
      const Polynomial& p = gegenbauer_poly(d, n);
      CHECK(p.degree() == n);
      CHECK(p(Rational(1)) == 1);
      for (int k = -5; k <= 5; ++k) {
        const Rational t = make_rational(k, 5);
        CHECK(p(t) == oracle::gegenbauer(d, n, t));
      }
    }
}

TEST_CASE("known closed forms") {
  CHECK(gegenbauer_poly(2, 2) == Polynomial({make_rational(-1, 2), 0, make_rational(3, 2)}));  // Legendre
  CHECK(gegenbauer_poly(1, 3) == Polynomial({0, -3, 0, 4}));                                 // Chebyshev T_3
  CHECK(gegenbauer_poly(7, 2).str() == "-1/7 + 8/7*t^2");
}

TEST_CASE("orthogonality and norms") {
  for (int d : {1, 2, 5, 7})
    for (int n = 0; n <= 8; ++n) {
      for (int j = 0; j < n; ++j) CHECK(a0(gegenbauer_poly(d, n) * gegenbauer_poly(d, j), d) == 0);
      CHECK(gegenbauer_norm_sq(d, n) == a0(gegenbauer_poly(d, n) * gegenbauer_poly(d, n), d));
      CHECK(sgn(gegenbauer_norm_sq(d, n)) > 0);
    }
  CHECK(gegenbauer_norm_sq(2, 3) == make_rational(1, 7));  // Legendre: 1/(2n+1)
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial p({1, 2});      // 1 + 2t
  const Polynomial q({-1, 0, 3});  // -1 + 3t^2
  CHECK((p * q) == Polynomial({-1, -2, 3, 6}));
  CHECK((p + q) == Polynomial({0, 2, 3}));
  CHECK((q - q).is_zero());
  CHECK((q - q).degree() == -1);
  CHECK(q.derivative() == Polynomial({0, 6}));
  CHECK(Polynomial::monomial(3).degree() == 3);
  CHECK((Rational(2) * p) == Polynomial({2, 4}));
  CHECK(q(0.5) == doctest::Approx(-0.25));
  const QuadraticValue r(0, 1, 3);  // sqrt3
  CHECK(q(r) == QuadraticValue(8, 0, 3));
}

TEST_CASE("two-point nodes are +-1/sqrt(d+1) with weights 1/2") {
  for (int d = 1; d <= 12; ++d) {
    const NodeSet& ns = nodes(d, 2);
    REQUIRE(ns.exact);
    REQUIRE(ns.exact_nodes.size() == 2);
    CHECK(ns.exact_nodes[1] == Surd::inverse_sqrt(d + 1));
    CHECK(ns.exact_nodes[0] == -Surd::inverse_sqrt(d + 1));
    CHECK(ns.weights_exact);
    CHECK(ns.exact_weights == std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)});
    CHECK(ns.common_radicand() == Surd::inverse_sqrt(d + 1).radicand());
  }
}

TEST_CASE("node sets are zeros and weights sum to one") {
  for (int d : {1, 2, 3, 7})
    for (int m = 1; m <= 6; ++m) {
      const NodeSet& ns = nodes(d, m);
      REQUIRE(ns.nodes.size() == static_cast<std::size_t>(m));
      double total = 0;
      for (std::size_t i = 0; i < ns.nodes.size(); ++i) {
        CHECK(std::abs(oracle::gegenbauer(d, m, ns.nodes[i])) < 1e-12);
        if (i > 0) CHECK(ns.nodes[i] > ns.nodes[i - 1]);
        CHECK(ns.weights[i] > 0);
        total += ns.weights[i];
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      const auto cw = christoffel_weights(d, ns.nodes);
      for (std::size_t i = 0; i < cw.size(); ++i) CHECK(cw[i] == doctest::Approx(ns.weights[i]).epsilon(1e-10));
    }
}

TEST_CASE("Gauss quadrature is exact up to degree 2m-1") {
  for (int d : {2, 5})
    for (int m = 2; m <= 5; ++m) {
      const NodeSet& ns = nodes(d, m);
      for (int k = 0; k <= 2 * m - 1; ++k) {
        double q = 0;
        for (std::size_t i = 0; i < ns.nodes.size(); ++i) q += ns.weights[i] * std::pow(ns.nodes[i], k);
        CHECK(q == doctest::Approx(moment(d, k).get_d()).epsilon(1e-11));
      }
    }
}

TEST_CASE("Chebyshev nodes on the circle are exact where they are surds") {
  const NodeSet& ns = nodes(1, 4);  // cos((2k-1) pi / 8) is not a single surd
  CHECK(ns.nodes.size() == 4);
  const NodeSet& three = nodes(1, 3);  // 0, +-sqrt(3)/2
  REQUIRE(three.exact);
  CHECK(three.exact_nodes[2] == Surd::normalized(make_rational(1, 2), 3));
  CHECK(three.exact_nodes[1] == Surd(0));
}

TEST_CASE("lagrange weights") {
  const std::vector<Surd> t{-Surd::inverse_sqrt(3), Surd::inverse_sqrt(3)};
  CHECK(lagrange_weights(2, t) == std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)});
  CHECK_THROWS_AS(lagrange_weights(2, {Surd::inverse_sqrt(2), Surd::inverse_sqrt(3)}), MixedRadicand);
}
