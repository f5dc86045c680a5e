#pragma once

// Exact scalars: GMP rationals and quadratic surds c*sqrt(r).

#include <compare>
#include <optional>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "stiffkit/error.hpp"

namespace stiffkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds the reduced fraction num/den. Throws InvalidArgument when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Renders as "p" or "p/q".
std::string to_string(const Rational& q);

/// Parses "p", "-p/q" or a decimal literal such as "0.25".
Rational parse_rational(std::string_view text);

/// Largest s with s*s dividing n, together with n / (s*s).
/// n must be non-negative.
struct SquareSplit {
  Integer square_root_part;
  Integer square_free_part;
};
SquareSplit split_square_factor(const Integer& n);

/// A real number of the form coeff * sqrt(radicand), radicand square-free.
///
/// Values are kept canonical: every square factor of the radicand is moved
/// into the coefficient and zero is stored as 0 * sqrt(1), so structural
/// equality is value equality.
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& value);  // NOLINT: rationals embed implicitly
  Surd(long value) : Surd(Rational(value)) {}
  Surd(int value) : Surd(Rational(value)) {}

  /// Canonical form of c * sqrt(r); r must be >= 0.
  static Surd normalized(const Rational& c, const Integer& r);

  /// The exact value 1/sqrt(n) for n > 0.
  static Surd inverse_sqrt(const Integer& n);

  /// Parses "p/q", "p/q*sqrt(r)", "sqrt(r)", "-sqrt(r)/q" and plain decimals.
  static Surd parse(std::string_view text);

  const Rational& coeff() const { return coeff_; }
  const Integer& radicand() const { return radicand_; }

  bool is_rational() const { return radicand_ == 1; }
  bool is_zero() const { return sgn(coeff_) == 0; }
  int sign() const { return sgn(coeff_); }

  /// coeff^2 * radicand, exactly.
  Rational square() const;
  double to_double() const;

  Surd operator-() const;
  friend Surd operator*(const Surd& a, const Surd& b);
  friend Surd operator/(const Surd& a, const Rational& q);
  /// Sums are closed only when radicands agree (or one side is zero);
  /// anything else throws MixedRadicand.
  friend Surd operator+(const Surd& a, const Surd& b);
  friend Surd operator-(const Surd& a, const Surd& b);

  friend bool operator==(const Surd& a, const Surd& b) {
    return a.radicand_ == b.radicand_ && a.coeff_ == b.coeff_;
  }
  friend std::strong_ordering operator<=>(const Surd& a, const Surd& b);

  /// "p/q" when rational, "p/q*sqrt(r)" otherwise.
  std::string str() const;

 private:
  Rational coeff_{0};
  Integer radicand_{1};
};

/// Total order on surds, decided by sign and then by comparing squares.
std::strong_ordering surd_cmp(const Surd& a, const Surd& b);

/// Element a + b*sqrt(r) of the quadratic field Q(sqrt(r)).
///
/// Used where products and sums of nodes sharing one radicand must stay
/// exact (fundamental polynomials, evaluation at surd points).
class QuadraticValue {
 public:
  QuadraticValue() = default;
  explicit QuadraticValue(Integer radicand) : radicand_(std::move(radicand)) {}
  QuadraticValue(Rational rational_part, Rational surd_part, Integer radicand)
      : a_(std::move(rational_part)), b_(std::move(surd_part)), radicand_(std::move(radicand)) {}

  /// Embeds a surd whose radicand is 1 or equal to `radicand`.
  static QuadraticValue from_surd(const Surd& s, const Integer& radicand);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const Integer& radicand() const { return radicand_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0 || radicand_ == 1; }
  /// The value as a Surd when one of the two parts vanishes.
  Surd as_surd() const;
  double to_double() const;

  QuadraticValue& operator+=(const QuadraticValue& o);
  QuadraticValue& operator-=(const QuadraticValue& o);
  QuadraticValue& operator*=(const QuadraticValue& o);
  QuadraticValue& operator/=(const QuadraticValue& o);
  friend QuadraticValue operator+(QuadraticValue a, const QuadraticValue& b) { return a += b; }
  friend QuadraticValue operator-(QuadraticValue a, const QuadraticValue& b) { return a -= b; }
  friend QuadraticValue operator*(QuadraticValue a, const QuadraticValue& b) { return a *= b; }
  friend QuadraticValue operator/(QuadraticValue a, const QuadraticValue& b) { return a /= b; }
  friend bool operator==(const QuadraticValue& x, const QuadraticValue& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (sgn(x.b_) == 0 || x.radicand_ == y.radicand_);
  }

 private:
  void check_field(const QuadraticValue& o) const;

  Rational a_{0};
  Rational b_{0};
  Integer radicand_{1};
};

}  // namespace stiffkit

namespace stiffkit {

/// Best rational approximation of x with denominator <= max_den (continued
/// fractions); nullopt when none lies within `tol` of x.
std::optional<Rational> recognize_rational(double x, long max_den, double tol);

}  // namespace stiffkit
