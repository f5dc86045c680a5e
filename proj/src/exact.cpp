#include "stiffkit/exact.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace stiffkit {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw FormatError("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw FormatError("malformed integer '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw FormatError("malformed integer '" + std::string(s) + "'");
  std::string text(s[0] == '+' ? s.substr(1) : s);
  return Integer(text);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw FormatError("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos)
    return make_rational(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    Integer w = (whole.empty() || whole == "-" || whole == "+") ? Integer(0) : parse_integer(whole);
    if (frac.empty()) return Rational(w);
    Integer f = parse_integer(frac);
    if (f < 0) throw FormatError("malformed decimal '" + std::string(s) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational r = make_rational(f, scale);
    return negative ? Rational(Rational(w) - r) : Rational(Rational(w) + r);
  }
  return Rational(parse_integer(s));
}

SquareSplit split_square_factor(const Integer& n) {
  if (n < 0) throw InvalidArgument("square factor of a negative integer");
  if (n == 0) return {Integer(0), Integer(1)};
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return {root, Integer(1)};
  }
  Integer rest = n;
  Integer outside = 1;
  Integer inside = 1;
  for (Integer p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
    unsigned exponent = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++exponent;
    }
    for (unsigned e = 0; e + 1 < exponent; e += 2) outside *= p;
    if (exponent % 2 == 1) inside *= p;
  }
  inside *= rest;
  return {outside, inside};
}

Surd::Surd(const Rational& value) : coeff_(value), radicand_(1) {}

Surd Surd::normalized(const Rational& c, const Integer& r) {
  if (r < 0) throw InvalidArgument("negative radicand");
  Surd s;
  if (sgn(c) == 0 || r == 0) return s;
  auto split = split_square_factor(r);
  s.coeff_ = c * Rational(split.square_root_part);
  s.radicand_ = split.square_free_part;
  return s;
}

Surd Surd::inverse_sqrt(const Integer& n) {
  if (n <= 0) throw InvalidArgument("inverse square root of a non-positive integer");
  // 1/sqrt(n) = sqrt(n)/n
  return normalized(make_rational(1, n), n);
}

Surd Surd::parse(std::string_view text) {
  auto s = trim(text);
  auto pos = s.find("sqrt(");
  if (pos == std::string_view::npos) return Surd(parse_rational(s));
  auto close = s.find(')', pos);
  if (close == std::string_view::npos) throw FormatError("unterminated sqrt in '" + std::string(s) + "'");
  Integer r = parse_integer(s.substr(pos + 5, close - pos - 5));
  Rational c = 1;
  auto prefix = trim(s.substr(0, pos));
  if (!prefix.empty()) {
    if (prefix == "-") {
      c = -1;
    } else if (prefix == "+") {
      c = 1;
    } else {
      if (prefix.back() != '*') throw FormatError("expected '*' before sqrt in '" + std::string(s) + "'");
      c = parse_rational(prefix.substr(0, prefix.size() - 1));
    }
  }
  auto suffix = trim(s.substr(close + 1));
  if (!suffix.empty()) {
    if (suffix.front() != '/') throw FormatError("unexpected text after sqrt in '" + std::string(s) + "'");
    c /= parse_rational(suffix.substr(1));
  }
  return normalized(c, r);
}

Rational Surd::square() const { return coeff_ * coeff_ * Rational(radicand_); }

double Surd::to_double() const { return coeff_.get_d() * std::sqrt(radicand_.get_d()); }

Surd Surd::operator-() const {
  Surd s = *this;
  s.coeff_ = -s.coeff_;
  return s;
}

Surd operator*(const Surd& a, const Surd& b) {
  return Surd::normalized(a.coeff_ * b.coeff_, a.radicand_ * b.radicand_);
}

Surd operator/(const Surd& a, const Rational& q) {
  if (sgn(q) == 0) throw InvalidArgument("surd divided by zero");
  Surd s = a;
  s.coeff_ /= q;
  return s;
}

Surd operator+(const Surd& a, const Surd& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.radicand_ != b.radicand_)
    throw MixedRadicand("cannot add " + a.str() + " and " + b.str() + " exactly");
  Surd s = a;
  s.coeff_ += b.coeff_;
  if (sgn(s.coeff_) == 0) s.radicand_ = 1;
  return s;
}

Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }

std::strong_ordering surd_cmp(const Surd& a, const Surd& b) {
  int sa = a.sign();
  int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  int c = cmp(a.square(), b.square());
  // for negative values the larger square is the smaller number
  if (sa < 0) c = -c;
  return c <=> 0;
}

std::strong_ordering operator<=>(const Surd& a, const Surd& b) { return surd_cmp(a, b); }

std::string Surd::str() const {
  if (is_rational()) return to_string(coeff_);
  return to_string(coeff_) + "*sqrt(" + radicand_.get_str() + ")";
}

QuadraticValue QuadraticValue::from_surd(const Surd& s, const Integer& radicand) {
  if (s.is_rational()) return QuadraticValue(s.coeff(), Rational(0), radicand);
  if (s.radicand() != radicand)
    throw MixedRadicand("surd " + s.str() + " is outside Q(sqrt(" + radicand.get_str() + "))");
  return QuadraticValue(Rational(0), s.coeff(), radicand);
}

Surd QuadraticValue::as_surd() const {
  if (sgn(b_) == 0 || radicand_ == 1) return Surd(a_ + (radicand_ == 1 ? b_ : Rational(0)));
  if (sgn(a_) != 0) throw MixedRadicand("value has both a rational and an irrational part");
  return Surd::normalized(b_, radicand_);
}

double QuadraticValue::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(radicand_.get_d());
}

void QuadraticValue::check_field(const QuadraticValue& o) const {
  if (radicand_ != o.radicand_ && sgn(b_) != 0 && sgn(o.b_) != 0)
    throw MixedRadicand("quadratic values from different fields");
}

QuadraticValue& QuadraticValue::operator+=(const QuadraticValue& o) {
  check_field(o);
  if (sgn(b_) == 0) radicand_ = o.radicand_;
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadraticValue& QuadraticValue::operator-=(const QuadraticValue& o) {
  check_field(o);
  if (sgn(b_) == 0) radicand_ = o.radicand_;
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadraticValue& QuadraticValue::operator*=(const QuadraticValue& o) {
  check_field(o);
  if (sgn(b_) == 0) radicand_ = o.radicand_;
  Rational r(radicand_);
  Rational a = a_ * o.a_ + b_ * o.b_ * r;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  return *this;
}

QuadraticValue& QuadraticValue::operator/=(const QuadraticValue& o) {
  check_field(o);
  if (sgn(b_) == 0) radicand_ = o.radicand_;
  Rational r(radicand_);
  Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * r;
  if (sgn(norm) == 0) throw InvalidArgument("division by zero in Q(sqrt(r))");
  QuadraticValue conj(o.a_ / norm, -o.b_ / norm, radicand_);
  return *this *= conj;
}

}  // namespace stiffkit

namespace stiffkit {

std::optional<Rational> recognize_rational(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // convergents h/k of the continued fraction of x
  long h_prev = 1, h = static_cast<long>(std::floor(x));
  long k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  std::optional<Rational> best;
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= tol) {
      best = make_rational(Integer(h), Integer(k));
      break;
    }
    if (frac < 1e-300) break;
    double inv = 1.0 / frac;
    double a_d = std::floor(inv);
    if (a_d > 1e12) break;
    long a = static_cast<long>(a_d);
    frac = inv - a_d;
    long h_next = a * h + h_prev;
    long k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return best;
}

}  // namespace stiffkit
