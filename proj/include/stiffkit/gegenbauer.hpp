#pragma once

// Gegenbauer machinery on S^d: moments of the weight (1-t^2)^{d/2-1}
// (normalised to a probability density), the polynomials P_n^{(d)} with
// P_n(1) = 1, zeroth coefficients, and Gauss-Gegenbauer nodes and weights.

#include <string>
#include <vector>

#include "stiffkit/exact.hpp"

namespace stiffkit {

/// Univariate polynomial with exact rational coefficients, ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial monomial(int k);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;

  Rational operator()(const Rational& t) const;
  double operator()(double t) const;
  /// Exact value at a point of Q(sqrt(r)).
  QuadraticValue operator()(const QuadraticValue& t) const;

  Polynomial derivative() const;
  std::vector<double> to_double() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// e.g. "-1/3 + t^2"
  std::string str() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// k-th moment of w_d: integral of t^k w_d(t) dt over [-1, 1]. d >= 1, k >= 0.
Rational moment(int d, int k);

/// Zeroth Gegenbauer coefficient: integral of q(t) w_d(t) dt.
Rational a0(const Polynomial& q, int d);

/// P_n^{(d)}, built by Gram-Schmidt on monomials and normalised at t = 1.
/// Results are memoised; the table is safe for concurrent readers.
const Polynomial& gegenbauer_poly(int d, int n);

/// Squared norm a0(P_n^2).
Rational gegenbauer_norm_sq(int d, int n);

/// Zeros of P_m^{(d)} with the matching Gauss-Gegenbauer weights a0(phi_i).
struct NodeSet {
  int d = 0;
  int m = 0;
  /// Nodes known exactly (every zero recognised as a surd and verified).
  bool exact = false;
  std::vector<Surd> exact_nodes;
  std::vector<double> nodes;  // ascending, always filled
  /// Weights computed by exact Lagrange interpolation.
  bool weights_exact = false;
  std::vector<Rational> exact_weights;
  std::vector<double> weights;  // always filled

  /// Common radicand of all nonzero exact nodes, or 0 if they differ / inexact.
  Integer common_radicand() const;
};

/// Node set of P_m^{(d)}, memoised. m >= 1, d >= 1.
const NodeSet& nodes(int d, int m);

/// Weights from the Christoffel formula 1 / sum_{k<m} P_k(x)^2 / h_k, in floating point.
std::vector<double> christoffel_weights(int d, const std::vector<double>& node_values);

/// Fundamental (Lagrange) polynomials for exact nodes sharing one radicand,
/// evaluated through a0. Returns the weights; throws MixedRadicand otherwise.
std::vector<Rational> lagrange_weights(int d, const std::vector<Surd>& node_values);

}  // namespace stiffkit
