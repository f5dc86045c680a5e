#include "stiffkit/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace stiffkit {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int k) {
  std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
  c.back() = 1;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Polynomial::operator()(double t) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

QuadraticValue Polynomial::operator()(const QuadraticValue& t) const {
  QuadraticValue acc(t.radicand());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += QuadraticValue(*it, Rational(0), t.radicand());
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Rational> c(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) c[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
  return Polynomial(std::move(c));
}

std::vector<double> Polynomial::to_double() const {
  std::vector<double> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] = coeffs_[k].get_d();
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
  std::vector<Rational> c = p.coeffs_;
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

std::string Polynomial::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    if (!first) os << (sgn(coeffs_[k]) < 0 ? " - " : " + ");
    Rational mag = first ? coeffs_[k] : abs(coeffs_[k]);
    if (k == 0 || mag != 1) os << to_string(mag) << (k > 0 ? "*" : "");
    if (k == 1) os << "t";
    if (k > 1) os << "t^" << k;
    first = false;
  }
  return os.str();
}

Rational moment(int d, int k) {
  if (d < 1 || k < 0) throw InvalidArgument("moment needs d >= 1 and k >= 0");
  if (k % 2 == 1) return Rational(0);
  // t^2 is Beta(1/2, d/2) distributed: mu_{2j} = mu_{2j-2} * (2j-1)/(2j-1+d)
  Rational mu = 1;
  for (int j = 2; j <= k; j += 2) mu *= make_rational(j - 1, j - 1 + d);
  return mu;
}

Rational a0(const Polynomial& q, int d) {
  Rational s = 0;
  const auto& c = q.coeffs();
  for (std::size_t k = 0; k < c.size(); k += 2) s += c[k] * moment(d, static_cast<int>(k));
  return s;
}

namespace {

struct PolyTable {
  std::shared_mutex mutex;
  std::map<int, std::vector<std::unique_ptr<Polynomial>>> by_dim;
};

PolyTable& poly_table() {
  static PolyTable table;
  return table;
}

Rational inner(const Polynomial& a, const Polynomial& b, int d) { return a0(a * b, d); }

}  // namespace

const Polynomial& gegenbauer_poly(int d, int n) {
  if (d < 1 || n < 0) throw InvalidArgument("gegenbauer_poly needs d >= 1 and n >= 0");
  auto& table = poly_table();
  {
    std::shared_lock lock(table.mutex);
    auto it = table.by_dim.find(d);
    if (it != table.by_dim.end() && static_cast<int>(it->second.size()) > n) return *it->second[n];
  }
  std::unique_lock lock(table.mutex);
  auto& polys = table.by_dim[d];
  while (static_cast<int>(polys.size()) <= n) {
    const int k = static_cast<int>(polys.size());
    Polynomial p = Polynomial::monomial(k);
    Polynomial t_k = p;
    for (int j = 0; j < k; ++j) {
      const Polynomial& q = *polys[j];
      p = p - (inner(t_k, q, d) / inner(q, q, d)) * q;
    }
    Rational at_one = p(Rational(1));
    if (sgn(at_one) == 0) throw NumericFailure("Gegenbauer polynomial vanishes at 1");
    polys.push_back(std::make_unique<Polynomial>((1 / at_one) * p));
  }
  return *polys[n];
}

Rational gegenbauer_norm_sq(int d, int n) {
  const auto& p = gegenbauer_poly(d, n);
  return a0(p * p, d);
}

namespace {

int exact_sign(const Polynomial& p, double t) { return sgn(p(Rational(t))); }

// Zeros of p in (-1, 1), all simple: bracketed on a refining grid,
// then bisected with exact sign evaluation at the (binary) midpoints.
std::vector<double> real_roots(const Polynomial& p) {
  const int m = p.degree();
  std::vector<std::pair<double, double>> brackets;
  std::vector<double> exact_hits;
  for (long grid = 8L * std::max(m, 1); grid <= (1L << 24); grid *= 2) {
    brackets.clear();
    exact_hits.clear();
    double prev_t = -1.0;
    int prev_s = exact_sign(p, prev_t);
    for (long k = 1; k <= grid; ++k) {
      double t = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(grid);
      int s = exact_sign(p, t);
      if (s == 0) {
        exact_hits.push_back(t);
        prev_s = 0;  // the sign flips across a simple root; no bracket
        continue;
      }
      if (prev_s != 0 && s != prev_s) brackets.emplace_back(prev_t, t);
      prev_t = t;
      prev_s = s;
    }
    if (static_cast<int>(brackets.size() + exact_hits.size()) == m) break;
  }
  if (static_cast<int>(brackets.size() + exact_hits.size()) != m)
    throw NumericFailure("could not isolate all roots of " + p.str());
  std::vector<double> roots = exact_hits;
  for (auto [lo, hi] : brackets) {
    int s_lo = exact_sign(p, lo);
    for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      int s = exact_sign(p, mid);
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      if (s == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Recognises the root t as +-sqrt(s) with rational s and verifies p(t) = 0 exactly.
std::optional<Surd> exact_root(const Polynomial& p, double t) {
  if (t == 0.0) {
    if (sgn(p(Rational(0))) == 0) return Surd();
    return std::nullopt;
  }
  auto s = recognize_rational(t * t, 1000000, 1e-12);
  if (!s || sgn(*s) <= 0) return std::nullopt;
  // sqrt(p/q) = sqrt(p*q)/q
  Surd root = Surd::normalized(make_rational(1, s->get_den()), s->get_num() * s->get_den());
  if (t < 0) root = -root;
  QuadraticValue at = p(QuadraticValue::from_surd(root, root.radicand()));
  if (!at.is_zero()) return std::nullopt;
  return root;
}

struct NodeTable {
  std::mutex mutex;
  std::map<std::pair<int, int>, std::unique_ptr<NodeSet>> sets;
};

NodeTable& node_table() {
  static NodeTable table;
  return table;
}

NodeSet compute_nodes(int d, int m) {
  NodeSet ns;
  ns.d = d;
  ns.m = m;
  const Polynomial& p = gegenbauer_poly(d, m);
  ns.nodes = real_roots(p);
  std::vector<Surd> exact;
  for (double t : ns.nodes) {
    auto r = exact_root(p, t);
    if (!r) break;
    exact.push_back(*r);
  }
  if (exact.size() == ns.nodes.size()) {
    ns.exact = true;
    ns.exact_nodes = std::move(exact);
    for (std::size_t i = 0; i < ns.nodes.size(); ++i) ns.nodes[i] = ns.exact_nodes[i].to_double();
    if (ns.common_radicand() != 0) {
      ns.exact_weights = lagrange_weights(d, ns.exact_nodes);
      ns.weights_exact = true;
      for (const auto& w : ns.exact_weights) ns.weights.push_back(w.get_d());
    }
  }
  if (!ns.weights_exact) ns.weights = christoffel_weights(d, ns.nodes);
  return ns;
}

}  // namespace

Integer NodeSet::common_radicand() const {
  if (!exact) return 0;
  Integer r = 1;
  for (const auto& s : exact_nodes) {
    if (s.is_rational()) continue;
    if (r == 1) {
      r = s.radicand();
    } else if (r != s.radicand()) {
      return 0;
    }
  }
  return r;
}

const NodeSet& nodes(int d, int m) {
  if (d < 1 || m < 1) throw InvalidArgument("nodes need d >= 1 and m >= 1");
  auto& table = node_table();
  std::lock_guard lock(table.mutex);
  auto& slot = table.sets[{d, m}];
  if (!slot) slot = std::make_unique<NodeSet>(compute_nodes(d, m));
  return *slot;
}

std::vector<double> christoffel_weights(int d, const std::vector<double>& node_values) {
  const int m = static_cast<int>(node_values.size());
  std::vector<double> out;
  for (double x : node_values) {
    double s = 0;
    for (int k = 0; k < m; ++k) {
      double pk = gegenbauer_poly(d, k)(x);
      s += pk * pk / gegenbauer_norm_sq(d, k).get_d();
    }
    out.push_back(1.0 / s);
  }
  return out;
}

std::vector<Rational> lagrange_weights(int d, const std::vector<Surd>& node_values) {
  Integer r = 1;
  for (const auto& s : node_values) {
    if (s.is_rational()) continue;
    if (r != 1 && r != s.radicand()) throw MixedRadicand("nodes do not share one radicand");
    r = s.radicand();
  }
  const std::size_t m = node_values.size();
  std::vector<QuadraticValue> kappa;
  for (const auto& s : node_values) kappa.push_back(QuadraticValue::from_surd(s, r));
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < m; ++i) {
    // phi_i = prod_{j != i} (t - kappa_j) / (kappa_i - kappa_j), coefficients in Q(sqrt(r))
    std::vector<QuadraticValue> coeffs{QuadraticValue(Rational(1), Rational(0), r)};
    QuadraticValue denom(Rational(1), Rational(0), r);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      std::vector<QuadraticValue> next(coeffs.size() + 1, QuadraticValue(r));
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        next[k + 1] += coeffs[k];
        next[k] -= coeffs[k] * kappa[j];
      }
      coeffs = std::move(next);
      denom *= kappa[i] - kappa[j];
    }
    QuadraticValue total(r);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      total += coeffs[k] * QuadraticValue(moment(d, static_cast<int>(k)), Rational(0), r);
    total /= denom;
    if (!total.is_rational()) throw NumericFailure("fundamental polynomial has an irrational zeroth coefficient");
    weights.push_back(total.rational_part() + (r == 1 ? total.surd_part() : Rational(0)));
  }
  return weights;
}

}  // namespace stiffkit
