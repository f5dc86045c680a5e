#include "stiffkit/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>

namespace stiffkit {

Limits Limits::from_env() {
  Limits limits;
  if (const char* env = std::getenv("STIFFKIT_SIZE_CAP")) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      limits.size_cap = value;
      limits.enumeration_cap = value;
    }
  }
  return limits;
}

const Limits& default_limits() {
  static const Limits limits = Limits::from_env();
  return limits;
}

namespace {

void check_cap(std::uint64_t n, const Limits& limits, const std::string& what) {
  if (n > limits.size_cap)
    throw CapExceeded(what + " would have " + std::to_string(n) + " points, above the size cap " +
                      std::to_string(limits.size_cap));
}

std::vector<std::int64_t> primitive(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  std::vector<std::int64_t> out(v.begin(), v.end());
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace

LatticeCode::LatticeCode(std::string name, int ambient_dim, std::int64_t norm_sq,
                         std::vector<std::int64_t> coords)
    : name_(std::move(name)), dim_(ambient_dim), norm_sq_(norm_sq), coords_(std::move(coords)) {
  if (dim_ < 1) throw InvalidArgument("ambient dimension must be positive");
  if (norm_sq_ < 1) throw InvalidArgument("norm_sq must be positive");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
    throw InvalidArgument("coordinate count is not a multiple of the dimension");
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    auto p = point(i);
    std::int64_t s = 0;
    for (auto x : p) {
      if (x > 3037000499 || x < -3037000499) throw InvalidArgument("coordinate out of range");
      s += x * x;
      max_abs_ = std::max(max_abs_, x < 0 ? -x : x);
    }
    if (s != norm_sq_)
      throw InvalidArgument("point " + std::to_string(i) + " of '" + name_ + "' has squared norm " +
                            std::to_string(s) + ", expected " + std::to_string(norm_sq_));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    auto pa = point(a);
    auto pb = point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  for (std::size_t k = 1; k < n; ++k) {
    auto pa = point(order[k - 1]);
    auto pb = point(order[k]);
    if (std::equal(pa.begin(), pa.end(), pb.begin()))
      throw InvalidArgument("duplicate point in '" + name_ + "'");
  }
}

LatticeCode LatticeCode::from_points(std::string name, int ambient_dim, std::vector<std::int64_t> coords) {
  if (coords.empty() || ambient_dim < 1) throw InvalidArgument("cannot infer norm of an empty code");
  std::int64_t s = 0;
  for (int k = 0; k < ambient_dim; ++k) s += coords[k] * coords[k];
  return LatticeCode(std::move(name), ambient_dim, s, std::move(coords));
}

std::int64_t LatticeCode::int_dot(std::size_t i, std::size_t j) const {
  auto a = point(i);
  auto b = point(j);
  std::int64_t s = 0;
  for (int k = 0; k < dim_; ++k) s += a[k] * b[k];
  return s;
}

Rational LatticeCode::unit_dot(std::size_t i, std::size_t j) const {
  return make_rational(Integer(static_cast<long>(int_dot(i, j))), Integer(static_cast<long>(norm_sq_)));
}

LatticeCode LatticeCode::renamed(std::string name) const {
  LatticeCode c = *this;
  c.name_ = std::move(name);
  return c;
}

FloatCode::FloatCode(std::string name, int ambient_dim, std::vector<double> coords, double tolerance)
    : name_(std::move(name)), dim_(ambient_dim), tolerance_(tolerance), coords_(std::move(coords)) {
  if (dim_ < 1) throw InvalidArgument("ambient dimension must be positive");
  if (!(tolerance_ > 0)) throw InvalidArgument("tolerance must be positive");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
    throw InvalidArgument("coordinate count is not a multiple of the dimension");
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (auto x : point(i)) s += x * x;
    if (!(std::abs(s - 1.0) <= tolerance_))
      throw InvalidArgument("point " + std::to_string(i) + " of '" + name_ + "' is off the unit sphere (|v|^2 = " +
                            std::to_string(s) + ")");
  }
  // duplicates: points closer than the tolerance are treated as equal
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [this](std::size_t a, std::size_t b) { return point(a)[0] < point(b)[0]; });
  const double eps = std::sqrt(tolerance_);
  for (std::size_t k = 0; k < n; ++k) {
    auto pa = point(order[k]);
    for (std::size_t l = k + 1; l < n; ++l) {
      auto pb = point(order[l]);
      if (pb[0] - pa[0] > eps) break;
      double dist = 0;
      for (int c = 0; c < dim_; ++c) dist += (pa[c] - pb[c]) * (pa[c] - pb[c]);
      if (dist < tolerance_ * tolerance_) throw InvalidArgument("duplicate point in '" + name_ + "'");
    }
  }
}

FloatCode FloatCode::renamed(std::string name) const {
  FloatCode c = *this;
  c.name_ = std::move(name);
  return c;
}

FloatCode to_float(const LatticeCode& code) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(code.norm_sq()));
  std::vector<double> coords(code.coords().size());
  std::transform(code.coords().begin(), code.coords().end(), coords.begin(),
                 [scale](std::int64_t x) { return static_cast<double>(x) * scale; });
  return FloatCode(code.name(), code.ambient_dim(), std::move(coords), 1e-12);
}

FloatCode to_float(const Code& code) {
  if (auto* lc = std::get_if<LatticeCode>(&code)) return to_float(*lc);
  return std::get<FloatCode>(code);
}

const std::string& code_name(const Code& code) {
  return std::visit([](const auto& c) -> const std::string& { return c.name(); }, code);
}

int ambient_dim(const Code& code) {
  return std::visit([](const auto& c) { return c.ambient_dim(); }, code);
}

std::size_t code_size(const Code& code) {
  return std::visit([](const auto& c) { return c.size(); }, code);
}

bool is_exact(const Code& code) { return std::holds_alternative<LatticeCode>(code); }

bool same_point_set(const Code& a, const Code& b, double tol) {
  if (ambient_dim(a) != ambient_dim(b) || code_size(a) != code_size(b)) return false;
  if (is_exact(a) && is_exact(b)) {
    const auto& la = std::get<LatticeCode>(a);
    const auto& lb = std::get<LatticeCode>(b);
    std::multiset<std::vector<std::int64_t>> sa;
    std::multiset<std::vector<std::int64_t>> sb;
    for (std::size_t i = 0; i < la.size(); ++i) sa.insert(primitive(la.point(i)));
    for (std::size_t i = 0; i < lb.size(); ++i) sb.insert(primitive(lb.point(i)));
    return sa == sb;
  }
  auto fa = to_float(a);
  auto fb = to_float(b);
  const int dim = fa.ambient_dim();
  std::vector<bool> used(fb.size(), false);
  for (std::size_t i = 0; i < fa.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < fb.size() && !found; ++j) {
      if (used[j]) continue;
      double dist = 0;
      for (int k = 0; k < dim; ++k) dist = std::max(dist, std::abs(fa.point(i)[k] - fb.point(j)[k]));
      if (dist <= tol) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

ExactPoint ExactPoint::of(const LatticeCode& code, std::size_t i) {
  auto p = code.point(i);
  return ExactPoint{std::vector<std::int64_t>(p.begin(), p.end()), code.norm_sq()};
}

ExactPoint ExactPoint::from_vector(std::vector<std::int64_t> v) {
  std::int64_t s = 0;
  for (auto x : v) s += x * x;
  if (s == 0) throw InvalidArgument("zero vector is not a point of the sphere");
  return ExactPoint{std::move(v), s};
}

std::vector<double> ExactPoint::to_unit() const {
  const double scale = 1.0 / std::sqrt(static_cast<double>(norm_sq));
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = static_cast<double>(v[k]) * scale;
  return out;
}

Surd exact_dot(const ExactPoint& p, const LatticeCode& code, std::size_t i) {
  if (p.v.size() != static_cast<std::size_t>(code.ambient_dim()))
    throw InvalidArgument("probe dimension does not match the code");
  auto x = code.point(i);
  Integer dot = 0;
  for (std::size_t k = 0; k < p.v.size(); ++k) dot += Integer(static_cast<long>(p.v[k])) * static_cast<long>(x[k]);
  Integer scale = Integer(static_cast<long>(p.norm_sq)) * static_cast<long>(code.norm_sq());
  // (p.x) / sqrt(scale) = (p.x)/scale * sqrt(scale)
  return Surd::normalized(make_rational(dot, scale), scale);
}

LatticeCode cross_polytope(int d, const Limits& limits) {
  if (d < 2) throw InvalidArgument("cross_polytope needs d >= 2");
  check_cap(2 * static_cast<std::uint64_t>(d), limits, "cross_polytope");
  std::vector<std::int64_t> coords(2 * static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) {
    coords[(2 * i) * d + i] = 1;
    coords[(2 * i + 1) * d + i] = -1;
  }
  return LatticeCode("cross_polytope(" + std::to_string(d) + ")", d, 1, std::move(coords));
}

namespace {

LatticeCode sign_vectors(int d, std::optional<Parity> parity, const Limits& limits, std::string name) {
  if (d < 2) throw InvalidArgument(name + " needs d >= 2");
  if (d >= 63) throw CapExceeded(name + " dimension too large");
  const std::uint64_t total = std::uint64_t{1} << d;
  check_cap(parity ? total / 2 : total, limits, name);
  std::vector<std::int64_t> coords;
  coords.reserve((parity ? total / 2 : total) * d);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    int negatives = std::popcount(mask);
    if (parity && (negatives % 2 == 0) != (*parity == Parity::Even)) continue;
    for (int k = 0; k < d; ++k) coords.push_back((mask >> k) & 1 ? -1 : 1);
  }
  return LatticeCode(std::move(name), d, d, std::move(coords));
}

}  // namespace

LatticeCode cube(int d, const Limits& limits) {
  return sign_vectors(d, std::nullopt, limits, "cube(" + std::to_string(d) + ")");
}

LatticeCode demicube(int d, Parity parity, const Limits& limits) {
  return sign_vectors(d, parity, limits,
                      "demicube(" + std::to_string(d) + (parity == Parity::Even ? ",even)" : ",odd)"));
}

LatticeCode e8_roots() {
  std::vector<std::int64_t> coords;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int s = 0; s < 4; ++s) {
        std::vector<std::int64_t> v(8, 0);
        v[i] = (s & 1) ? -2 : 2;
        v[j] = (s & 2) ? -2 : 2;
        coords.insert(coords.end(), v.begin(), v.end());
      }
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    for (int k = 0; k < 8; ++k) coords.push_back((mask >> k) & 1 ? -1 : 1);
  }
  return LatticeCode("e8_roots", 8, 8, std::move(coords));
}

LatticeCode polytope_2_41() {
  std::vector<std::int64_t> coords;
  // type I: four coordinates +-2, four zeros
  for (unsigned support = 0; support < 256; ++support) {
    if (std::popcount(support) != 4) continue;
    for (unsigned signs = 0; signs < 16; ++signs) {
      int used = 0;
      for (int k = 0; k < 8; ++k) {
        if ((support >> k) & 1) {
          coords.push_back((signs >> used) & 1 ? -2 : 2);
          ++used;
        } else {
          coords.push_back(0);
        }
      }
    }
  }
  // type II: +-4 e_i
  for (int i = 0; i < 8; ++i)
    for (int s : {4, -4})
      for (int k = 0; k < 8; ++k) coords.push_back(k == i ? s : 0);
  // type III: one +-3, seven +-1, odd number of negative coordinates
  for (int big = 0; big < 8; ++big)
    for (unsigned mask = 0; mask < 256; ++mask) {
      if (std::popcount(mask) % 2 != 1) continue;
      for (int k = 0; k < 8; ++k) {
        std::int64_t magnitude = (k == big) ? 3 : 1;
        coords.push_back((mask >> k) & 1 ? -magnitude : magnitude);
      }
    }
  return LatticeCode("polytope_2_41", 8, 16, std::move(coords));
}

FloatCode ngon(int n) {
  if (n < 2) throw InvalidArgument("ngon needs n >= 2");
  std::vector<double> coords;
  coords.reserve(2 * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double angle = 2.0 * std::numbers::pi * k / n;
    coords.push_back(std::cos(angle));
    coords.push_back(std::sin(angle));
  }
  return FloatCode("ngon(" + std::to_string(n) + ")", 2, std::move(coords), 1e-12);
}

}  // namespace stiffkit
