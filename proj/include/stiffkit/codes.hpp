#pragma once

// Point configurations on spheres and their exact constructors.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stiffkit/config.hpp"
#include "stiffkit/exact.hpp"

namespace stiffkit {

/// A finite code on S^{ambient_dim-1} stored as integer vectors of one
/// common squared length. The unit point is v / sqrt(norm_sq), so every
/// within-code dot product (v.w)/norm_sq is rational.
class LatticeCode {
 public:
  LatticeCode() = default;

  /// Validates distinctness and the common norm; throws InvalidArgument.
  LatticeCode(std::string name, int ambient_dim, std::int64_t norm_sq, std::vector<std::int64_t> coords);

  /// As above with norm_sq taken from the first point (codes must be non-empty).
  static LatticeCode from_points(std::string name, int ambient_dim, std::vector<std::int64_t> coords);

  const std::string& name() const { return name_; }
  int ambient_dim() const { return dim_; }
  /// Dimension d of the sphere S^d the code lives on.
  int sphere_dim() const { return dim_ - 1; }
  std::int64_t norm_sq() const { return norm_sq_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return coords_.empty(); }
  std::span<const std::int64_t> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  /// Largest absolute coordinate; bounds every integer dot product.
  std::int64_t max_abs_coord() const { return max_abs_; }

  /// Integer dot product of points i and j.
  std::int64_t int_dot(std::size_t i, std::size_t j) const;
  /// Exact unit dot product (v_i . v_j) / norm_sq.
  Rational unit_dot(std::size_t i, std::size_t j) const;

  LatticeCode renamed(std::string name) const;

 private:
  std::string name_;
  int dim_ = 0;
  std::int64_t norm_sq_ = 1;
  std::int64_t max_abs_ = 0;
  std::vector<std::int64_t> coords_;
};

/// A code whose coordinates are only known in floating point.
class FloatCode {
 public:
  FloatCode() = default;

  /// Validates unit norms within `tolerance`; throws InvalidArgument.
  FloatCode(std::string name, int ambient_dim, std::vector<double> coords, double tolerance = 1e-9);

  const std::string& name() const { return name_; }
  int ambient_dim() const { return dim_; }
  int sphere_dim() const { return dim_ - 1; }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return coords_.empty(); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& coords() const { return coords_; }

  FloatCode renamed(std::string name) const;

 private:
  std::string name_;
  int dim_ = 0;
  double tolerance_ = 1e-9;
  std::vector<double> coords_;
};

using Code = std::variant<LatticeCode, FloatCode>;

/// Unit-normalised floating copy of an exact code.
FloatCode to_float(const LatticeCode& code);
FloatCode to_float(const Code& code);

const std::string& code_name(const Code& code);
int ambient_dim(const Code& code);
std::size_t code_size(const Code& code);
bool is_exact(const Code& code);

/// True when the two point sets coincide (order-insensitive; floats within tol).
bool same_point_set(const Code& a, const Code& b, double tol = 1e-9);

/// A single exact point v / sqrt(norm_sq) with integer v.
struct ExactPoint {
  std::vector<std::int64_t> v;
  std::int64_t norm_sq = 1;

  static ExactPoint of(const LatticeCode& code, std::size_t i);
  /// Infers norm_sq = v.v; v must be nonzero.
  static ExactPoint from_vector(std::vector<std::int64_t> v);
  std::vector<double> to_unit() const;
};

/// Exact unit dot product between an exact point and point i of a code.
Surd exact_dot(const ExactPoint& p, const LatticeCode& code, std::size_t i);

// Constructors. All respect `limits.size_cap`.
LatticeCode cross_polytope(int d, const Limits& limits = default_limits());
LatticeCode cube(int d, const Limits& limits = default_limits());
enum class Parity { Even, Odd };
LatticeCode demicube(int d, Parity parity = Parity::Even, const Limits& limits = default_limits());
LatticeCode e8_roots();
LatticeCode polytope_2_41();
FloatCode ngon(int n);

}  // namespace stiffkit
