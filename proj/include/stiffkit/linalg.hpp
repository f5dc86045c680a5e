#pragma once

// Small dense linear algebra over the rationals, plus the floating
// counterparts used by the non-exact paths.

#include <cstdint>
#include <optional>
#include <vector>

#include "stiffkit/codes.hpp"
#include "stiffkit/exact.hpp"

namespace stiffkit {

struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Rational(0)) {}
  Rational& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(RationalMatrix m);

/// Rank of the matrix whose rows are the given vectors.
std::size_t rank(const RationalMatrix& m);

/// Basis of {x : m x = 0}, each vector scaled to a primitive integer vector.
std::vector<std::vector<Integer>> integer_nullspace(const RationalMatrix& m);

/// Indices of a maximal linearly independent subset of the code's points,
/// chosen greedily with points visited in lexicographic coordinate order.
std::vector<std::size_t> independent_points(const LatticeCode& code);

/// Floating counterpart: a point is kept when its component orthogonal to
/// the span of the kept points has norm above `tol`.
std::vector<std::size_t> independent_points(const FloatCode& code, double tol = 1e-8);

/// Orthonormal basis of the orthogonal complement of span(code) (floating).
std::vector<std::vector<double>> orthogonal_complement(const FloatCode& code, double tol = 1e-8);

}  // namespace stiffkit
