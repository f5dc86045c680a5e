#include "stiffkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace stiffkit {

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t p = row;
    while (p < m.rows && sgn(m(p, col)) == 0) ++p;
    if (p == m.rows) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols; ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<RationalMatrix> inverse(RationalMatrix m) {
  if (m.rows != m.cols) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t n = m.rows;
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots.back() >= n) return std::nullopt;
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix copy = m;
  return rref(copy).size();
}

std::vector<std::vector<Integer>> integer_nullspace(const RationalMatrix& m) {
  RationalMatrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Integer>> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    Integer lcm_den = 1;
    for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> iv(m.cols);
    Integer g = 0;
    for (std::size_t k = 0; k < m.cols; ++k) {
      Rational scaled = v[k] * Rational(lcm_den);
      iv[k] = scaled.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv[k].get_mpz_t());
    }
    if (g > 1)
      for (auto& x : iv) x /= g;
    basis.push_back(std::move(iv));
  }
  return basis;
}

std::vector<std::size_t> independent_points(const LatticeCode& code) {
  const std::size_t n = code.size();
  const int dim = code.ambient_dim();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto pa = code.point(a);
    auto pb = code.point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  // Echelon rows of the kept points; a candidate is reduced against them.
  std::vector<std::vector<Rational>> echelon;
  std::vector<std::size_t> lead;
  std::vector<std::size_t> chosen;
  for (std::size_t idx : order) {
    if (chosen.size() == static_cast<std::size_t>(dim)) break;
    auto p = code.point(idx);
    std::vector<Rational> v(dim);
    for (int k = 0; k < dim; ++k) v[k] = Rational(static_cast<long>(p[k]));
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      if (sgn(v[lead[r]]) == 0) continue;
      Rational f = v[lead[r]] / echelon[r][lead[r]];
      for (int k = 0; k < dim; ++k) v[k] -= f * echelon[r][k];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
    if (nz == v.end()) continue;
    lead.push_back(static_cast<std::size_t>(nz - v.begin()));
    echelon.push_back(std::move(v));
    chosen.push_back(idx);
  }
  return chosen;
}

std::vector<std::size_t> independent_points(const FloatCode& code, double tol) {
  const int dim = code.ambient_dim();
  std::vector<Eigen::VectorXd> basis;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < code.size() && chosen.size() < static_cast<std::size_t>(dim); ++i) {
    auto p = code.point(i);
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(p.data(), dim);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    double norm = v.norm();
    if (norm <= tol) continue;
    basis.push_back(v / norm);
    chosen.push_back(i);
  }
  return chosen;
}

std::vector<std::vector<double>> orthogonal_complement(const FloatCode& code, double tol) {
  const int dim = code.ambient_dim();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(std::max<std::size_t>(code.size(), 1)), dim);
  m.setZero();
  for (std::size_t i = 0; i < code.size(); ++i)
    for (int k = 0; k < dim; ++k) m(static_cast<Eigen::Index>(i), k) = code.point(i)[k];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 1.0);
  std::vector<std::vector<double>> out;
  for (int k = 0; k < dim; ++k) {
    bool zero = k >= sv.size() || sv(k) <= tol * scale;
    if (!zero) continue;
    std::vector<double> v(dim);
    for (int c = 0; c < dim; ++c) v[c] = svd.matrixV()(c, k);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace stiffkit
