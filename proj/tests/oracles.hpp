#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "stiffkit/codes.hpp"
#include "stiffkit/exact.hpp"

namespace oracle {

using stiffkit::Rational;
using Rows = std::vector<std::vector<double>>;

/// Vectors y in Z^8 with |y|^2 = norm, all coordinates of one parity and
/// sum(y) = 0 mod 4: the E8 lattice with coordinates doubled.
inline std::vector<std::vector<int>> e8_shell_doubled(int norm) {
  std::vector<std::vector<int>> out;
  std::vector<int> y(8);
  const int lim = static_cast<int>(std::sqrt(static_cast<double>(norm)));
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == 8) {
      if (left != 0) return;
      int parity = y[0] & 1, sum = 0;
      for (int v : y) {
        if ((v & 1) != parity) return;
        sum += v;
      }
      if (((sum % 4) + 4) % 4 == 0) out.push_back(y);
      return;
    }
    for (int v = -lim; v <= lim; ++v) {
      if (v * v > left) continue;
      y[k] = v;
      self(self, k + 1, left - v * v);
    }
  };
  rec(rec, 0, norm);
  return out;
}

/// P_n^{(d)} through the three-term recurrence of the normalised Gegenbauer
/// polynomials: (n+d-1) P_{n+1} = (2n+d-1) t P_n - n P_{n-1}.
inline Rational gegenbauer(int d, int n, const Rational& t) {
  Rational prev = 1, cur = t;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    Rational next = (Rational(2 * k + d - 1) * t * cur - Rational(k) * prev) / Rational(k + d - 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

inline double gegenbauer(int d, int n, double t) {
  double prev = 1, cur = t;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    double next = ((2.0 * k + d - 1) * t * cur - k * prev) / (k + d - 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Sum over all ordered pairs of P_n(x_i . x_j), exact, O(N^2).
inline Rational pair_sum(const stiffkit::LatticeCode& code, int n) {
  const int d = code.sphere_dim();
  Rational total = 0;
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = 0; j < code.size(); ++j) {
      long dot = 0;
      for (int k = 0; k < code.ambient_dim(); ++k) dot += code.point(i)[k] * code.point(j)[k];
      total += gegenbauer(d, n, stiffkit::make_rational(dot, code.norm_sq()));
    }
  return total;
}

inline double pair_sum(const Rows& pts, int n) {
  const int d = static_cast<int>(pts[0].size()) - 1;
  double total = 0;
  for (const auto& a : pts)
    for (const auto& b : pts) {
      double dot = 0;
      for (std::size_t k = 0; k < a.size(); ++k) dot += a[k] * b[k];
      total += gegenbauer(d, n, dot);
    }
  return total;
}

inline Rows rows(const stiffkit::Code& code) {
  const auto f = stiffkit::to_float(code);
  Rows out;
  for (std::size_t i = 0; i < f.size(); ++i) out.emplace_back(f.point(i).begin(), f.point(i).end());
  return out;
}

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

/// Same point sets up to `tol` (Euclidean), as a bijection by nearest match.
inline bool same_sets(const Rows& a, const Rows& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& p : a) {
    bool hit = false;
    for (std::size_t j = 0; j < b.size() && !hit; ++j)
      if (!used[j] && distance(p, b[j]) <= tol) used[j] = hit = true;
    if (!hit) return false;
  }
  return true;
}

/// Signed unit basis vectors of R^n.
inline Rows signed_basis(int n) {
  Rows out;
  for (int k = 0; k < n; ++k)
    for (double s : {1.0, -1.0}) {
      std::vector<double> v(n, 0.0);
      v[k] = s;
      out.push_back(v);
    }
  return out;
}

/// All (+-1/sqrt n)^n.
inline Rows cube_vertices(int n) {
  Rows out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) v[k] = ((mask >> k) & 1 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(n));
    out.push_back(v);
  }
  return out;
}

/// Directions on S^2 with at most m distinct dot products (within 1e-10)
/// against `pts`, found by dense Fibonacci sampling: each sample's sorted dots
/// are split at their m-1 widest gaps, and promising samples are polished by
/// Gauss-Newton on z . x_i = c_group(i), |z| = 1 with unknowns (z, c).
inline Rows dense_dual(const Rows& pts, int m, std::size_t samples = 200000) {
  const std::size_t n = pts.size();
  const double spacing = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(samples));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  Rows found;
  std::vector<std::pair<double, std::size_t>> dots(n);
  std::vector<int> group(n);
  auto assign = [&](const Eigen::Vector3d& z) {
    for (std::size_t i = 0; i < n; ++i) dots[i] = {z[0] * pts[i][0] + z[1] * pts[i][1] + z[2] * pts[i][2], i};
    std::sort(dots.begin(), dots.end());
    std::vector<std::pair<double, std::size_t>> gaps;
    for (std::size_t i = 1; i < n; ++i) gaps.emplace_back(dots[i].first - dots[i - 1].first, i);
    std::sort(gaps.rbegin(), gaps.rend());
    std::vector<std::size_t> cuts;
    for (int k = 0; k < m - 1 && k < static_cast<int>(gaps.size()); ++k) cuts.push_back(gaps[k].second);
    std::sort(cuts.begin(), cuts.end());
    double width = 0, start = dots[0].first;
    int g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (g < static_cast<int>(cuts.size()) && i == cuts[g]) {
        ++g;
        start = dots[i].first;
      }
      group[dots[i].second] = g;
      width = std::max(width, dots[i].first - start);
    }
    return width;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const double zc = 1.0 - (2.0 * static_cast<double>(s) + 1.0) / static_cast<double>(samples);
    const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    Eigen::Vector3d z(r * std::cos(golden * static_cast<double>(s)), r * std::sin(golden * static_cast<double>(s)), zc);
    if (assign(z) > 4.0 * spacing) continue;
    const int groups = m;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(groups);
    for (int it = 0; it < 30; ++it) {
      std::vector<double> sum(groups, 0), cnt(groups, 0);
      for (std::size_t i = 0; i < n; ++i) {
        sum[group[i]] += z.dot(Eigen::Vector3d(pts[i][0], pts[i][1], pts[i][2]));
        cnt[group[i]] += 1;
      }
      for (int g = 0; g < groups; ++g) c[g] = cnt[g] > 0 ? sum[g] / cnt[g] : 0;
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n) + 1, 3 + groups);
      Eigen::VectorXd res(static_cast<Eigen::Index>(n) + 1);
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d x(pts[i][0], pts[i][1], pts[i][2]);
        res[static_cast<Eigen::Index>(i)] = z.dot(x) - c[group[i]];
        jac.row(static_cast<Eigen::Index>(i)).head(3) = x.transpose();
        jac(static_cast<Eigen::Index>(i), 3 + group[i]) = -1;
      }
      res[static_cast<Eigen::Index>(n)] = z.squaredNorm() - 1;
      jac.row(static_cast<Eigen::Index>(n)).head(3) = 2 * z.transpose();
      Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-res);
      z += step.head(3);
      c += step.tail(groups);
      z.normalize();
      if (step.norm() < 1e-15) break;
    }
    if (assign(z) > 1e-10) continue;
    bool dup = false;
    for (const auto& f : found) dup = dup || distance(f, {z[0], z[1], z[2]}) < 1e-6;
    if (!dup) found.push_back({z[0], z[1], z[2]});
  }
  return found;
}

}  // namespace oracle
