#include "stiffkit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Dense>

#include "stiffkit/random.hpp"

namespace stiffkit {

namespace {

double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

Code symmetrize(const Code& code) {
  if (is_antipodal(code) && code_size(code) > 0)
    throw InvalidArgument("code '" + code_name(code) + "' is already antipodal");
  const std::string name = "sym(" + code_name(code) + ")";
  if (const auto* lc = std::get_if<LatticeCode>(&code)) {
    std::set<std::vector<std::int64_t>> pts;
    for (std::size_t i = 0; i < lc->size(); ++i) pts.emplace(lc->point(i).begin(), lc->point(i).end());
    std::vector<std::int64_t> coords(lc->coords().begin(), lc->coords().end());
    for (std::size_t i = 0; i < lc->size(); ++i) {
      std::vector<std::int64_t> neg(lc->point(i).begin(), lc->point(i).end());
      for (auto& x : neg) x = -x;
      if (pts.count(neg)) throw InvalidArgument("code '" + lc->name() + "' contains an antipodal pair");
      coords.insert(coords.end(), neg.begin(), neg.end());
    }
    return LatticeCode(name, lc->ambient_dim(), lc->norm_sq(), std::move(coords));
  }
  const auto& fc = std::get<FloatCode>(code);
  std::vector<double> coords(fc.coords().begin(), fc.coords().end());
  for (std::size_t i = 0; i < fc.size(); ++i) {
    std::vector<double> neg(fc.point(i).begin(), fc.point(i).end());
    for (auto& x : neg) x = -x;
    for (std::size_t j = 0; j < fc.size(); ++j)
      if (dist(neg, fc.point(j)) <= 1e-9) throw InvalidArgument("code '" + fc.name() + "' contains an antipodal pair");
    coords.insert(coords.end(), neg.begin(), neg.end());
  }
  return FloatCode(name, fc.ambient_dim(), std::move(coords), fc.tolerance());
}

Code facet_derive(const Code& code, std::size_t x_index, const Surd& t) {
  const std::size_t n = code_size(code);
  if (x_index >= n) throw InvalidArgument("point index out of range");
  if (t == Surd(1) || t == Surd(-1)) throw InvalidArgument("facet_derive needs t != +-1");
  const int dim = ambient_dim(code);
  if (dim < 2) throw InvalidArgument("facet_derive needs ambient dimension >= 2");
  const std::string name = "facet(" + code_name(code) + "," + std::to_string(x_index) + "," + t.str() + ")";

  if (const auto* lc = std::get_if<LatticeCode>(&code)) {
    auto x = lc->point(x_index);
    int axis = -1, nonzero = 0;
    for (int k = 0; k < dim; ++k)
      if (x[k] != 0) {
        axis = k;
        ++nonzero;
      }
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i)
      if (Surd(lc->unit_dot(x_index, i)) == t) chosen.push_back(i);
    if (chosen.empty()) throw InvalidArgument("t = " + t.str() + " is not attained at point " + std::to_string(x_index));
    if (nonzero == 1) {
      // y - t x for unit vectors is S y - (x.y) x in integer terms; the axis
      // coordinate vanishes and is dropped
      const std::int64_t s = lc->norm_sq();
      std::vector<std::int64_t> coords;
      for (std::size_t i : chosen) {
        const std::int64_t xy = lc->int_dot(x_index, i);
        auto y = lc->point(i);
        for (int k = 0; k < dim; ++k) {
          if (k == axis) continue;
          coords.push_back(s * y[k] - xy * x[k]);
        }
      }
      return LatticeCode::from_points(name, dim - 1, std::move(coords));
    }
  }

  const FloatCode fc = to_float(code);
  const double tv = t.to_double();
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(fc.point(x_index).data(), dim);
  const Eigen::MatrixXd xcol = x;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(xcol);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd basis = q.rightCols(dim - 1);
  std::vector<double> coords;
  const double scale = 1.0 / std::sqrt(1.0 - tv * tv);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(fc.point(i).data(), dim);
    if (std::abs(y.dot(x) - tv) > 1e-9) continue;
    Eigen::VectorXd w = basis.transpose() * ((y - tv * x) * scale);
    w.normalize();
    coords.insert(coords.end(), w.data(), w.data() + w.size());
  }
  if (coords.empty()) throw InvalidArgument("t = " + t.str() + " is not attained at point " + std::to_string(x_index));
  return FloatCode(name, dim - 1, std::move(coords), 1e-9);
}

GlueResult glue(const Code& code1, const Code& code2, int m, std::uint64_t seed, int threads) {
  const int dim = ambient_dim(code1);
  if (ambient_dim(code2) != dim) throw InvalidArgument("glue needs codes on the same sphere");
  if (dim < 3) throw InvalidArgument("glue needs S^d with d >= 2");
  DualSearchOptions opts;
  opts.threads = threads;
  auto c1 = certify_stiff(code1, m, opts);
  auto c2 = certify_stiff(code2, m, opts);
  if (!c1.stiff) throw InvalidArgument("code '" + code_name(code1) + "' is not " + std::to_string(m) + "-stiff");
  if (!c2.stiff) throw InvalidArgument("code '" + code_name(code2) + "' is not " + std::to_string(m) + "-stiff");

  GlueResult out;
  out.seed = seed;
  const FloatCode d1 = to_float(c1.dual.points), d2 = to_float(c2.dual.points);
  Eigen::VectorXd z1 = Eigen::Map<const Eigen::VectorXd>(d1.point(0).data(), dim);
  Eigen::VectorXd z2 = Eigen::Map<const Eigen::VectorXd>(d2.point(0).data(), dim);
  if ((z1 - z2).norm() < 1e-9) z2 = -z2;  // duals are antipodal, so -z2 is in D_m(code2)
  out.z1.assign(z1.data(), z1.data() + dim);
  out.z2.assign(z2.data(), z2.data() + dim);

  // reflection across the perpendicular bisector of [z1, z2] sends z1 to z2
  const Eigen::VectorXd nrm = (z1 - z2).normalized();
  const FloatCode f1 = to_float(code1), f2 = to_float(code2);
  std::vector<Eigen::VectorXd> moved;
  for (std::size_t i = 0; i < f1.size(); ++i) {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(f1.point(i).data(), dim);
    moved.push_back(v - 2.0 * v.dot(nrm) * nrm);
  }

  auto rng = rng_stream(seed, 0);
  std::vector<Eigen::VectorXd> placed;
  for (out.attempts = 1; out.attempts <= 64; ++out.attempts) {
    auto r = random_unit(dim, rng);
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(r.data(), dim);
    a -= a.dot(z2) * z2;
    if (a.norm() < 1e-6) continue;
    a.normalize();
    bool generic = true;
    // a must not be perpendicular to any point of code2
    for (std::size_t j = 0; j < f2.size() && generic; ++j) {
      Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(f2.point(j).data(), dim);
      generic = std::abs(a.dot(w)) > 1e-9;
    }
    if (!generic) continue;
    placed.clear();
    for (const auto& v : moved) placed.push_back(v - 2.0 * v.dot(a) * a);
    // the reflected copy must avoid code2 (a not along any w - v)
    for (std::size_t j = 0; j < f2.size() && generic; ++j) {
      Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(f2.point(j).data(), dim);
      for (const auto& v : placed) generic = generic && (v - w).norm() > 1e-6;
    }
    if (generic) break;
  }
  if (out.attempts > 64) throw NumericFailure("glue: 64 random reflections failed the genericity tests");
  out.disjoint = true;

  std::vector<double> coords;
  for (const auto& v : placed) coords.insert(coords.end(), v.data(), v.data() + dim);
  coords.insert(coords.end(), f2.coords().begin(), f2.coords().end());
  out.code = FloatCode("glue(" + code_name(code1) + "," + code_name(code2) + ")", dim, std::move(coords), 1e-9);

  out.design_strength = index_set(out.code, 2 * m - 1, false, threads).strength;
  out.design_ok = out.design_strength >= 2 * m - 1;
  out.z2_distinct = spectrum(out.z2, out.code, 1e-8, 1e-9).distinct_count();
  out.z2_in_dual = out.z2_distinct <= static_cast<std::size_t>(m);
  out.stiff = out.design_ok && out.z2_in_dual;
  return out;
}

RotatedCubes rotated_cubes(int n, int threads) {
  if (n < 1) throw InvalidArgument("rotated_cubes needs n >= 1");
  RotatedCubes out;
  if (n == 1) {
    out.code = cube(3);
  } else {
    const LatticeCode base = cube(3);
    const double s = 1.0 / std::sqrt(3.0);
    std::vector<double> coords;
    for (int k = 0; k < n; ++k) {
      const double angle = std::numbers::pi * k / (2.0 * n);
      const double c = k == 0 ? 1.0 : std::cos(angle), sn = k == 0 ? 0.0 : std::sin(angle);
      for (std::size_t i = 0; i < base.size(); ++i) {
        auto p = base.point(i);
        coords.push_back(s * (c * p[0] - sn * p[1]));
        coords.push_back(s * (sn * p[0] + c * p[1]));
        coords.push_back(s * p[2]);
      }
    }
    out.code = FloatCode("rotated_cubes(" + std::to_string(n) + ")", 3, std::move(coords), 1e-12);
  }
  DualSearchOptions opts;
  opts.threads = threads;
  out.certificate = certify_stiff(out.code, 2, opts);
  const FloatCode dual = to_float(out.certificate.dual.points);
  if (dual.size() == 2) {
    const std::vector<double> up{0, 0, 1}, down{0, 0, -1};
    bool ok = true;
    for (std::size_t i = 0; i < 2; ++i)
      ok = ok && (dist(dual.point(i), up) <= 1e-12 || dist(dual.point(i), down) <= 1e-12);
    out.dual_is_axis = ok && dist(dual.point(0), dual.point(1)) > 1;
  }
  return out;
}

}  // namespace stiffkit
