#include "stiffkit/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "stiffkit/design.hpp"
#include "stiffkit/parallel.hpp"
#include "stiffkit/random.hpp"

namespace stiffkit {

namespace {

std::string format_double(double x) {
  std::string s = std::to_string(x);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

double parse_positive(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0) || !std::isfinite(v))
    throw InvalidArgument(what + " needs a positive parameter, got '" + text + "'");
  return v;
}

}  // namespace

Kernel Kernel::riesz(double s) {
  if (!(s > 0)) throw InvalidArgument("riesz kernel needs s > 0");
  Kernel k;
  k.family_ = KernelFamily::Riesz;
  k.param_ = s;
  k.name_ = "riesz:" + format_double(s);
  return k;
}

Kernel Kernel::gaussian(double rate) {
  if (!(rate > 0)) throw InvalidArgument("gaussian kernel needs rate > 0");
  Kernel k;
  k.family_ = KernelFamily::Gaussian;
  k.param_ = rate;
  k.name_ = "gauss:" + format_double(rate);
  return k;
}

Kernel Kernel::log() {
  Kernel k;
  k.family_ = KernelFamily::Log;
  k.param_ = 0;
  k.name_ = "log";
  return k;
}

Kernel Kernel::polynomial(Polynomial p) {
  Kernel k;
  k.family_ = KernelFamily::Polynomial;
  k.poly_coeffs_ = p.to_double();
  std::string name = "poly:";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) name += (i ? "," : "") + to_string(p.coeffs()[i]);
  if (p.is_zero()) name += "0";
  k.name_ = name;
  k.poly_ = std::move(p);
  return k;
}

Kernel Kernel::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string family = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (family == "riesz") return riesz(parse_positive(arg, "riesz"));
  if (family == "gauss" || family == "gaussian") return gaussian(parse_positive(arg, "gauss"));
  if (family == "log" && colon == std::string::npos) return log();
  if (family == "poly" && !arg.empty()) {
    std::vector<Rational> coeffs;
    std::size_t start = 0;
    while (true) {
      auto comma = arg.find(',', start);
      coeffs.push_back(parse_rational(arg.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return polynomial(Polynomial(std::move(coeffs)));
  }
  throw InvalidArgument("unknown kernel '" + text + "' (expected riesz:s, gauss:a, log or poly:c0,c1,...)");
}

double Kernel::value(double t) const {
  double g = 0, g1 = 0, g2 = 0;
  derivatives(t, g, g1, g2);
  return g;
}

void Kernel::derivatives(double t, double& g, double& g1, double& g2) const {
  switch (family_) {
    case KernelFamily::Riesz: {
      const double u = 2.0 - 2.0 * t;
      const double inv = 1.0 / u;
      if (param_ == 2.0) {
        g = inv;
      } else if (param_ == 1.0) {
        g = 1.0 / std::sqrt(u);
      } else if (param_ == 4.0) {
        g = inv * inv;
      } else {
        g = std::pow(u, -0.5 * param_);
      }
      // d/dt u^{-s/2} = s u^{-s/2-1}
      g1 = param_ * g * inv;
      g2 = param_ * (param_ + 2.0) * g * inv * inv;
      return;
    }
    case KernelFamily::Gaussian:
      g = std::exp(-param_ * (2.0 - 2.0 * t));
      g1 = 2.0 * param_ * g;
      g2 = 4.0 * param_ * param_ * g;
      return;
    case KernelFamily::Log: {
      const double u = 2.0 - 2.0 * t;
      g = -std::log(u) + 2.0;
      g1 = 1.0 / (1.0 - t);
      g2 = g1 * g1;
      return;
    }
    case KernelFamily::Polynomial: {
      g = g1 = g2 = 0;
      for (std::size_t k = poly_coeffs_.size(); k-- > 0;) {
        g2 = g2 * t + 2.0 * g1;
        g1 = g1 * t + g;
        g = g * t + poly_coeffs_[k];
      }
      return;
    }
  }
}

Field::Field(const Code& code, Kernel kernel) : points_(to_float(code)), kernel_(std::move(kernel)) {}

void Field::dots(std::span<const double> x, std::vector<double>& out) const {
  if (static_cast<int>(x.size()) != dim())
    throw InvalidArgument("point has dimension " + std::to_string(x.size()) + ", code has " +
                          std::to_string(dim()));
  out.assign(points_.padded_rows(), 0.0);
  kernels::dot_rows(points_, x.data(), out.data());
  if (kernel_.singular()) {
    for (std::size_t i = 0; i < size(); ++i)
      if (out[i] >= 1.0 - 1e-12) throw SingularEvaluation("point coincides with a code point (kernel " + kernel_.name() + ")");
  }
}

double Field::value(std::span<const double> x) const {
  std::vector<double> t;
  dots(x, t);
  const std::size_t n = size();
  if (n < 1000) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += kernel_.value(t[i]);
    return s;
  }
  // Neumaier summation
  double s = 0, c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = kernel_.value(t[i]);
    const double u = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - u) + v : (v - u) + s;
    s = u;
  }
  return s + c;
}

double Field::value_gradient_hessian(std::span<const double> x, std::vector<double>& grad,
                                     std::vector<double>& hess) const {
  std::vector<double> t;
  dots(x, t);
  const std::size_t n = size();
  const std::size_t padded = points_.padded_rows();
  std::vector<double> w1(padded, 0.0), w2(padded, 0.0);
  double s = 0, c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double g = 0;
    kernel_.derivatives(t[i], g, w1[i], w2[i]);
    const double u = s + g;
    c += std::abs(s) >= std::abs(g) ? (s - u) + g : (g - u) + s;
    s = u;
  }
  grad.assign(static_cast<std::size_t>(dim()), 0.0);
  hess.assign(static_cast<std::size_t>(dim()) * dim(), 0.0);
  kernels::weighted_sum(points_, w1.data(), grad.data());
  kernels::weighted_gram(points_, w2.data(), hess.data());
  return s + c;
}

double potential_eval(std::span<const double> x, const Code& code, const Kernel& kernel) {
  double norm = 0;
  for (double v : x) norm += v * v;
  if (std::abs(norm - 1.0) > 1e-12) throw InvalidArgument("potential_eval needs a unit vector");
  return Field(code, kernel).value(x);
}

std::vector<double> tangential_gradient(const Field& field, std::span<const double> x) {
  std::vector<double> grad, hess;
  field.value_gradient_hessian(x, grad, hess);
  double gx = 0;
  for (std::size_t k = 0; k < grad.size(); ++k) gx += grad[k] * x[k];
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] -= gx * x[k];
  return grad;
}

namespace {

enum class Outcome { Converged, Stalled, Failed };

struct LocalResult {
  Outcome outcome = Outcome::Failed;
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

double safe_value(const Field& field, const Eigen::VectorXd& y) {
  try {
    return field.value(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
  } catch (const SingularEvaluation&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Riemannian Newton with a gradient fallback and Armijo backtracking along
// the normalising retraction.
LocalResult descend(const Field& field, std::vector<double> start, const MinimizeOptions& options) {
  const int n = field.dim();
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(start.data(), n).normalized();
  LocalResult result;
  std::vector<double> grad, hess;
  for (int it = 0; it < options.max_iterations; ++it) {
    double f = 0;
    try {
      f = field.value_gradient_hessian(std::span<const double>(x.data(), n), grad, hess);
    } catch (const SingularEvaluation&) {
      return result;
    }
    Eigen::Map<const Eigen::VectorXd> g(grad.data(), n);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> h(hess.data(), n, n);
    const double gx = g.dot(x);
    const Eigen::VectorXd gt = g - gx * x;
    const double gn = gt.norm();
    result.value = f;
    result.x.assign(x.data(), x.data() + n);
    if (gn < options.gradient_tol) {
      result.outcome = Outcome::Converged;
      return result;
    }
    // orthonormal basis of the tangent space x^perp
    const Eigen::MatrixXd xcol = x;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(xcol);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd basis = q.rightCols(n - 1);
    Eigen::MatrixXd hr = basis.transpose() * h * basis;
    hr.diagonal().array() -= gx;
    // Newton step with |eigenvalues| so that saddles repel instead of attract
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hr);
    const Eigen::VectorXd lambda = eig.eigenvalues();
    const bool definite = lambda.minCoeff() > 0;
    const double floor = 1e-8 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
    const Eigen::VectorXd b = eig.eigenvectors().transpose() * (basis.transpose() * g);
    Eigen::VectorXd coef(n - 1);
    for (int k = 0; k < n - 1; ++k) coef[k] = -b[k] / std::max(std::abs(lambda[k]), floor);

    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      Eigen::VectorXd v;
      double alpha = 1.0;
      if (attempt == 0) {
        v = basis * (eig.eigenvectors() * coef);
        const double len = v.norm();
        if (definite && len < 1e-6) {
          // inside the quadratic basin; function differences are below rounding
          x = (x + v).normalized();
          accepted = true;
          break;
        }
        if (len > 0.5) alpha = 0.5 / len;
      } else {
        v = -gt;
        alpha = std::min(1.0, 0.5 / gn);
      }
      const double slope = g.dot(v);
      if (!(slope < 0)) continue;
      for (int k = 0; k < 60; ++k) {
        Eigen::VectorXd y = (x + alpha * v).normalized();
        const double fy = safe_value(field, y);
        if (fy <= f + 1e-4 * alpha * slope) {
          x = y;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
    }
    if (!accepted) {
      result.outcome = gn < 1e-8 ? Outcome::Stalled : Outcome::Failed;
      return result;
    }
  }
  // final check after the iteration cap
  try {
    auto gt = tangential_gradient(field, std::span<const double>(x.data(), n));
    double gn = 0;
    for (double v : gt) gn += v * v;
    gn = std::sqrt(gn);
    result.value = field.value(std::span<const double>(x.data(), n));
    result.x.assign(x.data(), x.data() + n);
    result.outcome = gn < options.gradient_tol ? Outcome::Converged : (gn < 1e-8 ? Outcome::Stalled : Outcome::Failed);
  } catch (const SingularEvaluation&) {
    result.outcome = Outcome::Failed;
  }
  return result;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

MinimizationReport minimize_potential(const Code& code, const Kernel& kernel, const MinimizeOptions& options) {
  if (options.restarts < 1) throw InvalidArgument("minimize_potential needs restarts >= 1");
  const Field field(code, kernel);
  const int dim = field.dim();
  const FloatCode fc = to_float(code);

  std::vector<std::vector<double>> starts;
  for (int i = 0; i < options.restarts; ++i) {
    auto rng = rng_stream(options.seed, static_cast<std::uint64_t>(i));
    starts.push_back(random_unit(dim, rng));
  }
  if (options.antipodal_starts) {
    // antipodes that are themselves code points are maxima (or poles) and are skipped
    for (std::size_t i = 0; i < fc.size(); ++i) {
      std::vector<double> a(fc.point(i).begin(), fc.point(i).end());
      for (auto& v : a) v = -v;
      bool in_code = false;
      for (std::size_t j = 0; j < fc.size() && !in_code; ++j) {
        std::vector<double> b(fc.point(j).begin(), fc.point(j).end());
        in_code = distance(a, b) < 1e-9;
      }
      if (!in_code) starts.push_back(std::move(a));
    }
  }
  const std::size_t other_starts = starts.size();
  for (const auto& c : options.candidates) {
    if (static_cast<int>(c.size()) != dim) throw InvalidArgument("candidate point has the wrong dimension");
    starts.push_back(c);
  }

  std::vector<LocalResult> results(starts.size());
  parallel_chunks(starts.size(), resolve_threads(options.threads), [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) results[i] = descend(field, starts[i], options);
  });

  MinimizationReport rep;
  rep.kernel = kernel.name();
  rep.restarts = options.restarts;
  rep.seed = options.seed;
  rep.starts = starts.size();
  rep.global_min_value = std::numeric_limits<double>::infinity();
  rep.min_from_other_starts = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    switch (r.outcome) {
      case Outcome::Converged: ++rep.converged; break;
      case Outcome::Stalled: ++rep.stalled; break;
      case Outcome::Failed: ++rep.failed; continue;
    }
    rep.global_min_value = std::min(rep.global_min_value, r.value);
    if (i < other_starts) rep.min_from_other_starts = std::min(rep.min_from_other_starts, r.value);
  }
  const double value_tol = 1e-9 * std::max(1.0, std::abs(rep.global_min_value));
  std::vector<std::size_t> order(results.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return results[a].value < results[b].value; });
  for (std::size_t i : order) {
    const auto& r = results[i];
    if (r.outcome == Outcome::Failed || r.value > rep.global_min_value + value_tol) continue;
    bool merged = false;
    for (const auto& rep_point : rep.argmin_cluster)
      if (distance(rep_point, r.x) <= options.cluster_tol) merged = true;
    if (!merged) rep.argmin_cluster.push_back(r.x);
  }
  std::sort(rep.argmin_cluster.begin(), rep.argmin_cluster.end());

  if (!options.candidates.empty()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : options.candidates) {
      Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(c.data(), dim);
      best = std::min(best, safe_value(field, y));
    }
    rep.dual_value = best;
    rep.gap = rep.min_from_other_starts - best;
    bool near = true;
    for (const auto& a : rep.argmin_cluster) {
      double dmin = std::numeric_limits<double>::infinity();
      for (const auto& c : options.candidates) dmin = std::min(dmin, distance(a, c));
      near = near && dmin <= 1e-5;
    }
    rep.dual_match = std::isfinite(best) &&
                     rep.global_min_value >= best - rep.tolerance * std::max(1.0, std::abs(best)) && near;
  }
  return rep;
}

std::vector<UniversalMinimumReport> verify_universal_minimum(const Code& code, const Code& dual,
                                                             const std::vector<Kernel>& kernels,
                                                             const MinimizeOptions& options) {
  if (code_size(dual) == 0) throw InvalidArgument("verify_universal_minimum needs a nonempty dual");
  if (ambient_dim(dual) != ambient_dim(code)) throw InvalidArgument("dual and code live in different dimensions");
  const FloatCode fd = to_float(dual);
  MinimizeOptions opts = options;
  opts.candidates.clear();
  for (std::size_t i = 0; i < fd.size(); ++i) opts.candidates.emplace_back(fd.point(i).begin(), fd.point(i).end());

  std::vector<UniversalMinimumReport> out;
  for (const auto& kernel : kernels) {
    UniversalMinimumReport r;
    r.kernel = kernel.name();
    const Field field(code, kernel);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& c : opts.candidates) {
      Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
      const double v = safe_value(field, y);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    r.dual_value = lo;
    r.dual_spread = std::isfinite(hi) ? (hi - lo) / std::max(1.0, std::abs(lo)) : std::numeric_limits<double>::infinity();
    r.equal_values = r.dual_spread <= 1e-9;
    r.minimization = minimize_potential(code, kernel, opts);
    r.global_min = r.minimization.global_min_value;
    r.margin = r.global_min - r.dual_value;
    r.no_lower_value = std::isfinite(r.dual_value) && r.margin >= -1e-8 * std::max(1.0, std::abs(r.dual_value));
    for (const auto& a : r.minimization.argmin_cluster) {
      double dmin = std::numeric_limits<double>::infinity();
      for (const auto& c : opts.candidates) dmin = std::min(dmin, distance(a, c));
      r.max_argmin_distance = std::max(r.max_argmin_distance, dmin);
    }
    if (kernel.strictly_monotone()) r.argmins_on_dual = r.max_argmin_distance <= 1e-5;
    r.pass = r.equal_values && r.no_lower_value && r.argmins_on_dual;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

int qv_sign(const QuadraticValue& q) {
  const int sa = sgn(q.rational_part());
  const int sb = sgn(q.surd_part());
  if (q.radicand() == 1) return sgn(Rational(q.rational_part() + q.surd_part()));
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const Rational a2 = q.rational_part() * q.rational_part();
  const Rational b2r = q.surd_part() * q.surd_part() * Rational(q.radicand());
  return a2 > b2r ? sa : sb;
}

std::string qv_string(const QuadraticValue& q) {
  if (q.is_rational()) {
    Rational v = q.radicand() == 1 ? Rational(q.rational_part() + q.surd_part()) : q.rational_part();
    return to_string(v);
  }
  std::string s = sgn(q.rational_part()) != 0 ? to_string(q.rational_part()) + " + " : "";
  return s + Surd::normalized(q.surd_part(), q.radicand()).str();
}

}  // namespace

SkipOneAddTwoReport skip_one_add_two_check(const Code& code, int m, const std::vector<Surd>& t_list,
                                           const Code* candidates, int threads) {
  if (m < 1 || t_list.size() != static_cast<std::size_t>(m))
    throw InvalidArgument("t_list must have exactly m entries");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (!(surd_cmp(t_list[i], Surd(-1)) > 0 && surd_cmp(t_list[i], Surd(1)) < 0))
      throw InvalidArgument("t_list entries must lie in (-1, 1)");
    if (i > 0 && !(surd_cmp(t_list[i - 1], t_list[i]) < 0))
      throw InvalidArgument("t_list must be strictly increasing");
  }
  Integer radicand = 1;
  for (const auto& t : t_list) {
    if (t.is_zero() || t.is_rational()) continue;
    if (radicand != 1 && radicand != t.radicand()) throw MixedRadicand("t_list mixes quadratic fields");
    radicand = t.radicand();
  }
  const int d = ambient_dim(code) - 1;
  SkipOneAddTwoReport r;

  auto design = index_set(code, 2 * m, false, threads);
  r.index_set.assign(design.index_set.begin(), design.index_set.end());
  r.index_ok = true;
  for (int n = 1; n <= 2 * m; ++n) {
    if (n == 2 * m - 2) continue;
    if (!design.index_set.count(n)) r.index_ok = false;
  }

  QuadraticValue sum(radicand);
  Rational sumsq = 0;
  for (const auto& t : t_list) {
    sum += QuadraticValue::from_surd(t, radicand);
    sumsq += t.square();
  }
  const QuadraticValue half_top = QuadraticValue::from_surd(t_list.back(), radicand) *
                                  QuadraticValue(Rational(1, 2), Rational(0), radicand);
  const QuadraticValue sum_gap = half_top - sum;
  r.sum_ok = qv_sign(sum_gap) > 0;
  r.sum = qv_string(sum);
  r.sum_margin = sum_gap.to_double();

  const QuadraticValue expr = QuadraticValue(sumsq, Rational(0), radicand) -
                              QuadraticValue(Rational(2), Rational(0), radicand) * sum * sum;
  const Rational bound(Rational(m * (2 * m - 1)) / Rational(4 * m + d - 3));
  const QuadraticValue sq_gap = QuadraticValue(bound, Rational(0), radicand) - expr;
  r.sumsq_ok = qv_sign(sq_gap) > 0;
  r.sumsq_expr = qv_string(expr);
  r.bound = to_string(bound);
  r.sumsq_margin = sq_gap.to_double();

  if (candidates != nullptr) {
    const auto* lc = std::get_if<LatticeCode>(&code);
    const auto* lcand = std::get_if<LatticeCode>(candidates);
    const FloatCode fcand = to_float(*candidates);
    for (std::size_t p = 0; p < code_size(*candidates) && !r.candidates_ok; ++p) {
      bool inside = true;
      if (lc && lcand) {
        for (const auto& e : spectrum(ExactPoint::of(*lcand, p), *lc).entries)
          inside = inside && std::find(t_list.begin(), t_list.end(), *e.exact) != t_list.end();
      } else {
        for (const auto& e : spectrum(fcand.point(p), code).entries) {
          bool hit = false;
          for (const auto& t : t_list) hit = hit || std::abs(t.to_double() - e.value) <= 1e-9;
          inside = inside && hit;
        }
      }
      r.candidates_ok = inside;
    }
  }
  return r;
}

}  // namespace stiffkit
