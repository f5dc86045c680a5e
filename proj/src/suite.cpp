#include "stiffkit/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "stiffkit/codes.hpp"
#include "stiffkit/design.hpp"
#include "stiffkit/gegenbauer.hpp"
#include "stiffkit/potential.hpp"
#include "stiffkit/stiffness.hpp"
#include "stiffkit/transforms.hpp"
#include "cluster1d.hpp"

namespace stiffkit {

std::vector<std::vector<double>> sampled_dual_scan(const std::vector<std::vector<double>>& points, int m,
                                                   std::size_t samples, double tol) {
  const std::size_t n = points.size();
  std::vector<Eigen::Vector3d> x;
  for (const auto& p : points) x.emplace_back(p[0], p[1], p[2]);
  auto spread_dots = [&](const Eigen::Vector3d& z, std::vector<std::pair<double, std::size_t>>& dots) {
    dots.clear();
    for (std::size_t i = 0; i < n; ++i) dots.emplace_back(z.dot(x[i]), i);
    std::sort(dots.begin(), dots.end());
  };
  std::vector<std::pair<double, std::size_t>> dots;
  std::vector<double> values;
  // coarse residual threshold: the sampling spacing is about sqrt(4 pi / samples)
  const double spacing = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(samples));
  const double coarse = static_cast<double>(n) * 4.0 * spacing * spacing;
  std::vector<std::vector<double>> found;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t s = 0; s < samples; ++s) {
    const double zc = 1.0 - (2.0 * static_cast<double>(s) + 1.0) / static_cast<double>(samples);
    const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    Eigen::Vector3d z(r * std::cos(golden * s), r * std::sin(golden * s), zc);
    spread_dots(z, dots);
    values.clear();
    for (const auto& d : dots) values.push_back(d.first);
    std::vector<int> label;
    detail::cluster_sorted(values, m, &label);
    double sse = 0;
    {
      std::vector<double> sum(m, 0), cnt(m, 0), sq(m, 0);
      for (std::size_t i = 0; i < n; ++i) {
        sum[label[i]] += values[i];
        sq[label[i]] += values[i] * values[i];
        cnt[label[i]] += 1;
      }
      for (int g = 0; g < m; ++g)
        if (cnt[g] > 0) sse += sq[g] - sum[g] * sum[g] / cnt[g];
    }
    if (sse > coarse) continue;
    // refinement: z minimises z^T S z for the within-cluster scatter S of the current grouping
    for (int it = 0; it < 50; ++it) {
      std::vector<Eigen::Vector3d> mean(m, Eigen::Vector3d::Zero());
      std::vector<double> cnt(m, 0);
      for (std::size_t i = 0; i < n; ++i) {
        mean[label[i]] += x[dots[i].second];
        cnt[label[i]] += 1;
      }
      for (int g = 0; g < m; ++g)
        if (cnt[g] > 0) mean[g] /= cnt[g];
      Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d dv = x[dots[i].second] - mean[label[i]];
        scatter += dv * dv.transpose();
      }
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(scatter);
      Eigen::Vector3d next = eig.eigenvectors().col(0);
      if (next.dot(z) < 0) next = -next;
      const double moved = (next - z).norm();
      z = next;
      spread_dots(z, dots);
      values.clear();
      for (const auto& d : dots) values.push_back(d.first);
      detail::cluster_sorted(values, m, &label);
      if (moved < 1e-15) break;
    }
    // accept only if the dots take at most m values within tol
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < n; ++i)
      if (values[i] - values[i - 1] > tol) ++distinct;
    if (distinct > static_cast<std::size_t>(m)) continue;
    bool dup = false;
    for (const auto& f : found) dup = dup || (Eigen::Vector3d(f[0], f[1], f[2]) - z).norm() < 1e-6;
    if (!dup) found.push_back({z[0], z[1], z[2]});
  }
  std::sort(found.begin(), found.end());
  return found;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool same_float_sets(const Code& a, const std::vector<std::vector<double>>& b, double tol) {
  const FloatCode fa = to_float(a);
  if (fa.size() != b.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    bool hit = false;
    for (const auto& q : b) {
      double d = 0;
      for (std::size_t k = 0; k < q.size(); ++k) d = std::max(d, std::abs(fa.point(i)[k] - q[k]));
      hit = hit || d <= tol;
    }
    if (!hit) return false;
  }
  return true;
}

std::vector<std::vector<double>> rows(const Code& code) {
  const FloatCode f = to_float(code);
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.emplace_back(f.point(i).begin(), f.point(i).end());
  return out;
}

std::vector<Surd> nodes_241() {
  return {Surd::parse("-1/2*sqrt(2)"), Surd::parse("-1/4*sqrt(2)"), Surd(0), Surd::parse("1/4*sqrt(2)"),
          Surd::parse("1/2*sqrt(2)")};
}

CriterionResult c1_design_identities(const SuiteOptions& o) {
  CriterionResult r{1, "exact design identities of the 2160-point code", true, "", 0};
  const LatticeCode code = polytope_2_41();
  std::ostringstream detail;
  for (int n = 1; n <= 10; ++n) {
    const Rational s = pair_sum(code, n, o.threads);
    const bool zero = sgn(s) == 0;
    if (zero != (n != 8)) r.pass = false;
    if (n == 8) detail << "pair_sum(8) = " << to_string(s);
  }
  r.detail = detail.str();
  return r;
}

CriterionResult c2_demicubes(const SuiteOptions& o) {
  CriterionResult r{2, "demicubes are 3-designs with dual = cross-polytope", true, "", 0};
  std::ostringstream detail;
  for (int d = 4; d <= 8; ++d) {
    auto rep = index_set(demicube(d, Parity::Even), 3, false, o.threads);
    if (rep.strength < 3) r.pass = false;
  }
  for (int d = 5; d <= 7; ++d) {
    DualSearchOptions opts;
    opts.threads = o.threads;
    auto t0 = Clock::now();
    auto dual = dual_search(demicube(d, Parity::Even), 2, opts);
    const double secs = seconds_since(t0);
    const bool ok = dual.complete && dual.exact && same_point_set(dual.points, cross_polytope(d)) && secs < 60;
    if (!ok) r.pass = false;
    detail << "d=" << d << ": |D_2|=" << dual.size() << " ";
  }
  r.detail = detail.str();
  return r;
}

CriterionResult c3_dual_241(const SuiteOptions& o) {
  CriterionResult r{3, "D_5 of the 2160-point code is the E8 root system", true, "", 0};
  DualSearchOptions opts;
  opts.threads = o.threads;
  opts.exact_nodes = nodes_241();
  const LatticeCode code = polytope_2_41();
  auto dual = dual_search(code, 5, opts);
  r.pass = dual.exact && dual.complete && same_point_set(dual.points, e8_roots());
  const auto nodes = nodes_241();
  if (const auto* lc = std::get_if<LatticeCode>(&dual.points)) {
    for (std::size_t p = 0; p < lc->size() && r.pass; ++p) {
      auto sp = spectrum(ExactPoint::of(*lc, p), code);
      if (sp.distinct_count() != 5) r.pass = false;
      for (std::size_t j = 0; j < sp.entries.size() && r.pass; ++j) r.pass = *sp.entries[j].exact == nodes[j];
    }
  } else {
    r.pass = false;
  }
  r.detail = "|D_5| = " + std::to_string(dual.size()) + ", systems = " + std::to_string(dual.systems);
  return r;
}

std::vector<Code> two_stiff_corpus() {
  std::vector<Code> corpus;
  for (int d = 2; d <= 6; ++d) corpus.emplace_back(cross_polytope(d));
  for (int d = 2; d <= 6; ++d) corpus.emplace_back(cube(d));
  for (int d = 5; d <= 7; ++d) corpus.emplace_back(demicube(d, Parity::Even));
  corpus.emplace_back(demicube(5, Parity::Odd));
  return corpus;
}

CriterionResult c4_frequencies(const SuiteOptions& o) {
  CriterionResult r{4, "node frequencies equal N/2 for 2-stiff codes", true, "", 0};
  std::size_t checked = 0;
  DualSearchOptions opts;
  opts.threads = o.threads;
  for (const auto& code : two_stiff_corpus()) {
    const int d = ambient_dim(code) - 1;
    const NodeSet& ns = nodes(d, 2);
    if (!ns.weights_exact || ns.exact_weights != std::vector<Rational>{Rational(1, 2), Rational(1, 2)}) r.pass = false;
    auto cert = certify_stiff(code, 2, opts);
    const auto half = static_cast<std::int64_t>(code_size(code) / 2);
    if (!cert.stiff || !cert.frequencies_match) r.pass = false;
    for (const auto& row : cert.frequency_table) {
      if (row != std::vector<std::int64_t>{half, half}) r.pass = false;
      ++checked;
    }
  }
  r.detail = std::to_string(checked) + " dual points checked";
  return r;
}

CriterionResult c5_gegenbauer(const SuiteOptions&) {
  CriterionResult r{5, "Gegenbauer orthogonality, normalisation and 2-point nodes", true, "", 0};
  for (int d = 1; d <= 9; ++d) {
    for (int i = 0; i <= 12; ++i) {
      const Polynomial& p = gegenbauer_poly(d, i);
      if (p(Rational(1)) != 1) r.pass = false;
      for (int j = 0; j < i; ++j)
        if (a0(p * gegenbauer_poly(d, j), d) != 0) r.pass = false;
    }
    const NodeSet& ns = nodes(d, 2);
    const Surd k = Surd::inverse_sqrt(d + 1);
    if (!ns.exact || ns.exact_nodes != std::vector<Surd>{-k, k}) r.pass = false;
  }
  r.detail = "d <= 9, n <= 12";
  return r;
}

CriterionResult c6_universal_minima(const SuiteOptions& o) {
  CriterionResult r{6, "universal minima of demicubes and the cross-polytope", true, "", 0};
  std::vector<Kernel> kernels{Kernel::riesz(1), Kernel::riesz(2), Kernel::riesz(4), Kernel::gaussian(1)};
  const std::vector<std::pair<Code, Code>> cases{{demicube(5, Parity::Even), cross_polytope(5)},
                                                 {demicube(6, Parity::Even), cross_polytope(6)},
                                                 {cross_polytope(4), cube(4)}};
  MinimizeOptions mo;
  mo.restarts = o.restarts;
  mo.seed = o.seed;
  mo.threads = o.threads;
  double worst_margin = 0, worst_dist = 0;
  for (const auto& [code, dual] : cases) {
    auto t0 = Clock::now();
    for (const auto& rep : verify_universal_minimum(code, dual, kernels, mo)) {
      if (!rep.pass) r.pass = false;
      worst_margin = std::min(worst_margin, rep.margin);
      worst_dist = std::max(worst_dist, rep.max_argmin_distance);
    }
    if (seconds_since(t0) > 120) r.pass = false;
  }
  std::ostringstream detail;
  detail << "worst margin " << worst_margin << ", worst argmin distance " << worst_dist;
  r.detail = detail.str();
  return r;
}

CriterionResult c7_minimum_241(const SuiteOptions& o) {
  CriterionResult r{7, "E8 roots minimise potentials of the 2160-point code", true, "", 0};
  const LatticeCode code = polytope_2_41();
  const LatticeCode roots = e8_roots();
  MinimizeOptions mo;
  mo.restarts = o.restarts_241;
  mo.seed = o.seed;
  mo.threads = o.threads;
  std::ostringstream detail;
  for (const auto& kernel : {Kernel::riesz(2), Kernel::gaussian(1)}) {
    auto rep = minimize_potential(code, kernel, mo);
    const auto root = ExactPoint::of(roots, 0).to_unit();
    const double at_root = potential_eval(root, code, kernel);
    const double rel = std::abs(rep.global_min_value - at_root) / std::abs(at_root);
    if (!(rel <= 1e-8)) r.pass = false;
    const FloatCode fr = to_float(roots);
    double worst = 0;
    for (const auto& a : rep.argmin_cluster) {
      double best = INFINITY;
      for (std::size_t i = 0; i < fr.size(); ++i) {
        double s = 0;
        for (int k = 0; k < 8; ++k) s += (a[k] - fr.point(i)[k]) * (a[k] - fr.point(i)[k]);
        best = std::min(best, std::sqrt(s));
      }
      worst = std::max(worst, best);
    }
    if (!(worst <= 1e-4) || rep.argmin_cluster.empty()) r.pass = false;
    detail << kernel.name() << ": rel " << rel << ", " << rep.argmin_cluster.size() << " argmins; ";
  }
  r.detail = detail.str();
  return r;
}

CriterionResult c8_skip_one_add_two(const SuiteOptions& o) {
  CriterionResult r{8, "skip-one-add-two hypotheses for the 2160-point code", true, "", 0};
  const Code roots = e8_roots();
  auto rep = skip_one_add_two_check(polytope_2_41(), 5, nodes_241(), &roots, o.threads);
  r.pass = rep.pass() && rep.sum == "0" && rep.sumsq_expr == "5/4" && rep.bound == "15/8";
  r.detail = "sum " + rep.sum + ", sumsq " + rep.sumsq_expr + " < " + rep.bound;
  return r;
}

CriterionResult c9_transforms(const SuiteOptions& o) {
  CriterionResult r{9, "symmetrisation, gluing and rotated cubes", true, "", 0};
  DualSearchOptions opts;
  opts.threads = o.threads;
  const Code d5 = demicube(5, Parity::Even);
  const Code sym = symmetrize(d5);
  const bool sym_ok = same_point_set(sym, cube(5)) &&
                      same_point_set(dual_search(sym, 2, opts).points, dual_search(d5, 2, opts).points);
  auto g = glue(cross_polytope(3), cross_polytope(3), 2, o.seed, o.threads);
  const bool glue_ok = code_size(g.code) == 12 && g.design_ok && g.z2_in_dual;
  auto rc = rotated_cubes(3, o.threads);
  const bool rc_ok = rc.dual_is_axis && rc.certificate.stiff;
  r.pass = sym_ok && glue_ok && rc_ok;
  r.detail = std::string("symmetrize ") + (sym_ok ? "ok" : "FAIL") + ", glue " + (glue_ok ? "ok" : "FAIL") +
             ", rotated_cubes(3) " + (rc_ok ? "ok" : "FAIL");
  return r;
}

CriterionResult c10_circle(const SuiteOptions& o) {
  CriterionResult r{10, "stiff polygons on S^1", true, "", 0};
  std::ostringstream detail;
  for (int m = 2; m <= 4; ++m) {
    const FloatCode even = ngon(2 * m);
    if (index_set(even, 2 * m - 1, false, o.threads).strength < 2 * m - 1) r.pass = false;
    auto dirs = circle_dual_scan(even, m, o.circle_resolution);
    std::vector<std::vector<double>> mids;
    for (int k = 0; k < 2 * m; ++k) {
      const double a = std::numbers::pi * (2 * k + 1) / (2.0 * m);
      mids.push_back({std::cos(a), std::sin(a)});
    }
    const bool ok = dirs.size() == mids.size() &&
                    same_float_sets(FloatCode("scan", 2, [&] {
                                      std::vector<double> c;
                                      for (const auto& d : dirs) c.insert(c.end(), d.begin(), d.end());
                                      return c;
                                    }(), 1e-6),
                                    mids, 1e-8);
    if (!ok) r.pass = false;
    auto odd = circle_dual_scan(ngon(2 * m + 1), m, o.circle_resolution);
    if (!odd.empty()) r.pass = false;
    detail << "m=" << m << ": " << dirs.size() << "/" << odd.size() << " ";
  }
  r.detail = detail.str();
  return r;
}

CriterionResult c11_structure(const SuiteOptions& o) {
  CriterionResult r{11, "antipodal duals, cardinality bound, double and triple duals", true, "", 0};
  DualSearchOptions opts;
  opts.threads = o.threads;
  std::size_t certified = 0;
  for (const auto& code : two_stiff_corpus()) {
    auto cert = certify_stiff(code, 2, opts);
    if (!(cert.antipodal_dual && cert.cardinality_ok && cert.double_dual_inclusion)) r.pass = false;
    ++certified;
  }
  std::vector<Code> triple{demicube(5, Parity::Even)};
  for (int d = 2; d <= 6; ++d) triple.emplace_back(cross_polytope(d));
  for (const auto& code : triple) {
    const Code d1 = dual_search(code, 2, opts).points;
    const Code d2 = dual_search(d1, 2, opts).points;
    const Code d3 = dual_search(d2, 2, opts).points;
    if (!same_point_set(d3, d1)) r.pass = false;
  }
  r.detail = std::to_string(certified) + " certificates, " + std::to_string(triple.size()) + " triple duals";
  return r;
}

CriterionResult c12_oracle(const SuiteOptions& o) {
  CriterionResult r{12, "dual_search agrees with dense sampling on S^2", true, "", 0};
  DualSearchOptions opts;
  opts.threads = o.threads;
  std::vector<Code> codes{cube(3), cross_polytope(3), symmetrize(demicube(3, Parity::Even)), rotated_cubes(2).code};
  std::ostringstream detail;
  for (const auto& code : codes) {
    for (int m = 1; m <= 2; ++m) {
      std::vector<std::vector<double>> searched;
      try {
        searched = rows(dual_search(code, m, opts).points);
      } catch (const NotInGeneralPosition&) {
        continue;  // D_1 of a spanning code is empty unless it lies in a hyperplane
      }
      auto sampled = sampled_dual_scan(rows(code), m);
      const bool ok = searched.size() == sampled.size() &&
                      same_float_sets(FloatCode("sampled", 3, [&] {
                                        std::vector<double> c;
                                        for (const auto& d : sampled) c.insert(c.end(), d.begin(), d.end());
                                        return c;
                                      }(), 1e-6),
                                      searched, 1e-8);
      if (!ok) r.pass = false;
      detail << code_name(code) << " m=" << m << ": " << searched.size() << "/" << sampled.size() << " ";
    }
  }
  r.detail = detail.str();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                             const std::function<void(const CriterionResult&)>& progress) {
  using Fn = CriterionResult (*)(const SuiteOptions&);
  const Fn criteria[] = {c1_design_identities, c2_demicubes,    c3_dual_241,   c4_frequencies,
                         c5_gegenbauer,        c6_universal_minima, c7_minimum_241, c8_skip_one_add_two,
                         c9_transforms,        c10_circle,      c11_structure, c12_oracle};
  std::vector<CriterionResult> out;
  int id = 1;
  for (Fn fn : criteria) {
    auto t0 = Clock::now();
    CriterionResult r;
    try {
      r = fn(options);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion " + std::to_string(id);
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = seconds_since(t0);
    if (progress) progress(r);
    out.push_back(std::move(r));
    ++id;
  }
  return out;
}

}  // namespace stiffkit
