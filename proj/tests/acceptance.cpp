// Reproduction criteria, one line of output each. Expected values come from
// the statements being reproduced or from the independent oracles in
// oracles.hpp; the library is only used for the quantity under test.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "stiffkit/design.hpp"
#include "stiffkit/gegenbauer.hpp"
#include "stiffkit/potential.hpp"
#include "stiffkit/stiffness.hpp"
#include "stiffkit/transforms.hpp"

using namespace stiffkit;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "failed: ";
      else note << "; ";
      note << what;
      ok = false;
    }
  }
};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Code from_rows(const std::string& name, const oracle::Rows& rows) {
  std::vector<double> c;
  for (const auto& r : rows) c.insert(c.end(), r.begin(), r.end());
  return FloatCode(name, static_cast<int>(rows[0].size()), std::move(c), 1e-12);
}

oracle::Rows e8_unit_roots() {
  oracle::Rows out;
  for (const auto& y : oracle::e8_shell_doubled(8)) {
    std::vector<double> v;
    for (int x : y) v.push_back(x / std::sqrt(8.0));
    out.push_back(v);
  }
  return out;
}

std::vector<Surd> nodes_241() {
  return {Surd::parse("-1/2*sqrt(2)"), Surd::parse("-1/4*sqrt(2)"), Surd(0), Surd::parse("1/4*sqrt(2)"),
          Surd::parse("1/2*sqrt(2)")};
}

std::vector<Code> two_stiff_corpus() {
  std::vector<Code> corpus;
  for (int d = 2; d <= 6; ++d) corpus.emplace_back(cross_polytope(d));
  for (int d = 2; d <= 6; ++d) corpus.emplace_back(cube(d));
  for (int d = 5; d <= 7; ++d) corpus.emplace_back(demicube(d, Parity::Even));
  corpus.emplace_back(demicube(5, Parity::Odd));
  corpus.emplace_back(symmetrize(demicube(3, Parity::Even)));
  corpus.emplace_back(ngon(4));
  corpus.emplace_back(rotated_cubes(2).code);
  return corpus;
}

// 1
void design_identities(Check& c) {
  auto t0 = Clock::now();
  const LatticeCode code = polytope_2_41();
  for (int n = 1; n <= 10; ++n) {
    const Rational s = pair_sum(code, n);
    if (n == 8) {
      c.require(sgn(s) != 0, "pair_sum(8) vanishes");
      c.note << "pair_sum(8) = " << to_string(s);
    } else {
      c.require(sgn(s) == 0, "pair_sum(" + std::to_string(n) + ") = " + to_string(s));
    }
  }
  const double secs = since(t0);
  c.require(secs < 10, "runtime " + std::to_string(secs) + " s");
  // oracles: the point set is the norm-4 shell of E8, and the nonzero sum agrees with direct summation
  auto shell = oracle::e8_shell_doubled(16);
  std::vector<std::int64_t> coords;
  for (const auto& y : shell) coords.insert(coords.end(), y.begin(), y.end());
  c.require(same_point_set(code, LatticeCode("shell", 8, 16, coords)), "2160 points differ from the E8 shell");
  const double direct = oracle::pair_sum(oracle::rows(code), 8);
  c.require(std::abs(direct - pair_sum(code, 8).get_d()) < 1e-6 * std::abs(direct), "pair_sum(8) disagrees with direct sum");
  c.note << ", " << secs << " s";
}

// 2
void demicubes(Check& c) {
  for (int d = 4; d <= 8; ++d) {
    const LatticeCode h = demicube(d, Parity::Even);
    c.require(index_set(h, 3).strength >= 3, "demicube(" + std::to_string(d) + ") strength < 3");
    for (int n = 1; n <= 3; ++n) c.require(oracle::pair_sum(h, n) == 0, "direct pair sum nonzero");
  }
  for (int d = 5; d <= 7; ++d) {
    auto t0 = Clock::now();
    auto dual = dual_search(demicube(d, Parity::Even), 2);
    const double secs = since(t0);
    c.require(dual.complete && dual.exact, "dual not complete/exact");
    c.require(oracle::same_sets(oracle::rows(dual.points), oracle::signed_basis(d), 1e-12),
              "D_2(demicube(" + std::to_string(d) + ")) is not the signed basis");
    c.require(secs < 60, "runtime");
    c.note << "d=" << d << " |D_2|=" << dual.size() << " ";
  }
}

// 3
void dual_241(Check& c) {
  auto t0 = Clock::now();
  DualSearchOptions opts;
  opts.exact_nodes = nodes_241();
  const LatticeCode code = polytope_2_41();
  auto dual = dual_search(code, 5, opts);
  const double secs = since(t0);
  c.require(dual.exact && dual.complete, "dual not exact/complete");
  c.require(oracle::same_sets(oracle::rows(dual.points), e8_unit_roots(), 1e-12), "D_5 differs from the 240 E8 roots");
  const auto nodes = nodes_241();
  if (const auto* roots = std::get_if<LatticeCode>(&dual.points)) {
    for (std::size_t p = 0; p < roots->size(); ++p) {
      auto sp = spectrum(ExactPoint::of(*roots, p), code);
      bool ok = sp.distinct_count() == nodes.size();
      for (std::size_t j = 0; ok && j < nodes.size(); ++j) ok = *sp.entries[j].exact == nodes[j];
      c.require(ok, "root spectrum differs");
      if (!ok) break;
    }
  }
  c.require(secs < 600, "runtime");
  c.note << "|D_5| = " << dual.size() << ", " << dual.systems << " systems, " << secs << " s";
}

// 4
void frequencies(Check& c) {
  std::size_t rows = 0;
  for (const auto& code : two_stiff_corpus()) {
    const int d = ambient_dim(code) - 1;
    const NodeSet& ns = nodes(d, 2);
    c.require(ns.weights_exact && ns.exact_weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
              "weights of nodes(" + std::to_string(d) + ",2) are not 1/2");
    auto cert = certify_stiff(code, 2);
    c.require(cert.stiff, code_name(code) + " not 2-stiff");
    const auto half = static_cast<std::int64_t>(code_size(code) / 2);
    for (const auto& row : cert.frequency_table) {
      c.require(row == std::vector<std::int64_t>{half, half}, code_name(code) + " frequencies");
      ++rows;
    }
    // direct count of the dots at +-1/sqrt(d+1)
    const double kappa = 1.0 / std::sqrt(d + 1.0);
    for (const auto& z : oracle::rows(cert.dual.points)) {
      std::int64_t lo = 0, hi = 0;
      for (const auto& x : oracle::rows(code)) {
        double t = 0;
        for (std::size_t k = 0; k < x.size(); ++k) t += x[k] * z[k];
        lo += std::abs(t + kappa) < 1e-9;
        hi += std::abs(t - kappa) < 1e-9;
      }
      c.require(lo == half && hi == half, code_name(code) + " direct count");
    }
  }
  c.note << rows << " dual points";
}

// 5
void gegenbauer_exact(Check& c) {
  for (int d = 1; d <= 9; ++d) {
    for (int n = 0; n <= 12; ++n) {
      const Polynomial& p = gegenbauer_poly(d, n);
      c.require(p(Rational(1)) == 1, "P_n(1) != 1");
      for (int k = -7; k <= 7; ++k) {
        const Rational t = make_rational(k, 7);
        c.require(p(t) == oracle::gegenbauer(d, n, t), "P_n differs from the recurrence");
      }
      for (int j = 0; j < n; ++j) c.require(a0(p * gegenbauer_poly(d, j), d) == 0, "not orthogonal");
    }
    const Surd k = Surd::normalized(make_rational(1, d + 1), d + 1);  // 1/sqrt(d+1)
    const NodeSet& ns = nodes(d, 2);
    c.require(ns.exact && ns.exact_nodes == std::vector<Surd>{-k, k}, "nodes(d,2) != +-1/sqrt(d+1)");
  }
  c.note << "d <= 9, n <= 12";
}

// 6
void universal_minima(Check& c) {
  const std::vector<Kernel> kernels{Kernel::riesz(1), Kernel::riesz(2), Kernel::riesz(4), Kernel::gaussian(1)};
  struct Case {
    Code code;
    oracle::Rows dual;
  };
  const std::vector<Case> cases{{demicube(5, Parity::Even), oracle::signed_basis(5)},
                                {demicube(6, Parity::Even), oracle::signed_basis(6)},
                                {cross_polytope(4), oracle::cube_vertices(4)}};
  MinimizeOptions mo;
  mo.restarts = 200;
  mo.seed = 11;
  double worst = 0;
  for (const auto& cs : cases) {
    auto t0 = Clock::now();
    for (const auto& r : verify_universal_minimum(cs.code, from_rows("dual", cs.dual), kernels, mo)) {
      c.require(r.equal_values, code_name(cs.code) + " " + r.kernel + " dual values differ");
      c.require(r.no_lower_value, code_name(cs.code) + " " + r.kernel + " lower value found");
      c.require(r.max_argmin_distance <= 1e-5, code_name(cs.code) + " " + r.kernel + " argmin off the dual");
      worst = std::max(worst, r.max_argmin_distance);
    }
    c.require(since(t0) < 120, "runtime");
  }
  // hand evaluation: 8/(2 - 2/sqrt5) + 8/(2 + 2/sqrt5) = 10 for demicube(5), riesz s=2, x = e_1
  const std::vector<double> e1{1, 0, 0, 0, 0};
  c.require(std::abs(potential_eval(e1, demicube(5, Parity::Even), Kernel::riesz(2)) - 10.0) < 1e-12,
            "closed-form value");
  c.note << "worst argmin distance " << worst;
}

// 7
void minimum_241(Check& c) {
  auto t0 = Clock::now();
  const LatticeCode code = polytope_2_41();
  const auto pts = oracle::rows(code);
  const auto roots = e8_unit_roots();
  MinimizeOptions mo;
  mo.restarts = 1000;
  mo.seed = 2024;
  for (const auto& kernel : {Kernel::riesz(2), Kernel::gaussian(1)}) {
    auto rep = minimize_potential(code, kernel, mo);
    double at_root = 0;
    for (const auto& x : pts) {
      double t = 0;
      for (int k = 0; k < 8; ++k) t += x[k] * roots[0][k];
      at_root += kernel.value(t);
    }
    const double rel = std::abs(rep.global_min_value - at_root) / at_root;
    c.require(rel <= 1e-8, kernel.name() + " global min differs from the root value");
    double worst = 0;
    for (const auto& a : rep.argmin_cluster) {
      double best = 1e9;
      for (const auto& r : roots) best = std::min(best, oracle::distance(a, r));
      worst = std::max(worst, best);
    }
    c.require(!rep.argmin_cluster.empty() && worst <= 1e-4, kernel.name() + " argmin away from the roots");
    c.note << kernel.name() << ": rel " << rel << ", " << rep.argmin_cluster.size() << " argmins, worst " << worst
           << "; ";
  }
  const double secs = since(t0);
  c.require(secs < 900, "runtime");
  c.note << secs << " s";
}

// 8
void skip_one_add_two(Check& c) {
  const Code roots = e8_roots();
  auto rep = skip_one_add_two_check(polytope_2_41(), 5, nodes_241(), &roots);
  // exact values: sum t = 0; sum t^2 = 2(1/8) + 2(1/2); bound m(2m-1)/(4m+d-3) with d = 7, m = 5
  const Rational sumsq = Rational(2) * Rational(1, 8) + Rational(2) * Rational(1, 2);
  const Rational bound = make_rational(5 * 9, 4 * 5 + 7 - 3);
  c.require(rep.sum == "0" && rep.sum_ok, "sum condition");
  c.require(rep.sumsq_expr == to_string(sumsq) && rep.bound == to_string(bound) && sumsq < bound && rep.sumsq_ok,
            "square-sum condition");
  c.require(rep.index_ok, "index set lacks {1..7, 9, 10}");
  c.require(rep.candidates_ok, "no candidate in D");
  c.note << "sum " << rep.sum << " < t_5/2, " << rep.sumsq_expr << " < " << rep.bound;
}

// 9
void transforms(Check& c) {
  const Code d5 = demicube(5, Parity::Even);
  const Code sym = symmetrize(d5);
  c.require(oracle::same_sets(oracle::rows(sym), oracle::cube_vertices(5), 1e-12), "symmetrize(demicube(5)) != cube(5)");
  c.require(oracle::same_sets(oracle::rows(dual_search(sym, 2).points), oracle::rows(dual_search(d5, 2).points), 1e-12),
            "duals differ after symmetrisation");
  auto g = glue(cross_polytope(3), cross_polytope(3), 2, 99);
  const auto pts = oracle::rows(g.code);
  c.require(pts.size() == 12, "glued size");
  for (int n = 1; n <= 3; ++n) c.require(std::abs(oracle::pair_sum(pts, n)) < 1e-9, "glued code not a 3-design");
  std::vector<double> dots;
  for (const auto& x : pts) {
    double t = 0;
    for (int k = 0; k < 3; ++k) t += x[k] * g.z2[k];
    dots.push_back(t);
  }
  std::sort(dots.begin(), dots.end());
  std::size_t distinct = 1;
  for (std::size_t i = 1; i < dots.size(); ++i) distinct += dots[i] - dots[i - 1] > 1e-9;
  c.require(distinct <= 2 && g.z2_in_dual && g.design_ok, "z2 not in D_2 of the glued code");
  auto rc = rotated_cubes(3);
  c.require(rc.dual_is_axis && rc.certificate.stiff, "rotated_cubes(3) dual");
  c.require(oracle::same_sets(oracle::rows(rc.certificate.dual.points), {{0, 0, 1}, {0, 0, -1}}, 1e-12),
            "rotated_cubes(3) dual is not {+-e3}");
  c.note << "glue attempts " << g.attempts;
}

// 10
void circle(Check& c) {
  for (int m = 2; m <= 4; ++m) {
    const FloatCode even = ngon(2 * m);
    c.require(index_set(even, 2 * m - 1).strength >= 2 * m - 1, "ngon design check");
    for (int n = 1; n <= 2 * m - 1; ++n)
      c.require(std::abs(oracle::pair_sum(oracle::rows(even), n)) < 1e-9, "ngon direct pair sum");
    oracle::Rows mids;
    for (int k = 0; k < 2 * m; ++k) {
      const double a = std::numbers::pi * (2 * k + 1) / (2.0 * m);
      mids.push_back({std::cos(a), std::sin(a)});
    }
    auto scan = circle_dual_scan(even, m, 1000000);
    c.require(oracle::same_sets(scan, mids, 1e-8), "ngon(" + std::to_string(2 * m) + ") scan");
    auto odd = circle_dual_scan(ngon(2 * m + 1), m, 1000000);
    c.require(odd.empty(), "ngon(" + std::to_string(2 * m + 1) + ") has a direction");
    c.note << "m=" << m << ": " << scan.size() << " directions, odd " << odd.size() << "; ";
  }
}

// 11
void structure(Check& c) {
  for (const auto& code : two_stiff_corpus()) {
    auto cert = certify_stiff(code, 2);
    c.require(cert.antipodal_dual, code_name(code) + " dual not antipodal");
    const auto d1 = static_cast<double>(ambient_dim(code));
    c.require(static_cast<double>(cert.dual.size()) <= std::pow(2.0, d1), code_name(code) + " cardinality");
    c.require(cert.double_dual_inclusion, code_name(code) + " double dual");
  }
  std::vector<Code> triple{demicube(5, Parity::Even)};
  for (int d = 2; d <= 6; ++d) triple.emplace_back(cross_polytope(d));
  for (const auto& code : triple) {
    const Code a = dual_search(code, 2).points;
    const Code b = dual_search(a, 2).points;
    const Code e = dual_search(b, 2).points;
    c.require(oracle::same_sets(oracle::rows(e), oracle::rows(a), 1e-12), code_name(code) + " triple dual");
  }
  c.note << two_stiff_corpus().size() << " certificates, " << triple.size() << " triple duals";
}

// 12
void oracle_equivalence(Check& c) {
  const std::vector<Code> codes{cube(3), cross_polytope(3), symmetrize(demicube(3, Parity::Even)), rotated_cubes(2).code};
  for (const auto& code : codes) {
    for (int m = 1; m <= 2; ++m) {
      oracle::Rows searched;
      try {
        searched = oracle::rows(dual_search(code, m).points);
      } catch (const NotInGeneralPosition&) {
        c.require(false, "unexpected NotInGeneralPosition");
      }
      auto sampled = oracle::dense_dual(oracle::rows(code), m);
      c.require(oracle::same_sets(searched, sampled, 1e-8), code_name(code) + " m=" + std::to_string(m));
      c.note << code_name(code) << "/" << m << ": " << searched.size() << " ";
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"exact design identities of the 2160-point code", design_identities},
      {"demicube 3-designs and D_2 = signed basis", demicubes},
      {"D_5 of the 2160-point code = 240 E8 roots", dual_241},
      {"node frequencies N/2 for 2-stiff codes", frequencies},
      {"Gegenbauer exactness", gegenbauer_exact},
      {"universal minima (numerical)", universal_minima},
      {"2160-point code minimised at E8 roots", minimum_241},
      {"skip-one-add-two hypotheses", skip_one_add_two},
      {"symmetrize, glue, rotated cubes", transforms},
      {"stiff polygons on S^1", circle},
      {"antipodality, cardinality, double and triple duals", structure},
      {"dual_search vs dense sampling on S^2", oracle_equivalence},
  };
  int failed = 0, id = 0;
  for (const auto& [title, fn] : criteria) {
    ++id;
    Check c;
    auto t0 = Clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %2d: %s (%.2f s) -- %s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), since(t0),
                c.note.str().c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  std::printf("%d/%d criteria passed\n", id - failed, id);
  return failed == 0 ? 0 : 1;
}
