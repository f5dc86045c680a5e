#include "stiffkit/stiffness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include "stiffkit/kernels.hpp"
#include "stiffkit/linalg.hpp"
#include "stiffkit/parallel.hpp"
#include "cluster1d.hpp"

namespace stiffkit {

namespace {

std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

// Splits the m^depth enumeration into prefixes so that workers get several tasks each.
int prefix_depth(std::size_t m, int dim, unsigned threads) {
  int k = 0;
  std::uint64_t tasks = 1;
  while (k < dim && tasks < 8ULL * threads) {
    tasks *= m;
    ++k;
  }
  return k;
}

// Scales integer directions to one common squared norm, or nullopt when
// their square-free parts differ.
std::optional<LatticeCode> common_norm_code(const std::string& name, int dim,
                                            std::vector<std::vector<Integer>> directions) {
  if (directions.empty()) return LatticeCode(name, dim, 1, {});
  std::vector<Integer> roots;
  Integer free_part = 0;
  for (const auto& v : directions) {
    Integer n = 0;
    for (const auto& x : v) n += x * x;
    auto split = split_square_factor(n);
    if (free_part == 0) free_part = split.square_free_part;
    if (split.square_free_part != free_part) return std::nullopt;
    roots.push_back(split.square_root_part);
  }
  Integer l = 1;
  for (const auto& a : roots) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_mpz_t());
  for (std::size_t i = 0; i < directions.size(); ++i) {
    Integer factor = l / roots[i];
    for (auto& x : directions[i]) x *= factor;
  }
  Integer g = 0;
  for (const auto& v : directions)
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  std::vector<std::int64_t> coords;
  for (const auto& v : directions)
    for (const auto& x : v) {
      Integer y = x / g;
      if (!y.fits_slong_p()) return std::nullopt;
      coords.push_back(y.get_si());
    }
  try {
    return LatticeCode::from_points(name, dim, std::move(coords));
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

std::string dual_name(const Code& code, int m) {
  return "D_" + std::to_string(m) + "(" + code_name(code) + ")";
}

struct ExactNodes {
  Integer radicand = 1;
  std::vector<Integer> numerators;  // node_i = numerators[i] / denominator * sqrt(radicand)
  Integer denominator = 1;
};

std::optional<ExactNodes> integerize(const std::vector<Surd>& nodes) {
  ExactNodes out;
  for (const auto& s : nodes) {
    if (s.is_zero() || s.is_rational()) continue;
    if (out.radicand != 1 && out.radicand != s.radicand()) return std::nullopt;
    out.radicand = s.radicand();
  }
  // a rational nonzero node cannot share a field with an irrational one here
  for (const auto& s : nodes)
    if (!s.is_zero() && s.is_rational() && out.radicand != 1) return std::nullopt;
  for (const auto& s : nodes)
    mpz_lcm(out.denominator.get_mpz_t(), out.denominator.get_mpz_t(), s.coeff().get_den_mpz_t());
  for (const auto& s : nodes) out.numerators.push_back(Integer(s.coeff() * Rational(out.denominator)));
  return out;
}

DualSet exact_search(const LatticeCode& code, int m, const std::vector<Surd>& node_list, const ExactNodes& en,
                     const DualSearchOptions& options, std::vector<std::size_t> basis) {
  const int dim = code.ambient_dim();
  const std::size_t k = node_list.size();
  RationalMatrix v(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j)
    for (int c = 0; c < dim; ++c) v(j, c) = Rational(static_cast<long>(code.point(basis[j])[c]));
  auto inv = inverse(v);
  if (!inv) throw NumericFailure("selected basis is singular");
  Integer den = 1;
  for (const auto& x : inv->data) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  // columns of the integer matrix A = den * V^{-1}
  std::vector<std::vector<Integer>> cols(dim, std::vector<Integer>(dim));
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) cols[c][r] = Integer((*inv)(r, c) * Rational(den));
  // precomputed column multiples for each node numerator
  std::vector<std::vector<std::vector<Integer>>> steps(dim, std::vector<std::vector<Integer>>(k));
  for (int c = 0; c < dim; ++c)
    for (std::size_t i = 0; i < k; ++i) {
      steps[c][i] = cols[c];
      for (auto& x : steps[c][i]) x *= en.numerators[i];
    }
  const Integer target = (den * en.denominator) * (den * en.denominator);
  const Integer scale = Integer(static_cast<long>(code.norm_sq())) * en.radicand;
  std::set<Integer> allowed;
  for (const auto& n : en.numerators) allowed.insert(n * den);

  const unsigned threads = resolve_threads(options.threads);
  const int depth = prefix_depth(k, dim, threads);
  const std::uint64_t tasks = checked_power(k, depth, ~0ULL);
  std::vector<std::vector<std::vector<Integer>>> found(tasks);

  parallel_chunks(tasks, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    std::vector<std::vector<Integer>> partial(dim + 1, std::vector<Integer>(dim, Integer(0)));
    std::vector<Integer> dot_scratch(code.size());
    for (std::size_t task = begin; task < end; ++task) {
      // decode the prefix digits of this task
      std::uint64_t rest = task;
      for (int level = depth - 1; level >= 0; --level) {
        (void)level;
      }
      std::vector<std::size_t> digits(depth);
      for (int level = depth - 1; level >= 0; --level) {
        digits[level] = rest % k;
        rest /= k;
      }
      for (int level = 0; level < depth; ++level)
        for (int c = 0; c < dim; ++c) partial[level + 1][c] = partial[level][c] + steps[level][digits[level]][c];
      // iterative DFS over the remaining levels
      std::vector<std::size_t> choice(dim, 0);
      int level = depth;
      auto leaf = [&](const std::vector<Integer>& u) {
        Integer norm = 0;
        for (const auto& x : u) norm += x * x;
        if (scale * norm != target) return;
        for (std::size_t p = 0; p < code.size(); ++p) {
          auto pt = code.point(p);
          Integer dot = 0;
          for (int c = 0; c < dim; ++c) dot += u[c] * static_cast<long>(pt[c]);
          if (!allowed.count(dot)) return;
        }
        found[task].push_back(u);
      };
      if (depth == dim) {
        leaf(partial[dim]);
        continue;
      }
      choice[level] = 0;
      while (level >= depth) {
        if (choice[level] == k) {
          --level;
          if (level >= depth) ++choice[level];
          continue;
        }
        for (int c = 0; c < dim; ++c) partial[level + 1][c] = partial[level][c] + steps[level][choice[level]][c];
        if (level + 1 == dim) {
          leaf(partial[dim]);
          ++choice[level];
        } else {
          ++level;
          choice[level] = 0;
        }
      }
    }
  });

  std::vector<std::vector<Integer>> all;
  for (auto& f : found)
    for (auto& u : f) all.push_back(std::move(u));
  std::sort(all.begin(), all.end());
  DualSet out;
  out.exact = true;
  out.systems = checked_power(k, dim, ~0ULL);
  out.basis = std::move(basis);
  auto lattice = common_norm_code(dual_name(code, m), dim, std::move(all));
  if (!lattice) throw NumericFailure("exact dual points do not share a common norm");
  out.points = std::move(*lattice);
  return out;
}

// Index of the node nearest to x (nodes ascending) and its distance.
std::pair<std::size_t, double> nearest_node(const std::vector<double>& nodes, double x) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
  std::size_t best = 0;
  double dist = INFINITY;
  if (it != nodes.end()) {
    best = static_cast<std::size_t>(it - nodes.begin());
    dist = std::abs(*it - x);
  }
  if (it != nodes.begin()) {
    auto prev = static_cast<std::size_t>(it - nodes.begin() - 1);
    if (std::abs(nodes[prev] - x) < dist) {
      best = prev;
      dist = std::abs(nodes[prev] - x);
    }
  }
  return {best, dist};
}

std::optional<std::vector<Integer>> recognise_direction(const std::vector<double>& z) {
  double big = 0;
  for (double x : z) big = std::max(big, std::abs(x));
  if (big == 0) return std::nullopt;
  std::vector<Rational> ratios;
  Integer l = 1;
  for (double x : z) {
    auto q = recognize_rational(x / big, 64, 1e-9);
    if (!q) return std::nullopt;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q->get_den_mpz_t());
    ratios.push_back(*q);
  }
  std::vector<Integer> v;
  for (const auto& q : ratios) v.push_back(Integer(q * Rational(l)));
  return v;
}

DualSet float_search(const FloatCode& fc, const LatticeCode* lattice, int m, std::vector<double> node_values,
                     const DualSearchOptions& options, std::vector<std::size_t> basis) {
  const int dim = fc.ambient_dim();
  const std::size_t k = node_values.size();
  Eigen::MatrixXd v(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int c = 0; c < dim; ++c) v(j, c) = fc.point(basis[j])[c];
  Eigen::MatrixXd inv = v.fullPivLu().inverse();
  std::vector<double> sorted_nodes = node_values;
  std::sort(sorted_nodes.begin(), sorted_nodes.end());
  const PointMatrix pm(fc);
  const double tol = options.residual_tol;

  const unsigned threads = resolve_threads(options.threads);
  const int depth = prefix_depth(k, dim, threads);
  const std::uint64_t tasks = checked_power(k, depth, ~0ULL);
  std::vector<std::vector<std::pair<std::vector<double>, double>>> found(tasks);

  parallel_chunks(tasks, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    std::vector<std::vector<double>> partial(dim + 1, std::vector<double>(dim, 0.0));
    std::vector<double> dots(pm.padded_rows());
    auto leaf = [&](const std::vector<double>& z, std::size_t task) {
      double norm = 0;
      for (double x : z) norm += x * x;
      if (std::abs(norm - 1.0) > 10 * tol) return;
      std::vector<double> unit = z;
      const double s = 1.0 / std::sqrt(norm);
      for (auto& x : unit) x *= s;
      kernels::dot_rows(pm, unit.data(), dots.data());
      double worst = 0;
      for (std::size_t p = 0; p < fc.size(); ++p) {
        worst = std::max(worst, nearest_node(sorted_nodes, dots[p]).second);
        if (worst > tol) return;
      }
      found[task].emplace_back(std::move(unit), worst);
    };
    for (std::size_t task = begin; task < end; ++task) {
      std::uint64_t rest = task;
      std::vector<std::size_t> digits(depth);
      for (int level = depth - 1; level >= 0; --level) {
        digits[level] = rest % k;
        rest /= k;
      }
      for (int level = 0; level < depth; ++level)
        for (int c = 0; c < dim; ++c) partial[level + 1][c] = partial[level][c] + inv(c, level) * node_values[digits[level]];
      if (depth == dim) {
        leaf(partial[dim], task);
        continue;
      }
      std::vector<std::size_t> choice(dim, 0);
      int level = depth;
      while (level >= depth) {
        if (choice[level] == k) {
          --level;
          if (level >= depth) ++choice[level];
          continue;
        }
        for (int c = 0; c < dim; ++c)
          partial[level + 1][c] = partial[level][c] + inv(c, level) * node_values[choice[level]];
        if (level + 1 == dim) {
          leaf(partial[dim], task);
          ++choice[level];
        } else {
          ++level;
          choice[level] = 0;
        }
      }
    }
  });

  std::vector<std::pair<std::vector<double>, double>> all;
  for (auto& f : found)
    for (auto& p : f) all.push_back(std::move(p));
  std::sort(all.begin(), all.end());
  std::vector<std::pair<std::vector<double>, double>> unique;
  for (auto& p : all) {
    bool dup = false;
    for (const auto& q : unique) {
      double diff = 0;
      for (int c = 0; c < dim; ++c) diff = std::max(diff, std::abs(p.first[c] - q.first[c]));
      if (diff <= 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(p));
  }

  DualSet out;
  out.systems = checked_power(k, dim, ~0ULL);
  out.basis = std::move(basis);
  for (const auto& p : unique) out.max_residual = std::max(out.max_residual, p.second);

  if (lattice != nullptr && options.upgrade) {
    std::vector<std::vector<Integer>> dirs;
    bool ok = true;
    for (const auto& p : unique) {
      auto dir = recognise_direction(p.first);
      if (!dir) {
        ok = false;
        break;
      }
      std::vector<std::int64_t> iv;
      for (const auto& x : *dir) iv.push_back(x.get_si());
      // re-verify exactly: every exact dot must be one of the (floating) nodes
      auto sp = spectrum(ExactPoint::from_vector(iv), *lattice);
      if (sp.distinct_count() > static_cast<std::size_t>(m)) {
        ok = false;
        break;
      }
      for (const auto& e : sp.entries)
        if (nearest_node(sorted_nodes, e.value).second > tol) ok = false;
      if (!ok) break;
      dirs.push_back(std::move(*dir));
    }
    if (ok) {
      auto code = common_norm_code(dual_name(*lattice, m), dim, dirs);
      if (code) {
        out.exact = true;
        out.points = std::move(*code);
        return out;
      }
    }
  }
  std::vector<double> coords;
  for (const auto& p : unique) coords.insert(coords.end(), p.first.begin(), p.first.end());
  out.points = FloatCode(fc.name().empty() ? "dual" : "D_" + std::to_string(m) + "(" + fc.name() + ")", dim,
                         std::move(coords), 1e-8);
  return out;
}

}  // namespace

DualSet dual_search(const Code& code, int m, const DualSearchOptions& options) {
  if (m < 1) throw InvalidArgument("dual_search needs m >= 1");
  const int dim = ambient_dim(code);
  if (dim < 2) throw InvalidArgument("dual_search needs a sphere of dimension >= 1");
  const int d = dim - 1;
  const auto* lattice = std::get_if<LatticeCode>(&code);
  const FloatCode fc = to_float(code);

  std::vector<std::size_t> basis = lattice ? independent_points(*lattice) : independent_points(fc);
  if (basis.size() < static_cast<std::size_t>(dim)) {
    if (m != 1)
      throw NotInGeneralPosition("code '" + code_name(code) + "' spans only " + std::to_string(basis.size()) +
                                 " of " + std::to_string(dim) + " dimensions");
    auto one = dual_1stiff(code);
    if (!one.pair)
      throw NotInGeneralPosition("D_1 of '" + code_name(code) + "' is a great sphere of dimension " +
                                 std::to_string(one.basis.size() - 1) + "; use dual_1stiff");
    DualSet out;
    out.points = *one.pair;
    out.exact = one.exact;
    out.complete = true;
    out.nodes_forced = index_set(code, 1).strength >= 1;
    out.node_values = {0.0};
    out.basis = std::move(basis);
    return out;
  }

  // node set
  std::optional<std::vector<Surd>> exact_nodes;
  std::vector<double> float_nodes;
  bool overridden = false;
  if (options.exact_nodes) {
    exact_nodes = *options.exact_nodes;
    for (const auto& s : *exact_nodes) float_nodes.push_back(s.to_double());
    overridden = true;
  } else if (options.float_nodes) {
    float_nodes = *options.float_nodes;
    overridden = true;
  } else {
    const NodeSet& ns = nodes(d, m);
    float_nodes = ns.nodes;
    if (ns.exact) exact_nodes = ns.exact_nodes;
  }
  if (float_nodes.empty()) throw InvalidArgument("empty node set");
  std::sort(float_nodes.begin(), float_nodes.end());
  if (std::adjacent_find(float_nodes.begin(), float_nodes.end()) != float_nodes.end())
    throw InvalidArgument("node set has repeated values");

  const std::uint64_t systems = checked_power(float_nodes.size(), dim, options.enumeration_cap);
  if (systems > options.enumeration_cap)
    throw CapExceeded(std::to_string(float_nodes.size()) + "^" + std::to_string(dim) +
                      " right-hand sides exceed the enumeration cap " + std::to_string(options.enumeration_cap));

  std::optional<ExactNodes> en;
  if (lattice && exact_nodes) en = integerize(*exact_nodes);
  bool use_exact = false;
  switch (options.mode) {
    case SearchMode::Exact:
      if (!lattice) throw InvalidArgument("exact dual search needs an exact (lattice) code");
      if (!en) throw InvalidArgument("exact dual search needs exact nodes sharing one radicand");
      use_exact = true;
      break;
    case SearchMode::Float:
      use_exact = false;
      break;
    case SearchMode::Auto:
      use_exact = lattice != nullptr && en.has_value();
      break;
  }

  DualSet out;
  if (use_exact) {
    std::vector<Surd> sorted = *exact_nodes;
    std::sort(sorted.begin(), sorted.end());
    auto sorted_en = integerize(sorted);
    out = exact_search(*lattice, m, sorted, *sorted_en, options, std::move(basis));
  } else {
    out = float_search(fc, lattice, m, float_nodes, options, std::move(basis));
  }
  out.complete = true;
  out.nodes_overridden = overridden;
  out.node_values = float_nodes;
  const int strength = index_set(code, 2 * m - 1, false, options.threads).strength;
  out.nodes_forced = !overridden && strength >= 2 * m - 1;
  return out;
}

bool is_antipodal(const Code& code, double tol) {
  if (const auto* lc = std::get_if<LatticeCode>(&code)) {
    std::set<std::vector<std::int64_t>> pts;
    for (std::size_t i = 0; i < lc->size(); ++i) {
      auto p = lc->point(i);
      pts.emplace(p.begin(), p.end());
    }
    for (const auto& p : pts) {
      std::vector<std::int64_t> neg(p.size());
      std::transform(p.begin(), p.end(), neg.begin(), [](std::int64_t x) { return -x; });
      if (!pts.count(neg)) return false;
    }
    return true;
  }
  const auto& fc = std::get<FloatCode>(code);
  const int dim = fc.ambient_dim();
  for (std::size_t i = 0; i < fc.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < fc.size() && !found; ++j) {
      double diff = 0;
      for (int c = 0; c < dim; ++c) diff = std::max(diff, std::abs(fc.point(i)[c] + fc.point(j)[c]));
      found = diff <= tol;
    }
    if (!found) return false;
  }
  return true;
}

bool double_dual_inclusion(const Code& code, const Code& dual, int m, double tol) {
  if (code_size(dual) == 0) return false;
  const auto* lc = std::get_if<LatticeCode>(&code);
  const auto* ld = std::get_if<LatticeCode>(&dual);
  for (std::size_t i = 0; i < code_size(code); ++i) {
    std::size_t distinct = 0;
    if (lc && ld) {
      distinct = spectrum(ExactPoint::of(*lc, i), *ld).distinct_count();
    } else {
      FloatCode fc = to_float(code);
      distinct = spectrum(fc.point(i), dual, tol, 1e-6).distinct_count();
    }
    if (distinct > static_cast<std::size_t>(m)) return false;
  }
  return true;
}

OneStiffResult is_1stiff(const Code& code) {
  OneStiffResult r;
  const int dim = ambient_dim(code);
  if (const auto* lc = std::get_if<LatticeCode>(&code)) {
    std::vector<std::int64_t> sum(dim, 0);
    for (std::size_t i = 0; i < lc->size(); ++i)
      for (int c = 0; c < dim; ++c) sum[c] += lc->point(i)[c];
    r.centered = std::all_of(sum.begin(), sum.end(), [](std::int64_t x) { return x == 0; });
    RationalMatrix m(lc->size(), static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < lc->size(); ++i)
      for (int c = 0; c < dim; ++c) m(i, c) = Rational(static_cast<long>(lc->point(i)[c]));
    r.rank = rank(m);
    if (r.rank < static_cast<std::size_t>(dim)) {
      auto null = integer_nullspace(m);
      std::vector<double> w;
      for (const auto& x : null.front()) w.push_back(x.get_d());
      r.witness = std::move(w);
    }
  } else {
    const auto& fc = std::get<FloatCode>(code);
    std::vector<double> sum(dim, 0.0);
    for (std::size_t i = 0; i < fc.size(); ++i)
      for (int c = 0; c < dim; ++c) sum[c] += fc.point(i)[c];
    double norm = 0;
    for (double x : sum) norm += x * x;
    r.centered = std::sqrt(norm) < 1e-12 * std::max<double>(1.0, static_cast<double>(fc.size()));
    r.rank = independent_points(fc).size();
    if (r.rank < static_cast<std::size_t>(dim)) r.witness = orthogonal_complement(fc).front();
  }
  r.one_stiff = r.centered && r.rank <= static_cast<std::size_t>(dim - 1);
  return r;
}

OneStiffDual dual_1stiff(const Code& code) {
  auto check = is_1stiff(code);
  if (!check.one_stiff) throw InvalidArgument("code '" + code_name(code) + "' is not 1-stiff");
  const int dim = ambient_dim(code);
  OneStiffDual out;
  if (const auto* lc = std::get_if<LatticeCode>(&code)) {
    RationalMatrix m(lc->size(), static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < lc->size(); ++i)
      for (int c = 0; c < dim; ++c) m(i, c) = Rational(static_cast<long>(lc->point(i)[c]));
    auto null = integer_nullspace(m);
    out.exact = true;
    for (const auto& v : null) {
      std::vector<double> b;
      for (const auto& x : v) b.push_back(x.get_d());
      out.basis.push_back(std::move(b));
    }
    if (null.size() == 1) {
      std::vector<std::int64_t> coords;
      for (const auto& x : null[0]) coords.push_back(x.get_si());
      for (const auto& x : null[0]) coords.push_back(-x.get_si());
      out.pair = Code(LatticeCode::from_points("D_1(" + lc->name() + ")", dim, std::move(coords)));
    }
  } else {
    const auto& fc = std::get<FloatCode>(code);
    out.basis = orthogonal_complement(fc);
    if (out.basis.size() == 1) {
      std::vector<double> coords = out.basis[0];
      for (double x : out.basis[0]) coords.push_back(-x);
      out.pair = Code(FloatCode("D_1(" + fc.name() + ")", dim, std::move(coords), 1e-9));
    }
  }
  return out;
}

StiffnessCertificate certify_stiff(const Code& code, int m, const DualSearchOptions& options) {
  StiffnessCertificate cert;
  cert.code_name = code_name(code);
  cert.m = m;
  const int dim = ambient_dim(code);
  const int d = dim - 1;
  cert.design_strength = index_set(code, 2 * m, false, options.threads).strength;
  cert.dual = dual_search(code, m, options);
  const std::size_t n_dual = cert.dual.size();
  cert.stiff = cert.design_strength >= 2 * m - 1 && n_dual > 0;

  const auto& node_values = cert.dual.node_values;
  const std::size_t k = node_values.size();
  const auto* lc = std::get_if<LatticeCode>(&code);
  const auto* ld = std::get_if<LatticeCode>(&cert.dual.points);
  const FloatCode fdual = to_float(cert.dual.points);
  for (std::size_t p = 0; p < n_dual; ++p) {
    std::vector<std::int64_t> row(k, 0);
    SpectrumReport sp = (lc && ld) ? spectrum(ExactPoint::of(*ld, p), *lc)
                                   : spectrum(fdual.point(p), code, 1e-9, 1e-6);
    for (const auto& e : sp.entries) {
      auto [idx, dist] = nearest_node(node_values, e.value);
      if (dist > 1e-8) {
        cert.frequencies_match = false;
        continue;
      }
      row[idx] += e.multiplicity;
    }
    cert.frequency_table.push_back(std::move(row));
  }
  if (!cert.dual.nodes_overridden && cert.dual.node_values.size() == static_cast<std::size_t>(m)) {
    const NodeSet& ns = nodes(d, m);
    const double n_code = static_cast<double>(code_size(code));
    cert.expected_exact = ns.weights_exact;
    for (std::size_t j = 0; j < k; ++j) cert.expected_frequencies.push_back(ns.weights[j] * n_code);
    for (const auto& row : cert.frequency_table)
      for (std::size_t j = 0; j < k; ++j) {
        bool ok = ns.weights_exact
                      ? Rational(row[j]) == ns.exact_weights[j] * Rational(static_cast<long>(code_size(code)))
                      : std::abs(static_cast<double>(row[j]) - cert.expected_frequencies[j]) < 1e-6;
        if (!ok) cert.frequencies_match = false;
      }
  }
  if (n_dual > 0) {
    cert.antipodal_dual = is_antipodal(cert.dual.points);
    cert.double_dual_inclusion = double_dual_inclusion(code, cert.dual.points, m);
    auto one = is_1stiff(cert.dual.points);
    cert.dual_general_position = one.rank == static_cast<std::size_t>(dim);
    cert.dual_1stiff = one.one_stiff;
  }
  const std::uint64_t bound = checked_power(static_cast<std::uint64_t>(m), dim, ~0ULL);
  cert.cardinality_ok = n_dual <= bound;
  return cert;
}

SharpnessReport classify_sharp(const LatticeCode& code, int threads) {
  SharpnessReport r;
  auto ms = dot_multiset(code, threads);
  for (const auto& [dot, count] : ms) {
    if (dot == code.norm_sq()) continue;
    r.inner_dots.push_back(to_string(make_rational(Integer(static_cast<long>(dot)),
                                                   Integer(static_cast<long>(code.norm_sq())))));
  }
  r.inner_dot_count = r.inner_dots.size();
  const int mp = static_cast<int>(r.inner_dot_count);
  r.strength = index_set(code, std::max(2 * mp, 1), false, threads).strength;
  r.sharp = mp >= 1 && r.strength >= 2 * mp - 1;
  r.strongly_sharp = r.sharp && r.strength >= 2 * mp;
  return r;
}

namespace {

double scan_objective(const FloatCode& code, int m, double theta) {
  std::vector<double> dots(code.size());
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::size_t i = 0; i < code.size(); ++i) dots[i] = c * code.point(i)[0] + s * code.point(i)[1];
  std::sort(dots.begin(), dots.end());
  return detail::cluster_sorted(dots, m);
}

}  // namespace

std::vector<std::vector<double>> circle_dual_scan(const FloatCode& code, int m, long resolution, double tol) {
  if (code.ambient_dim() != 2) throw InvalidArgument("circle_dual_scan needs a code on S^1");
  if (resolution < 8) throw InvalidArgument("resolution too small");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(resolution);
  std::vector<double> values(static_cast<std::size_t>(resolution));
  for (long i = 0; i < resolution; ++i) values[i] = scan_objective(code, m, step * static_cast<double>(i));
  std::vector<std::vector<double>> out;
  // a local minimum of the grid residual brackets each candidate direction
  const double coarse = static_cast<double>(code.size()) * step * step * 4.0;
  for (long i = 0; i < resolution; ++i) {
    double here = values[i];
    double left = values[(i + resolution - 1) % resolution];
    double right = values[(i + 1) % resolution];
    if (!(here <= left && here < right) || here > coarse) continue;
    // refine: with the grouping of the dots fixed, the best direction is the
    // smallest eigenvector of the within-group scatter
    double theta = step * static_cast<double>(i);
    for (int it = 0; it < 50; ++it) {
      const double c = std::cos(theta), s = std::sin(theta);
      std::vector<std::pair<double, std::size_t>> order;
      for (std::size_t p = 0; p < code.size(); ++p)
        order.emplace_back(c * code.point(p)[0] + s * code.point(p)[1], p);
      std::sort(order.begin(), order.end());
      std::vector<double> sorted;
      for (const auto& o : order) sorted.push_back(o.first);
      std::vector<int> label;
      detail::cluster_sorted(sorted, m, &label);
      std::vector<Eigen::Vector2d> mean(m, Eigen::Vector2d::Zero());
      std::vector<double> cnt(m, 0);
      for (std::size_t p = 0; p < order.size(); ++p) {
        mean[label[p]] += Eigen::Vector2d(code.point(order[p].second)[0], code.point(order[p].second)[1]);
        cnt[label[p]] += 1;
      }
      for (int g = 0; g < m; ++g)
        if (cnt[g] > 0) mean[g] /= cnt[g];
      Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
      for (std::size_t p = 0; p < order.size(); ++p) {
        const Eigen::Vector2d dv =
            Eigen::Vector2d(code.point(order[p].second)[0], code.point(order[p].second)[1]) - mean[label[p]];
        scatter += dv * dv.transpose();
      }
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(scatter);
      Eigen::Vector2d z = eig.eigenvectors().col(0);
      if (z[0] * c + z[1] * s < 0) z = -z;
      const double next = std::atan2(z[1], z[0]);
      double moved = std::abs(std::remainder(next - theta, 2.0 * std::numbers::pi));
      theta = next;
      if (moved < 1e-16) break;
    }
    std::vector<double> z{std::cos(theta), std::sin(theta)};
    auto sp = spectrum(z, Code(code), tol, 1e-9);
    if (sp.distinct_count() > static_cast<std::size_t>(m)) continue;
    bool dup = false;
    for (const auto& q : out) dup = dup || (std::abs(q[0] - z[0]) < 1e-7 && std::abs(q[1] - z[1]) < 1e-7);
    if (!dup) out.push_back(std::move(z));
  }
  return out;
}

}  // namespace stiffkit
