#include "stiffkit/design.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "stiffkit/kernels.hpp"
#include "stiffkit/parallel.hpp"
#include "stiffkit/random.hpp"

namespace stiffkit {

namespace {

// Integer dots are exact in double when every partial sum stays below 2^53.
bool double_exact(const LatticeCode& code) {
  const double bound = static_cast<double>(code.max_abs_coord()) * static_cast<double>(code.max_abs_coord()) *
                       static_cast<double>(code.ambient_dim());
  return bound < 4.0e15;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

DotMultiset dot_multiset(const LatticeCode& code, int threads) {
  const std::size_t n = code.size();
  const std::int64_t s = code.norm_sq();
  const std::size_t span = static_cast<std::size_t>(2 * s + 1);
  const unsigned workers = resolve_threads(threads);
  std::vector<std::vector<std::int64_t>> counts(workers, std::vector<std::int64_t>(span, 0));
  if (double_exact(code)) {
    std::vector<double> rows(code.coords().begin(), code.coords().end());
    PointMatrix pm = PointMatrix::from_rows(rows, code.ambient_dim());
    parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
      std::vector<double> out(pm.padded_rows());
      auto& local = counts[w];
      for (std::size_t i = begin; i < end; ++i) {
        kernels::dot_rows(pm, rows.data() + i * static_cast<std::size_t>(code.ambient_dim()), out.data());
        for (std::size_t j = 0; j < n; ++j) ++local[static_cast<std::size_t>(std::llround(out[j]) + s)];
      }
    });
  } else {
    parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
      auto& local = counts[w];
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = 0; j < n; ++j) ++local[static_cast<std::size_t>(code.int_dot(i, j) + s)];
    });
  }
  DotMultiset out;
  for (std::size_t v = 0; v < span; ++v) {
    std::int64_t total = 0;
    for (const auto& c : counts) total += c[v];
    if (total != 0) out[static_cast<std::int64_t>(v) - s] = total;
  }
  return out;
}

namespace {

Rational pair_sum_from_multiset(const DotMultiset& ms, std::int64_t norm_sq, int d, int n) {
  const Polynomial& p = gegenbauer_poly(d, n);
  Rational total = 0;
  for (const auto& [dot, count] : ms)
    total += Rational(Integer(static_cast<long>(count))) *
             p(make_rational(Integer(static_cast<long>(dot)), Integer(static_cast<long>(norm_sq))));
  return total;
}

}  // namespace

Rational pair_sum(const LatticeCode& code, int n, int threads) {
  if (code.ambient_dim() < 2) throw InvalidArgument("pair_sum needs a sphere of dimension >= 1");
  return pair_sum_from_multiset(dot_multiset(code, threads), code.norm_sq(), code.sphere_dim(), n);
}

double pair_sum_float(const FloatCode& code, int n) {
  if (code.ambient_dim() < 2) throw InvalidArgument("pair_sum needs a sphere of dimension >= 1");
  const auto coeffs = gegenbauer_poly(code.sphere_dim(), n).to_double();
  PointMatrix pm(code);
  std::vector<double> out(pm.padded_rows());
  double total = 0;
  for (std::size_t i = 0; i < code.size(); ++i) {
    kernels::dot_rows(pm, code.point(i).data(), out.data());
    for (std::size_t j = 0; j < code.size(); ++j) {
      double acc = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * out[j] + *it;
      total += acc;
    }
  }
  return total;
}

int strength_of(const std::set<int>& index_set) {
  int n = 0;
  while (index_set.count(n + 1)) ++n;
  return n;
}

DesignReport index_set(const Code& code, int n_max, bool force_float, int threads) {
  if (n_max < 1) throw InvalidArgument("index_set needs n_max >= 1");
  DesignReport report;
  report.code_name = code_name(code);
  report.checked_up_to = n_max;
  const auto* lattice = std::get_if<LatticeCode>(&code);
  if (lattice != nullptr && !force_float) {
    report.exact = true;
    auto ms = dot_multiset(*lattice, threads);
    for (int n = 1; n <= n_max; ++n) {
      Rational s = pair_sum_from_multiset(ms, lattice->norm_sq(), lattice->sphere_dim(), n);
      report.pair_sums[n] = to_string(s);
      if (sgn(s) == 0) report.index_set.insert(n);
    }
  } else {
    report.exact = false;
    FloatCode fc = to_float(code);
    const double n_pts = static_cast<double>(fc.size());
    const double tol = n_pts * n_pts * 1e-10;
    for (int n = 1; n <= n_max; ++n) {
      double s = pair_sum_float(fc, n);
      report.pair_sums[n] = format_double(s);
      if (std::abs(s) <= tol) report.index_set.insert(n);
    }
  }
  report.strength = strength_of(report.index_set);
  return report;
}

std::size_t SpectrumReport::total() const {
  std::size_t t = 0;
  for (const auto& e : entries) t += static_cast<std::size_t>(e.multiplicity);
  return t;
}

SpectrumReport spectrum(const ExactPoint& probe, const LatticeCode& code) {
  if (probe.v.size() != static_cast<std::size_t>(code.ambient_dim()))
    throw InvalidArgument("probe dimension does not match the code");
  std::int64_t s = 0;
  for (auto x : probe.v) s += x * x;
  if (s != probe.norm_sq) throw InvalidArgument("probe is not on the sphere");
  // group integer dots first, then convert each distinct value once
  std::map<std::int64_t, std::int64_t> counts;
  for (std::size_t i = 0; i < code.size(); ++i) {
    auto x = code.point(i);
    std::int64_t dot = 0;
    for (std::size_t k = 0; k < probe.v.size(); ++k) dot += probe.v[k] * x[k];
    ++counts[dot];
  }
  SpectrumReport report;
  report.exact = true;
  report.probe = probe.to_unit();
  const Integer scale = Integer(static_cast<long>(probe.norm_sq)) * static_cast<long>(code.norm_sq());
  for (const auto& [dot, count] : counts) {
    SpectrumEntry e;
    e.exact = Surd::normalized(make_rational(Integer(static_cast<long>(dot)), scale), scale);
    e.value = e.exact->to_double();
    e.multiplicity = count;
    report.entries.push_back(std::move(e));
  }
  return report;
}

SpectrumReport spectrum(std::span<const double> probe, const Code& code, double merge_tol, double norm_tol) {
  FloatCode fc = to_float(code);
  if (probe.size() != static_cast<std::size_t>(fc.ambient_dim()))
    throw InvalidArgument("probe dimension does not match the code");
  double s = 0;
  for (double x : probe) s += x * x;
  if (!(std::abs(s - 1.0) <= norm_tol)) throw InvalidArgument("probe is not on the unit sphere");
  PointMatrix pm(fc);
  std::vector<double> dots(pm.padded_rows());
  kernels::dot_rows(pm, probe.data(), dots.data());
  dots.resize(fc.size());
  std::sort(dots.begin(), dots.end());
  SpectrumReport report;
  report.exact = false;
  report.probe.assign(probe.begin(), probe.end());
  for (std::size_t i = 0; i < dots.size();) {
    std::size_t j = i + 1;
    double sum = dots[i];
    while (j < dots.size() && dots[j] - dots[j - 1] <= merge_tol) sum += dots[j++];
    SpectrumEntry e;
    e.value = sum / static_cast<double>(j - i);
    e.multiplicity = static_cast<std::int64_t>(j - i);
    report.entries.push_back(e);
    i = j;
  }
  return report;
}

HalfCountResult halfcount_3design(const LatticeCode& code) {
  const int d = code.ambient_dim();
  if (d < 3) throw InvalidArgument("halfcount_3design needs d >= 3");
  if (code.norm_sq() != d || code.max_abs_coord() != 1)
    throw InvalidArgument("code is not a subset of the cube vertices");
  const std::size_t n = code.size();
  // sign bit mask per point
  std::vector<std::uint64_t> masks(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = code.point(i);
    for (int k = 0; k < d; ++k)
      if (p[k] < 0) masks[i] |= std::uint64_t{1} << k;
  }
  auto balanced = [&](std::uint64_t subset) {
    std::size_t even = 0;
    for (auto m : masks)
      if (std::popcount(m & subset) % 2 == 0) ++even;
    return 2 * even == n;
  };
  HalfCountResult result;
  if (d > 64) throw InvalidArgument("halfcount_3design supports d <= 64");
  for (int size = 1; size <= 3; ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int a = 0; a < d; ++a) {
      if (size == 1) {
        if (!balanced(std::uint64_t{1} << a)) {
          result.violation = std::vector<int>{a + 1};
          return result;
        }
        continue;
      }
      for (int b = a + 1; b < d; ++b) {
        if (size == 2) {
          if (!balanced((std::uint64_t{1} << a) | (std::uint64_t{1} << b))) {
            result.violation = std::vector<int>{a + 1, b + 1};
            return result;
          }
          continue;
        }
        for (int c = b + 1; c < d; ++c)
          if (!balanced((std::uint64_t{1} << a) | (std::uint64_t{1} << b) | (std::uint64_t{1} << c))) {
            result.violation = std::vector<int>{a + 1, b + 1, c + 1};
            return result;
          }
      }
    }
  }
  result.is_3design = n % 2 == 0;
  return result;
}

double constancy_check(const Code& code, const Polynomial& q, int trials, std::uint64_t seed) {
  FloatCode fc = to_float(code);
  const int d = fc.sphere_dim();
  const double target = Rational(a0(q, d) * Rational(static_cast<long>(fc.size()))).get_d();
  const auto coeffs = q.to_double();
  PointMatrix pm(fc);
  std::vector<double> dots(pm.padded_rows());
  auto rng = rng_stream(seed, 0);
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    auto y = random_unit(fc.ambient_dim(), rng);
    kernels::dot_rows(pm, y.data(), dots.data());
    double total = 0;
    for (std::size_t i = 0; i < fc.size(); ++i) {
      double acc = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * dots[i] + *it;
      total += acc;
    }
    worst = std::max(worst, std::abs(total - target));
  }
  return worst;
}

}  // namespace stiffkit
