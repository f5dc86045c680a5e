#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "stiffkit/codes.hpp"
#include "stiffkit/kernels.hpp"
#include "stiffkit/random.hpp"

using namespace stiffkit;

namespace {

struct Case {
  std::vector<double> rows;
  int dim;
};

// Row counts straddle the padding to exercise the tail handling.
std::vector<Case> cases() {
  std::vector<Case> out;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int dim : {1, 2, 3, 5, 8}) {
    for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 64u, 250u}) {
      Case c{std::vector<double>(n * dim), dim};
      for (auto& x : c.rows) x = u(rng);
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<double> weights(std::size_t n, std::size_t padded, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> w(padded, 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i] = u(rng);
  for (std::size_t i = n; i < padded; ++i) w[i] = 1e300;  // padding must not leak
  return w;
}

}  // namespace

TEST_CASE("PointMatrix layout") {
  const std::vector<double> rows{1, 2, 3, 4, 5, 6};
  const PointMatrix m = PointMatrix::from_rows(rows, 2);
  CHECK(m.rows() == 3);
  CHECK(m.padded_rows() % 4 == 0);
  CHECK(m.at(0, 1) == 2);
  CHECK(m.at(2, 0) == 5);
  CHECK(m.column(1)[1] == 4);
  CHECK(m.column(0)[3] == 0);
  const PointMatrix c(to_float(cube(3)));
  CHECK(c.rows() == 8);
  CHECK(c.at(0, 0) == doctest::Approx(1 / std::sqrt(3.0)));
}

TEST_CASE("scalar kernels against direct loops") {
  const auto& t = kernels::scalar_table();
  for (const auto& c : cases()) {
    const PointMatrix m = PointMatrix::from_rows(c.rows, c.dim);
    const std::size_t n = m.rows();
    std::vector<double> probe(c.dim);
    for (int k = 0; k < c.dim; ++k) probe[k] = 0.5 - 0.1 * k;
    std::vector<double> out(m.padded_rows());
    t.dot_rows(m, probe.data(), out.data());
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (int k = 0; k < c.dim; ++k) s += c.rows[i * c.dim + k] * probe[k];
      CHECK(out[i] == doctest::Approx(s).epsilon(1e-14));
    }
    const auto w = weights(n, m.padded_rows(), n);
    std::vector<double> sum(c.dim), gram(c.dim * c.dim);
    t.weighted_sum(m, w.data(), sum.data());
    t.weighted_gram(m, w.data(), gram.data());
    for (int a = 0; a < c.dim; ++a) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += w[i] * c.rows[i * c.dim + a];
      CHECK(sum[a] == doctest::Approx(s).epsilon(1e-12));
      for (int b = 0; b < c.dim; ++b) {
        double g = 0;
        for (std::size_t i = 0; i < n; ++i) g += w[i] * c.rows[i * c.dim + a] * c.rows[i * c.dim + b];
        CHECK(gram[a * c.dim + b] == doctest::Approx(g).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const auto* fast = kernels::avx2_table();
  if (!fast) {
    MESSAGE("AVX2 not available; equivalence not exercised");
    return;
  }
  const auto& ref = kernels::scalar_table();
  for (const auto& c : cases()) {
    const PointMatrix m = PointMatrix::from_rows(c.rows, c.dim);
    std::mt19937_64 rng(c.rows.size());
    const auto probe = random_unit(c.dim, rng);
    std::vector<double> a(m.padded_rows()), b(m.padded_rows());
    ref.dot_rows(m, probe.data(), a.data());
    fast->dot_rows(m, probe.data(), b.data());
    for (std::size_t i = 0; i < m.rows(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14);
    const auto w = weights(m.rows(), m.padded_rows(), 11);
    std::vector<double> sa(c.dim), sb(c.dim), ga(c.dim * c.dim), gb(c.dim * c.dim);
    ref.weighted_sum(m, w.data(), sa.data());
    fast->weighted_sum(m, w.data(), sb.data());
    ref.weighted_gram(m, w.data(), ga.data());
    fast->weighted_gram(m, w.data(), gb.data());
    for (int k = 0; k < c.dim; ++k) CHECK(sb[k] == doctest::Approx(sa[k]).epsilon(1e-12));
    for (int k = 0; k < c.dim * c.dim; ++k) CHECK(gb[k] == doctest::Approx(ga[k]).epsilon(1e-12));
  }
}

TEST_CASE("active table honours STIFFKIT_FORCE_SCALAR") {
  const char* forced = std::getenv("STIFFKIT_FORCE_SCALAR");
  if ((forced && *forced && std::string(forced) != "0") || !kernels::avx2_table())
    CHECK(&kernels::active() == &kernels::scalar_table());
  else
    CHECK(&kernels::active() == kernels::avx2_table());
}
