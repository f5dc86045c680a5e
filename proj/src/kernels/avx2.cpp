// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "stiffkit/kernels.hpp"

namespace stiffkit::kernels {
namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

void dot_rows_avx2(const PointMatrix& m, const double* probe, double* out) {
  const std::size_t n = m.padded_rows();
  const int dim = m.dim();
  for (std::size_t i = 0; i < n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int k = 0; k < dim; ++k)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(m.column(k) + i), _mm256_set1_pd(probe[k]), acc);
    _mm256_storeu_pd(out + i, acc);
  }
}

// Padding rows hold zero coordinates, so whatever sits in w there is harmless.
void weighted_sum_avx2(const PointMatrix& m, const double* w, double* out) {
  const std::size_t n = m.padded_rows();
  for (int k = 0; k < m.dim(); ++k) {
    const double* col = m.column(k);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; i += 4)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(col + i), acc);
    out[k] = hsum(acc);
  }
}

void weighted_gram_avx2(const PointMatrix& m, const double* w, double* out) {
  const std::size_t n = m.padded_rows();
  const int dim = m.dim();
  for (int a = 0; a < dim; ++a) {
    const double* ca = m.column(a);
    for (int b = a; b < dim; ++b) {
      const double* cb = m.column(b);
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t i = 0; i < n; i += 4) {
        __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(ca + i));
        acc = _mm256_fmadd_pd(wa, _mm256_loadu_pd(cb + i), acc);
      }
      double s = hsum(acc);
      out[a * dim + b] = s;
      out[b * dim + a] = s;
    }
  }
}

}  // namespace

const Table& avx2_kernels() {
  static const Table table{"avx2", dot_rows_avx2, weighted_sum_avx2, weighted_gram_avx2};
  return table;
}

}  // namespace stiffkit::kernels
