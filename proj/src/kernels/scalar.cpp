#include "stiffkit/codes.hpp"
#include "stiffkit/kernels.hpp"

namespace stiffkit {

PointMatrix::PointMatrix(std::size_t rows, int dim)
    : rows_(rows), stride_((rows + 3) / 4 * 4), dim_(dim), data_(stride_ * static_cast<std::size_t>(dim), 0.0) {}

PointMatrix::PointMatrix(const FloatCode& code) : PointMatrix(code.size(), code.ambient_dim()) {
  for (std::size_t i = 0; i < rows_; ++i) {
    auto p = code.point(i);
    for (int k = 0; k < dim_; ++k) column(k)[i] = p[k];
  }
}

PointMatrix PointMatrix::from_rows(std::span<const double> row_major, int dim) {
  PointMatrix m(row_major.size() / static_cast<std::size_t>(dim), dim);
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (int k = 0; k < dim; ++k) m.column(k)[i] = row_major[i * dim + k];
  return m;
}

namespace kernels {
namespace {

void dot_rows_scalar(const PointMatrix& m, const double* probe, double* out) {
  const std::size_t n = m.padded_rows();
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (int k = 0; k < m.dim(); ++k) {
    const double* col = m.column(k);
    const double p = probe[k];
    for (std::size_t i = 0; i < n; ++i) out[i] += col[i] * p;
  }
}

void weighted_sum_scalar(const PointMatrix& m, const double* w, double* out) {
  const std::size_t n = m.rows();
  for (int k = 0; k < m.dim(); ++k) {
    const double* col = m.column(k);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * col[i];
    out[k] = s;
  }
}

void weighted_gram_scalar(const PointMatrix& m, const double* w, double* out) {
  const std::size_t n = m.rows();
  const int dim = m.dim();
  for (int a = 0; a < dim; ++a) {
    const double* ca = m.column(a);
    for (int b = a; b < dim; ++b) {
      const double* cb = m.column(b);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += w[i] * ca[i] * cb[i];
      out[a * dim + b] = s;
      out[b * dim + a] = s;
    }
  }
}

}  // namespace

const Table& scalar_table() {
  static const Table table{"scalar", dot_rows_scalar, weighted_sum_scalar, weighted_gram_scalar};
  return table;
}

}  // namespace kernels
}  // namespace stiffkit
