#pragma once

// Data-parallel inner loops over point sets, with a scalar reference
// implementation and an AVX2 variant chosen once at runtime.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace stiffkit {

class FloatCode;

/// Column-major (structure-of-arrays) copy of a point set: column k holds
/// coordinate k of every point, padded to a multiple of 4 rows with zeros.
class PointMatrix {
 public:
  PointMatrix() = default;
  PointMatrix(std::size_t rows, int dim);
  explicit PointMatrix(const FloatCode& code);
  /// Row-major input of rows*dim values.
  static PointMatrix from_rows(std::span<const double> row_major, int dim);

  std::size_t rows() const { return rows_; }
  std::size_t padded_rows() const { return stride_; }
  int dim() const { return dim_; }
  const double* column(int k) const { return data_.data() + static_cast<std::size_t>(k) * stride_; }
  double* column(int k) { return data_.data() + static_cast<std::size_t>(k) * stride_; }
  double at(std::size_t row, int k) const { return column(k)[row]; }

 private:
  std::size_t rows_ = 0;
  std::size_t stride_ = 0;
  int dim_ = 0;
  std::vector<double> data_;
};

namespace kernels {

/// out[i] = <row i, probe>. `out` has at least padded_rows() entries.
using DotRowsFn = void (*)(const PointMatrix&, const double* probe, double* out);
/// out[k] = sum_i w[i] * row_i[k]. `w` has at least padded_rows() entries (padding ignored).
using WeightedSumFn = void (*)(const PointMatrix&, const double* w, double* out);
/// out[a*dim+b] = sum_i w[i] * row_i[a] * row_i[b] (full symmetric matrix).
using WeightedGramFn = void (*)(const PointMatrix&, const double* w, double* out);

struct Table {
  std::string_view name;
  DotRowsFn dot_rows;
  WeightedSumFn weighted_sum;
  WeightedGramFn weighted_gram;
};

const Table& scalar_table();
/// nullptr when the binary or the CPU lacks AVX2+FMA.
const Table* avx2_table();
/// The table in use: AVX2 when available unless STIFFKIT_FORCE_SCALAR is set.
const Table& active();

inline void dot_rows(const PointMatrix& m, const double* probe, double* out) {
  active().dot_rows(m, probe, out);
}
inline void weighted_sum(const PointMatrix& m, const double* w, double* out) {
  active().weighted_sum(m, w, out);
}
inline void weighted_gram(const PointMatrix& m, const double* w, double* out) {
  active().weighted_gram(m, w, out);
}

}  // namespace kernels
}  // namespace stiffkit
