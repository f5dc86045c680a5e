#pragma once

// Spherical-design verification: pair sums, index sets, dot-product spectra,
// the cube-subset 3-design criterion and potential constancy.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "stiffkit/codes.hpp"
#include "stiffkit/gegenbauer.hpp"

namespace stiffkit {

/// Multiset of integer dot products v_i . v_j over all ordered pairs
/// (including i == j), as value -> count.
using DotMultiset = std::map<std::int64_t, std::int64_t>;

DotMultiset dot_multiset(const LatticeCode& code, int threads = 0);

/// Exact sum of P_n^{(d)}(x_i . x_j) over all ordered pairs, d = ambient_dim - 1.
Rational pair_sum(const LatticeCode& code, int n, int threads = 0);
/// Floating pair sum (any code).
double pair_sum_float(const FloatCode& code, int n);

struct DesignReport {
  std::string code_name;
  int checked_up_to = 0;
  std::set<int> index_set;
  int strength = 0;
  bool exact = true;
  /// Pair sums per n, rendered ("p/q" when exact, decimal otherwise).
  std::map<int, std::string> pair_sums;
};

/// Index set {n <= n_max : pair sum vanishes}. Exact for lattice codes;
/// float codes use |sum| <= N^2 * 1e-10. `force_float` evaluates a lattice
/// code in floating point.
DesignReport index_set(const Code& code, int n_max, bool force_float = false, int threads = 0);

/// Largest n with {1..n} contained in the index set.
int strength_of(const std::set<int>& index_set);

struct SpectrumEntry {
  std::optional<Surd> exact;  // present when the report is exact
  double value = 0;
  std::int64_t multiplicity = 0;
};

struct SpectrumReport {
  std::vector<double> probe;
  bool exact = false;
  std::vector<SpectrumEntry> entries;  // strictly increasing values
  std::size_t distinct_count() const { return entries.size(); }
  std::size_t total() const;
};

/// Exact spectrum of an exact probe against a lattice code.
SpectrumReport spectrum(const ExactPoint& probe, const LatticeCode& code);
/// Floating spectrum: dots are merged when consecutive values differ by at
/// most `merge_tol`. The probe must have unit norm within `norm_tol`.
SpectrumReport spectrum(std::span<const double> probe, const Code& code, double merge_tol = 1e-9,
                        double norm_tol = 1e-9);

struct HalfCountResult {
  bool is_3design = false;
  /// First index set (1-based coordinates, size 1..3) whose even/odd split is unequal.
  std::optional<std::vector<int>> violation;
};

/// Half-count criterion for subsets of {+-1}^d: N even and, for every index
/// set I with |I| <= 3, as many points have an even number of negative
/// coordinates in I as an odd number. Throws InvalidArgument if the code is
/// not a cube subset (coordinates +-1, d >= 3).
HalfCountResult halfcount_3design(const LatticeCode& code);

/// Maximum over `trials` random unit y of |sum_i q(y . x_i) - a0(q) N|.
double constancy_check(const Code& code, const Polynomial& q, int trials, std::uint64_t seed);

}  // namespace stiffkit
