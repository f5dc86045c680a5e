#pragma once

// m-stiffness: dual configurations D_m, certificates and structural checks.

#include <cstdint>
#include <optional>
#include <vector>

#include "stiffkit/codes.hpp"
#include "stiffkit/design.hpp"

namespace stiffkit {

enum class SearchMode { Auto, Exact, Float };

struct DualSearchOptions {
  SearchMode mode = SearchMode::Auto;
  /// Replaces the zeros of P_m^{(d)} as the admissible dot values (exact).
  std::optional<std::vector<Surd>> exact_nodes;
  /// Same, floating; ignored when exact_nodes is set.
  std::optional<std::vector<double>> float_nodes;
  int threads = 0;
  std::uint64_t enumeration_cap = default_limits().enumeration_cap;
  /// Float mode: tolerance on |z|^2 - 1 and on each dot's distance to a node.
  double residual_tol = 1e-9;
  /// Float mode on lattice codes: try to recognise the points exactly.
  bool upgrade = true;
};

struct DualSet {
  /// LatticeCode when every point is known exactly, FloatCode otherwise.
  Code points;
  bool exact = false;
  /// Every right-hand side over the node set was enumerated.
  bool complete = false;
  /// The code is a (2m-1)-design, so every point of D_m uses only the nodes
  /// and the enumeration covers all of D_m.
  bool nodes_forced = false;
  bool nodes_overridden = false;
  std::vector<double> node_values;
  std::vector<std::size_t> basis;  // indices of the code points used as equations
  std::uint64_t systems = 0;
  double max_residual = 0;  // float mode

  std::size_t size() const { return code_size(points); }
};

/// All unit z with z . y_j in the node set for a greedily chosen basis
/// y_1..y_{d+1} of code points, kept when every dot against the whole code
/// is a node. Non-spanning codes: m == 1 returns L^perp when it is a pair
/// {a, -a}; otherwise NotInGeneralPosition.
DualSet dual_search(const Code& code, int m, const DualSearchOptions& options = {});

struct StiffnessCertificate {
  std::string code_name;
  int m = 0;
  int design_strength = 0;
  DualSet dual;
  bool stiff = false;
  /// frequency_table[p][j]: how many code points form node j with dual point p.
  std::vector<std::vector<std::int64_t>> frequency_table;
  /// a0(phi_j) * N; empty when the node set was overridden.
  std::vector<double> expected_frequencies;
  /// Expected frequencies are exact rationals (compared exactly).
  bool expected_exact = false;
  bool frequencies_match = true;
  bool antipodal_dual = false;
  bool cardinality_ok = false;  // |D_m| <= m^{d+1}
  bool double_dual_inclusion = false;
  bool dual_general_position = false;
  bool dual_1stiff = false;
};

StiffnessCertificate certify_stiff(const Code& code, int m, const DualSearchOptions& options = {});

struct OneStiffResult {
  bool one_stiff = false;
  bool centered = false;
  std::size_t rank = 0;
  /// Normal of a hyperplane containing the code (integer for lattice codes).
  std::optional<std::vector<double>> witness;
};

OneStiffResult is_1stiff(const Code& code);

struct OneStiffDual {
  /// Basis of L^perp: primitive integer vectors (exact codes) or orthonormal floats.
  std::vector<std::vector<double>> basis;
  bool exact = false;
  /// When dim L^perp == 1: the dual {a, -a}.
  std::optional<Code> pair;
};

/// D_1 = L^perp on the sphere. Throws InvalidArgument unless is_1stiff.
OneStiffDual dual_1stiff(const Code& code);

struct SharpnessReport {
  std::size_t inner_dot_count = 0;
  std::vector<std::string> inner_dots;
  int strength = 0;
  bool sharp = false;
  bool strongly_sharp = false;
};

/// Distinct dots between distinct points (m') against design strength.
SharpnessReport classify_sharp(const LatticeCode& code, int threads = 0);

/// True when the point set is closed under negation.
bool is_antipodal(const Code& code, double tol = 1e-9);

/// Each code point forms at most m distinct dots with the dual points.
bool double_dual_inclusion(const Code& code, const Code& dual, int m, double tol = 1e-9);

/// Directions on S^1 with at most m distinct dots against the code:
/// residual scan over `resolution` equally spaced angles, refined by
/// golden-section search; kept when the spread is within `tol`.
std::vector<std::vector<double>> circle_dual_scan(const FloatCode& code, int m, long resolution = 1000000,
                                                  double tol = 1e-8);

}  // namespace stiffkit
