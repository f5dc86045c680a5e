#pragma once

// Potentials p(x) = sum_i g(x . x_i) on S^d: kernels, evaluation, multistart
// minimisation and the universal-minimum checks.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stiffkit/codes.hpp"
#include "stiffkit/gegenbauer.hpp"
#include "stiffkit/kernels.hpp"

namespace stiffkit {

enum class KernelFamily { Riesz, Gaussian, Log, Polynomial };

/// g(t) as a function of the dot product t = x . y, together with g' and g''.
///   riesz:s   g = (2 - 2t)^(-s/2) = |x - y|^(-s)
///   gauss:a   g = exp(-a (2 - 2t))
///   log       g = -log(2 - 2t) + 2
///   poly:c0,c1,...  g = c0 + c1 t + ...
class Kernel {
 public:
  static Kernel riesz(double s);
  static Kernel gaussian(double rate);
  static Kernel log();
  static Kernel polynomial(Polynomial p);
  /// "riesz:2", "gauss:1", "log", "poly:1,0,-1/2".
  static Kernel parse(const std::string& text);

  KernelFamily family() const { return family_; }
  double parameter() const { return param_; }
  const std::string& name() const { return name_; }
  /// Infinite at t = 1 (riesz, log).
  bool singular() const { return family_ == KernelFamily::Riesz || family_ == KernelFamily::Log; }
  /// Strictly absolutely monotone families, for which the argmin set is the dual.
  bool strictly_monotone() const { return family_ == KernelFamily::Riesz || family_ == KernelFamily::Gaussian; }

  double value(double t) const;
  /// Writes g(t), g'(t), g''(t).
  void derivatives(double t, double& g, double& g1, double& g2) const;

 private:
  KernelFamily family_ = KernelFamily::Riesz;
  double param_ = 1;
  Polynomial poly_;
  std::vector<double> poly_coeffs_;
  std::string name_;
};

/// A code prepared for repeated potential evaluation.
class Field {
 public:
  Field(const Code& code, Kernel kernel);

  const Kernel& kernel() const { return kernel_; }
  int dim() const { return points_.dim(); }
  std::size_t size() const { return points_.rows(); }

  /// p(x); throws SingularEvaluation when x hits a code point under riesz/log.
  double value(std::span<const double> x) const;
  /// p(x), Euclidean gradient and Hessian (row-major dim x dim) of the
  /// extension of p to R^{d+1} through the dot products.
  double value_gradient_hessian(std::span<const double> x, std::vector<double>& grad,
                                std::vector<double>& hess) const;

 private:
  void dots(std::span<const double> x, std::vector<double>& out) const;
  PointMatrix points_;
  Kernel kernel_;
};

/// Convenience wrapper: checks |x| = 1 within 1e-12 and evaluates.
double potential_eval(std::span<const double> x, const Code& code, const Kernel& kernel);

/// Tangential (Riemannian) gradient of p at unit x.
std::vector<double> tangential_gradient(const Field& field, std::span<const double> x);

struct MinimizeOptions {
  int restarts = 100;
  std::uint64_t seed = 1;
  int threads = 0;
  /// Extra starting points, e.g. a known dual configuration.
  std::vector<std::vector<double>> candidates;
  bool antipodal_starts = true;
  double gradient_tol = 1e-10;
  double cluster_tol = 1e-6;
  int max_iterations = 500;
};

struct MinimizationReport {
  std::string kernel;
  double global_min_value = 0;
  /// Representatives of the clusters of converged points attaining the global value.
  std::vector<std::vector<double>> argmin_cluster;
  std::size_t starts = 0;
  std::size_t converged = 0;
  std::size_t stalled = 0;      // accepted with gradient between the target and 1e-8
  std::size_t failed = 0;       // iteration cap or singular start
  std::optional<double> dual_value;  // min over the supplied candidates
  double min_from_other_starts = 0;  // min over random and antipodal starts
  /// min_from_other_starts - dual_value (>= -tolerance when the candidates are optimal).
  double gap = 0;
  bool dual_match = false;
  int restarts = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
};

MinimizationReport minimize_potential(const Code& code, const Kernel& kernel, const MinimizeOptions& options = {});

struct UniversalMinimumReport {
  std::string kernel;
  double dual_value = 0;
  double dual_spread = 0;          // relative spread of p over the dual points
  bool equal_values = false;       // spread <= 1e-9
  double global_min = 0;
  double margin = 0;               // global_min - dual_value
  bool no_lower_value = false;     // margin >= -1e-8 max(1, |dual_value|)
  double max_argmin_distance = 0;  // from argmins to the nearest dual point
  bool argmins_on_dual = true;     // checked for riesz and gaussian only
  bool pass = false;
  MinimizationReport minimization;
};

/// Checks that `dual` is the set of absolute minima of p for each kernel.
std::vector<UniversalMinimumReport> verify_universal_minimum(const Code& code, const Code& dual,
                                                             const std::vector<Kernel>& kernels,
                                                             const MinimizeOptions& options = {});

struct SkipOneAddTwoReport {
  bool index_ok = false;
  bool sum_ok = false;
  bool sumsq_ok = false;
  bool candidates_ok = false;  // some candidate has its spectrum inside t_list
  std::string sum;             // sum t_i
  std::string sumsq_expr;      // sum t_i^2 - 2 (sum t_i)^2
  std::string bound;           // m(2m-1)/(4m+d-3)
  double sum_margin = 0;       // t_m/2 - sum t_i
  double sumsq_margin = 0;     // bound - sumsq_expr
  std::vector<int> index_set;
  bool pass() const { return index_ok && sum_ok && sumsq_ok && candidates_ok; }
};

/// Hypotheses of the skip-one-add-two construction for node list t_1 < ... < t_m,
/// evaluated exactly, plus nonemptiness of {x : D(x, code) within t_list}
/// tested on `candidates` (nullptr: not tested, reported false).
SkipOneAddTwoReport skip_one_add_two_check(const Code& code, int m, const std::vector<Surd>& t_list,
                                           const Code* candidates = nullptr, int threads = 0);

}  // namespace stiffkit
