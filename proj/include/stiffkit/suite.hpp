#pragma once

// The full verification battery run by `stiffkit suite --paper`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stiffkit {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  int threads = 0;
  std::uint64_t seed = 2024;
  int restarts = 200;       // universal-minimum checks on small codes
  int restarts_241 = 1000;  // the 2160-point code
  long circle_resolution = 1000000;
};

/// Runs every criterion in order; `progress` (if set) sees each result as it completes.
std::vector<CriterionResult> run_suite(const SuiteOptions& options = {},
                                             const std::function<void(const CriterionResult&)>& progress = {});

/// Dense-sampling search for D_m on S^2: Fibonacci samples refined by
/// alternating 1-D clustering of the dots and the smallest eigenvector of
/// the within-cluster scatter. Used as an independent cross-check of dual_search.
std::vector<std::vector<double>> sampled_dual_scan(const std::vector<std::vector<double>>& points, int m,
                                                   std::size_t samples = 100000, double tol = 1e-8);

}  // namespace stiffkit
