#pragma once

// Optimal least-squares split of sorted values into at most m contiguous groups.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace stiffkit::detail {

/// Returns the minimal within-group sum of squares; fills `labels` (group of
/// each value, nondecreasing) when given.
inline double cluster_sorted(const std::vector<double>& v, int m, std::vector<int>* labels = nullptr) {
  const std::size_t n = v.size();
  std::vector<double> pre(n + 1, 0), pre2(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    pre[i + 1] = pre[i] + v[i];
    pre2[i + 1] = pre2[i] + v[i] * v[i];
  }
  auto cost = [&](std::size_t a, std::size_t b) {
    const double s = pre[b] - pre[a];
    return std::max(0.0, pre2[b] - pre2[a] - s * s / static_cast<double>(b - a));
  };
  const double inf = 1e300;
  std::vector<std::vector<double>> best(m + 1, std::vector<double>(n + 1, inf));
  std::vector<std::vector<std::size_t>> cut(m + 1, std::vector<std::size_t>(n + 1, 0));
  best[0][0] = 0;
  for (int g = 1; g <= m; ++g) {
    best[g][0] = 0;
    for (std::size_t b = 1; b <= n; ++b)
      for (std::size_t a = 0; a < b; ++a) {
        if (best[g - 1][a] >= inf) continue;
        const double c = best[g - 1][a] + cost(a, b);
        if (c < best[g][b]) {
          best[g][b] = c;
          cut[g][b] = a;
        }
      }
  }
  if (labels != nullptr) {
    labels->assign(n, 0);
    std::size_t b = n;
    for (int g = m; g >= 1 && b > 0; --g) {
      const std::size_t a = cut[g][b];
      for (std::size_t i = a; i < b; ++i) (*labels)[i] = g - 1;
      b = a;
    }
  }
  return best[m][n];
}

}  // namespace stiffkit::detail
