#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace stiffkit {

/// SplitMix64 finaliser; used to derive independent streams from one seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Generator for stream `index` of `seed`; streams do not depend on thread count.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

/// Uniform point on S^{dim-1}.
template <class Rng>
std::vector<double> random_unit(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(dim));
  double s = 0;
  do {
    s = 0;
    for (auto& x : v) {
      x = normal(rng);
      s += x * x;
    }
  } while (s < 1e-20);
  s = 1.0 / std::sqrt(s);
  for (auto& x : v) x *= s;
  return v;
}

}  // namespace stiffkit
