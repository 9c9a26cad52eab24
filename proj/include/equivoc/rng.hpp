#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace equivoc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for (seed, domain, index). Every parallel work item
/// draws from its own stream, so results do not depend on the worker count.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t domain, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed ^ splitmix64(domain)) + index));
}

/// Uniform on [0, 1) from the top 53 bits; avoids implementation-defined
/// std::uniform_real_distribution so streams are portable.
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Categorical draw by inverse CDF.
inline std::size_t sample_index(std::mt19937_64& g, std::span<const double> probs) {
  const double u = uniform01(g);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    acc += probs[k];
    last = k;
    if (u < acc) return k;
  }
  return last;
}

/// Row drawn uniformly from the probability simplex: normalized Exp(1) draws.
inline void sample_simplex_row(std::mt19937_64& g, std::span<double> row) {
  double total = 0.0;
  for (double& x : row) {
    x = -std::log1p(-uniform01(g));
    total += x;
  }
  for (double& x : row) x /= total;
}

}  // namespace equivoc
