#pragma once
// Shared randomness helpers: one fixed way to turn mt19937_64 output into
// uniforms and discrete samples, so logs replay bit-for-bit across builds.

#include <random>
#include <vector>

namespace lllgas {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// CDF walk; the final index absorbs any rounding shortfall.
inline int sample_index(std::mt19937_64& rng,
                        const std::vector<double>& probabilities) {
  const double u = uniform01(rng);
  double acc = 0.0;
  const int last = static_cast<int>(probabilities.size()) - 1;
  for (int i = 0; i < last; ++i) {
    acc += probabilities[i];
    if (u < acc) return i;
  }
  return last;
}

inline int sample_below(std::mt19937_64& rng, int n) {
  const int i = static_cast<int>(uniform01(rng) * n);
  return i >= n ? n - 1 : i;
}

}  // namespace lllgas
