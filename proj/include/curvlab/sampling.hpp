#pragma once

// Seeded sampling. std::mt19937_64 is fully specified by the standard; the
// conversions below avoid the implementation-defined distributions so sample
// points are identical across standard libraries.

#include <cstdint>
#include <random>
#include <vector>

#include "curvlab/tensor.hpp"

namespace curvlab {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// splitmix64 finalizer; derives independent per-item seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Axis-aligned coordinate box.
struct SampleBox {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  Point center() const;
  bool contains(const Point& p) const;
};

std::vector<Point> sample_points(const SampleBox& box, int count, std::uint64_t seed);

}  // namespace curvlab
