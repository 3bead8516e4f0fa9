#include "curvlab/sampling.hpp"

namespace curvlab {

Point SampleBox::center() const {
  Point p;
  for (int i = 0; i < dim(); ++i) p.coords.push_back(0.5 * (lo[i] + hi[i]));
  return p;
}

bool SampleBox::contains(const Point& p) const {
  if (static_cast<int>(p.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  return true;
}

std::vector<Point> sample_points(const SampleBox& box, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> points;
  points.reserve(count);
  for (int k = 0; k < count; ++k) {
    Point p;
    for (int i = 0; i < box.dim(); ++i) p.coords.push_back(uniform(rng, box.lo[i], box.hi[i]));
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace curvlab
