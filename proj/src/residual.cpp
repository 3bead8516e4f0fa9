#include "curvlab/residual.hpp"

#include <algorithm>

namespace curvlab {

double PointResidual::rel() const {
  const double a = abs();
  return scale < 1e-6 ? a : a / scale;
}

PointResidual scalar_residual(double value, double scale) {
  TensorValue t(0, Valence{});
  t[0] = value;
  return PointResidual{std::move(t), scale};
}

IdentityResidual aggregate(std::string name, const std::vector<PointResidual>& points, double tolerance) {
  IdentityResidual r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  r.points_checked = static_cast<int>(points.size());
  for (const auto& p : points) {
    r.max_abs = std::max(r.max_abs, p.abs());
    r.max_rel = std::max(r.max_rel, p.rel());
  }
  r.observed = r.max_abs;
  r.pass = r.max_rel <= tolerance;
  return r;
}

}  // namespace curvlab
