#pragma once

#include <string>
#include <vector>

#include "curvlab/tensor.hpp"

namespace curvlab {

// A pointwise identity residual. `scale` is the largest magnitude among the
// identity's individual terms at the point.
struct PointResidual {
  TensorValue residual;
  double scale = 0.0;

  double abs() const { return residual.max_abs(); }
  // Relative to `scale`, or absolute when the scale is below 1e-6.
  double rel() const;
};

struct IdentityResidual {
  std::string name;
  double max_abs = 0.0;
  double max_rel = 0.0;
  int points_checked = 0;
  double tolerance = 0.0;
  bool pass = false;
  // A check-specific statistic (minimum sectional curvature, spread of R, ...).
  double observed = 0.0;
  std::string note;
};

// A rank-0 residual.
PointResidual scalar_residual(double value, double scale);

// Max-reduce point residuals; pass iff max_rel <= tolerance.
IdentityResidual aggregate(std::string name, const std::vector<PointResidual>& points, double tolerance);

}  // namespace curvlab
