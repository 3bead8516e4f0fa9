#pragma once

// Curvature identities that hold on every metric. Each residual is taken in
// an orthonormal frame at the point of the PointGeometry, which must carry
// enough jet order (see required_order).

#include <optional>
#include <string>
#include <vector>

#include "curvlab/chart.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/residual.hpp"

namespace curvlab {

// Frame components of a field at the point of `geom`.
TensorValue frame_components(const TensorField& field, PointGeometry& geom);

// Antisymmetries and pair symmetry of R_ijkl.
PointResidual riemann_symmetry_residual(PointGeometry& geom);
// R_ijkl + R_jkil + R_kijl
PointResidual first_bianchi_residual(PointGeometry& geom);
// nabla g
PointResidual metric_compatibility_residual(PointGeometry& geom);
// div Ric - dR / 2
PointResidual contracted_bianchi_residual(PointGeometry& geom);
// Weyl from the Ricci decomposition vs. via Schouten.
PointResidual weyl_routes_residual(PointGeometry& geom);
// Every trace of W.
PointResidual weyl_trace_residual(PointGeometry& geom);
// Cotton from nabla Ric vs. via Schouten.
PointResidual cotton_routes_residual(PointGeometry& geom);
// C_ijk + (n-2)/(n-3) nabla_l W_ijkl, n >= 4.
PointResidual cotton_weyl_residual(PointGeometry& geom);
// nabla_i B_ij - (n-4)/(n-2)^2 C_jks R_ks.
PointResidual bach_divergence_residual(PointGeometry& geom);
// B_ij - B_ji and, for n >= 4, the trace of B.
PointResidual bach_symmetry_residual(PointGeometry& geom);
// n/(n-2) tr(Ric0^3) - W_ijkl R_ik R_jl
//   - [R_ij R_jk R_ik - R_ijkl R_jl R_ik - R |Ric0|^2 / (n-1)], n >= 4.
PointResidual cubic_identity_residual(PointGeometry& geom);
// nabla_i nabla_j R_kl - nabla_j nabla_i R_kl - R_ijks R_sl - R_ijls R_ks.
PointResidual ricci_identity_residual(PointGeometry& geom);
// (nabla_i nabla_j R_ik - nabla_j nabla_i R_ik) R_jk - sum_{i<j} R_ijij (l_i - l_j)^2
// in a Ricci eigenframe. Empty when two eigenvalues are closer than `min_gap`.
std::optional<PointResidual> eigen_commutator_residual(PointGeometry& geom, double min_gap = 1e-6);
// nabla_j B_ij + R_jk C_ijk, n = 3.
PointResidual n3_bach_div_residual(PointGeometry& geom);

PointResidual cubic_identity_residual(const MetricChart& chart, const Point& p);
PointResidual n3_bach_div_residual(const MetricChart& chart, const Point& p);

// One identity of the random-metric suite at one point.
struct NamedResidual {
  std::string name;
  std::optional<PointResidual> value;  // empty when skipped at this point
};

// Names of the suite identities that apply in dimension n.
std::vector<std::string> universal_identity_names(int n);
// Metric jet order the suite needs.
int universal_identity_order();
std::vector<NamedResidual> universal_identities_at(PointGeometry& geom);

}  // namespace curvlab
