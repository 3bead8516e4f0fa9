#pragma once

// Quasi-Einstein structures: a metric, a potential u > 0 and constants m, lambda
// with hess(u) = (u/m)(Ric - lambda g). Every residual below is evaluated in
// an orthonormal frame at the point, so contractions are plain index sums.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/chart.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/residual.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

struct QEStructure {
  MetricChart chart;
  ScalarFunction potential;
  double m = 1.0;
  double lambda = 0.0;

  Jet potential_jet(const Point& p, int order) const;
  double potential_value(const Point& p) const;
};

// Frame components of everything the QE identities use, computed lazily from
// one metric evaluation at the point.
class QEPoint {
 public:
  QEPoint(const QEStructure& s, const Point& p, int order);

  PointGeometry& geometry() { return geom_; }
  const QEStructure& structure() const { return *s_; }
  int dim() const { return geom_.dim(); }
  double m() const { return s_->m; }
  double lambda() const { return s_->lambda; }

  double u();
  const TensorValue& du();
  const TensorValue& hess_u();
  const TensorValue& ricci();
  double scalar();
  const TensorValue& dscalar();
  const TensorValue& hess_scalar();
  const TensorValue& riemann();
  const TensorValue& weyl();
  const TensorValue& cotton();
  const TensorValue& dricci();  // (k, i, j) -> nabla_k R_ij
  const TensorValue& bach();
  // R_ij - R/n delta_ij
  const TensorValue& traceless_ricci();
  // |traceless Ric|^2 and its gradient, from jets.
  double traceless_norm_sq();
  const TensorValue& d_traceless_norm_sq();
  // div(u grad |traceless Ric|^2), from jets.
  double div_u_grad_traceless_norm_sq();
  // Components W(e_i, e_j, e_k, grad u).
  const TensorValue& radial_weyl();

 private:
  const QEStructure* s_;
  PointGeometry geom_;
  std::optional<double> u_, scalar_, tnorm_, div_u_grad_;
  std::optional<TensorValue> du_, hess_u_, ricci_, dscalar_, hess_scalar_, riemann_, weyl_,
      cotton_, dricci_, bach_, traceless_, dtnorm_, radial_weyl_;

  TensorValue frame_value(const TensorField& f);
};

// Potential u as a scalar field.
TensorField potential_field(const QEStructure& s);
// |Ric - (R/n) g|^2 as a scalar field.
TensorField traceless_norm_sq_field();

PointResidual qe_residual(QEPoint& q);
PointResidual trace_residual(QEPoint& q);
PointResidual traceless_residual(QEPoint& q);
// R - n(n-1) lambda / (m + n - 1)
double scalar_bound_margin(QEPoint& q);
IdentityResidual scalar_bound_check(const QEStructure& s, const std::vector<Point>& points,
                                    double tolerance = 1e-9);
TensorValue t_tensor(QEPoint& q);
PointResidual lemma_cwt_residual(QEPoint& q);
PointResidual contraction_identity_residual(QEPoint& q);
// With an explicit multiplier on T in the second term (1 reproduces the identity).
PointResidual contraction_identity_residual(QEPoint& q, double t_multiplier);
PointResidual bochner_residual(QEPoint& q);
// Throws HypothesisViolation when the radial Weyl norm at the point is >= 1e-8.
PointResidual bach_from_cotton_qe_residual(QEPoint& q);
// Static-space condition Laplacian(u) + lambda u, for m = 1 structures.
PointResidual static_condition_residual(QEPoint& q);

// Direct |traceless Ric|^2 and the constant-R closed form.
struct TracelessNormSample {
  double direct = 0.0;
  double formula = 0.0;
  double scalar = 0.0;
};
double traceless_norm_formula(double n, double m, double lambda, double scalar);
TracelessNormSample traceless_norm_sample(QEPoint& q);
// Throws ParameterError for m = 1 and HypothesisViolation when the sampled
// scalar curvature varies by more than 1e-9.
IdentityResidual traceless_norm_formula_check(const QEStructure& s, const std::vector<Point>& points,
                                              double tolerance = 1e-9);
IdentityResidual traceless_norm_formula_check(const std::vector<TracelessNormSample>& samples,
                                              double m, double tolerance = 1e-9);

// Condition statistics of a structure over sample points.
struct ProbeOptions {
  int planes_per_point = 10;
  std::uint64_t seed = 1;
  double radial_weyl_tol = 1e-8;
  double div4_weyl_tol = 1e-7;
  double div3_cotton_tol = 1e-7;
  double constant_scalar_tol = 1e-9;
  double sectional_tol = 1e-8;
  double bach_tol = 1e-8;
};

// Per-point probe statistics; fields that do not apply to the dimension stay 0.
struct ProbeSample {
  double radial_weyl = 0.0;
  double div4_weyl = 0.0;
  double div3_cotton = 0.0;
  double scalar = 0.0;
  double min_sectional = 0.0;
  double bach = 0.0;
};

// Metric jet order the probe needs in dimension n.
int probe_order(int n);
// Minimum sectional curvature over `planes` random coordinate planes.
double min_sectional_curvature(PointGeometry& geom, int planes, std::uint64_t seed);
ProbeSample probe_point(QEPoint& q, const ProbeOptions& options, std::uint64_t point_seed);
std::vector<IdentityResidual> summarize_probe(const std::vector<ProbeSample>& samples, int n,
                                              const ProbeOptions& options);

std::vector<IdentityResidual> condition_probe(const QEStructure& s, const std::vector<Point>& points,
                                              const ProbeOptions& options = {});

}  // namespace curvlab
