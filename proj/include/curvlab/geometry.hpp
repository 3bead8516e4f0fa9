#pragma once

// Curvature of coordinate metrics.
//
// Index and sign conventions (see docs/conventions.md):
//   * R_ijkl is lowered so that a unit round sphere has
//     R_ijkl = g_ik g_jl - g_il g_jk, hence R_ijij = K > 0 on orthonormal pairs.
//   * R_jl = g^ik R_ijkl, R = g^jl R_jl; the unit n-sphere has Ric = (n-1) g.
//   * A covariant derivative puts its new slot first: (nabla T)_{a i1..ik}.
//     Iterating, (nabla nabla T)_{a b ...} = nabla_a nabla_b T_{...}.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/chart.hpp"
#include "curvlab/jet.hpp"
#include "curvlab/linalg.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

// Metric jets of one chart at one point and the curvature derived from them.
// The chart is evaluated once, at `order`; everything else is computed on
// first use and truncated as needed. Not thread-safe: use one per worker.
class PointGeometry {
 public:
  PointGeometry(const MetricChart& chart, Point point, int order);

  const MetricChart& chart() const { return *chart_; }
  const Point& point() const { return point_; }
  int order() const { return order_; }
  int dim() const { return dim_; }

  std::vector<Jet> coordinates(int order) const;

  const JetTensor& metric(int order);            // (down, down), order <= K
  const JetTensor& inverse_metric(int order);    // (up, up), order <= K
  const JetTensor& christoffel(int order);       // (up, down, down), order <= K-1
  const JetTensor& riemann(int order);           // all down, order <= K-2
  const JetTensor& ricci(int order);             // order <= K-2
  const JetTensor& scalar_curvature(int order);  // rank 0, order <= K-2

  const Matrix& metric_value() const { return metric_value_; }
  const Matrix& inverse_metric_value() const { return inverse_value_; }
  const Frame& frame() const { return frame_; }

 private:
  const MetricChart* chart_;
  Point point_;
  int order_;
  int dim_;
  Matrix metric_value_;
  Matrix inverse_value_;
  Frame frame_;

  // cache[k] holds the tensor truncated to order k.
  using Cache = std::vector<std::optional<JetTensor>>;
  Cache metric_, inverse_, christoffel_, riemann_, ricci_, scalar_;

  const JetTensor& cached(Cache& cache, int order, int top, const char* what,
                          const std::function<JetTensor()>& build);
  JetTensor build_inverse();
  JetTensor build_christoffel();
  void build_curvature();
};

// Covariant derivative of a jet tensor of order o+1; the result has order o.
JetTensor covariant_derivative(const JetTensor& t, PointGeometry& geom);

// Metric trace over two slots (g^ab for two covariant slots, g_ab for two
// contravariant ones, a plain sum for a mixed pair). s1 != s2.
JetTensor metric_trace(const JetTensor& t, int s1, int s2, PointGeometry& geom);

// A tensor field given by its jets at the point of a PointGeometry.
// `consumption` is how many metric derivative orders the field uses beyond
// its own output order.
class TensorField {
 public:
  using Evaluator = std::function<JetTensor(PointGeometry&, int out_order)>;

  TensorField(std::string name, Valence valence, int consumption, Evaluator eval);

  const std::string& name() const { return name_; }
  const Valence& valence() const { return valence_; }
  int consumption() const { return consumption_; }

  // Throws JetBudgetError if out_order + consumption exceeds geom.order().
  JetTensor evaluate(PointGeometry& geom, int out_order) const;
  TensorValue at(PointGeometry& geom) const;

 private:
  std::string name_;
  Valence valence_;
  int consumption_;
  Evaluator eval_;
};

TensorField metric_field();
TensorField riemann_field();
TensorField ricci_field();
TensorField scalar_curvature_field();
TensorField schouten_field();
TensorField weyl_field();
TensorField weyl_via_schouten_field();
TensorField cotton_field();
TensorField cotton_via_schouten_field();
TensorField bach_field();
TensorField scalar_function_field(std::string name, ScalarFunction f);

TensorField covariant_derivative(const TensorField& field);
// nabla_a T_{... b ...} contracted over a and the given slot of T.
TensorField divergence(const TensorField& field, int slot);

// nabla_j nabla_k nabla_l nabla_i W_ijkl
TensorField weyl_fourth_divergence_field();
// nabla_j nabla_i nabla_k C_kij
TensorField cotton_third_divergence_field();

// Pointwise evaluations at a safe point; each builds the jets it needs.
TensorValue christoffel(const MetricChart& chart, const Point& p);
TensorValue riemann(const MetricChart& chart, const Point& p);
TensorValue ricci(const MetricChart& chart, const Point& p);
double scalar_curvature(const MetricChart& chart, const Point& p);
TensorValue schouten(const MetricChart& chart, const Point& p);
TensorValue weyl(const MetricChart& chart, const Point& p);
TensorValue cotton(const MetricChart& chart, const Point& p);
TensorValue bach(const MetricChart& chart, const Point& p);
TensorValue divergence(const TensorField& field, const MetricChart& chart, const Point& p,
                       int slot);

// K = R(v1, v2, v1, v2) / (|v1|^2 |v2|^2 - <v1, v2>^2), positive on spheres.
double sectional_curvature(PointGeometry& geom, const std::vector<double>& v1,
                           const std::vector<double>& v2);
double sectional_curvature(const MetricChart& chart, const Point& p, const std::vector<double>& v1,
                           const std::vector<double>& v2);

struct RicciEigensystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // g-orthonormal columns
};

RicciEigensystem ricci_eigensystem(PointGeometry& geom);
RicciEigensystem ricci_eigensystem(const MetricChart& chart, const Point& p);

}  // namespace curvlab
