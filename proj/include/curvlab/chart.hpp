#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "curvlab/jet.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

// Coordinate functions x_0..x_{n-1} seeded as jets at the base point.
using CoordinateJets = std::span<const Jet>;

// Returns the n*n metric components (row-major) as functions of the coordinates.
using MetricFunction = std::function<std::vector<Jet>(CoordinateJets)>;
// Returns the n diagonal metric components.
using DiagonalMetricFunction = std::function<std::vector<Jet>(CoordinateJets)>;
using ScalarFunction = std::function<Jet(CoordinateJets)>;
using DomainPredicate = std::function<bool(const Point&)>;

class MetricChart {
 public:
  MetricChart(std::string name, int dim, MetricFunction components, DomainPredicate safe = {});

  static MetricChart diagonal(std::string name, int dim, DiagonalMetricFunction diag,
                              DomainPredicate safe = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  bool in_safe_domain(const Point& p) const;

  std::vector<Jet> coordinates(const Point& p, int order) const;

  // Metric components as jets of the given order. Throws ShapeError on a
  // wrong point size or a non-symmetric evaluator.
  JetTensor evaluate(const Point& p, int order) const;
  Matrix metric_value(const Point& p) const;

 private:
  std::string name_;
  int dim_;
  MetricFunction components_;
  DomainPredicate safe_;
};

}  // namespace curvlab
