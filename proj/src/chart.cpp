#include "curvlab/chart.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace curvlab {

MetricChart::MetricChart(std::string name, int dim, MetricFunction components, DomainPredicate safe)
    : name_(std::move(name)), dim_(dim), components_(std::move(components)), safe_(std::move(safe)) {
  if (dim_ < 2) throw ParameterError("chart dimension must be at least 2");
}

MetricChart MetricChart::diagonal(std::string name, int dim, DiagonalMetricFunction diag,
                                  DomainPredicate safe) {
  auto full = [dim, diag = std::move(diag)](CoordinateJets x) {
    std::vector<Jet> d = diag(x);
    if (static_cast<int>(d.size()) != dim) throw ShapeError("diagonal metric has wrong length");
    const Jet zero(x[0].n_vars(), x[0].max_order());
    std::vector<Jet> g(static_cast<std::size_t>(dim) * dim, zero);
    for (int i = 0; i < dim; ++i) g[static_cast<std::size_t>(i) * dim + i] = std::move(d[i]);
    return g;
  };
  return MetricChart(std::move(name), dim, std::move(full), std::move(safe));
}

bool MetricChart::in_safe_domain(const Point& p) const {
  if (static_cast<int>(p.size()) != dim_) return false;
  return !safe_ || safe_(p);
}

std::vector<Jet> MetricChart::coordinates(const Point& p, int order) const {
  if (static_cast<int>(p.size()) != dim_)
    throw ShapeError("point has " + std::to_string(p.size()) + " coordinates, chart '" + name_ +
                     "' has dimension " + std::to_string(dim_));
  std::vector<Jet> x;
  x.reserve(dim_);
  for (int i = 0; i < dim_; ++i) x.push_back(Jet::variable(i, p[i], dim_, order));
  return x;
}

JetTensor MetricChart::evaluate(const Point& p, int order) const {
  const std::vector<Jet> x = coordinates(p, order);
  std::vector<Jet> comps = components_(x);
  if (static_cast<int>(comps.size()) != dim_ * dim_)
    throw ShapeError("metric evaluator of '" + name_ + "' returned " + std::to_string(comps.size()) +
                     " components");
  JetTensor g(dim_, covariant_valence(2), dim_, order);
  double scale = 0.0;
  for (std::size_t f = 0; f < comps.size(); ++f) {
    if (comps[f].max_order() != order || comps[f].n_vars() != dim_)
      throw ShapeError("metric component jet has the wrong shape");
    scale = std::max(scale, std::abs(comps[f].value()));
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < i; ++j) {
      const Jet& a = comps[static_cast<std::size_t>(i) * dim_ + j];
      const Jet& b = comps[static_cast<std::size_t>(j) * dim_ + i];
      for (std::size_t r = 0; r < a.coeffs().size(); ++r)
        if (std::abs(a[r] - b[r]) > 1e-13 * std::max(scale, 1.0))
          throw ShapeError("metric evaluator of '" + name_ + "' is not symmetric");
    }
  for (std::size_t f = 0; f < comps.size(); ++f) g[f] = std::move(comps[f]);
  return g;
}

Matrix MetricChart::metric_value(const Point& p) const {
  const JetTensor g = evaluate(p, 0);
  Matrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = g(i, j).value();
  return m;
}

}  // namespace curvlab
