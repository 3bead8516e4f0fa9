#include "curvlab/geometry.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace curvlab {

namespace {

std::size_t idx2(int n, int i, int j) { return static_cast<std::size_t>(i) * n + j; }
std::size_t idx3(int n, int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; }
std::size_t idx4(int n, int i, int j, int k, int l) {
  return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
}

}  // namespace

PointGeometry::PointGeometry(const MetricChart& chart, Point point, int order)
    : chart_(&chart), point_(std::move(point)), order_(order), dim_(chart.dim()) {
  if (order_ < 0) throw JetBudgetError("negative jet order");
  metric_.resize(order_ + 1);
  inverse_.resize(order_ + 1);
  christoffel_.resize(order_ + 1);
  riemann_.resize(order_ + 1);
  ricci_.resize(order_ + 1);
  scalar_.resize(order_ + 1);

  metric_[order_] = chart_->evaluate(point_, order_);
  const JetTensor& g = *metric_[order_];
  metric_value_ = Matrix(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) metric_value_(i, j) = g(i, j).value();
  frame_ = orthonormal_frame(metric_value_);  // throws on a degenerate metric
  inverse_value_ = inverse(metric_value_);
}

std::vector<Jet> PointGeometry::coordinates(int order) const { return chart_->coordinates(point_, order); }

const JetTensor& PointGeometry::cached(Cache& cache, int order, int top, const char* what,
                                       const std::function<JetTensor()>& build) {
  if (order < 0 || order > top)
    throw JetBudgetError(std::string(what) + " of order " + std::to_string(order) +
                         " needs metric jets of order " + std::to_string(order + (order_ - top)) +
                         ", have " + std::to_string(order_));
  if (!cache[top]) cache[top] = build();
  if (!cache[order]) cache[order] = cache[top]->truncated(order);
  return *cache[order];
}

const JetTensor& PointGeometry::metric(int order) {
  return cached(metric_, order, order_, "metric", [&] { return *metric_[order_]; });
}

const JetTensor& PointGeometry::inverse_metric(int order) {
  return cached(inverse_, order, order_, "inverse metric", [&] { return build_inverse(); });
}

const JetTensor& PointGeometry::christoffel(int order) {
  return cached(christoffel_, order, order_ - 1, "christoffel symbols",
                [&] { return build_christoffel(); });
}

const JetTensor& PointGeometry::riemann(int order) {
  return cached(riemann_, order, order_ - 2, "riemann tensor", [&] {
    build_curvature();
    return *riemann_[order_ - 2];
  });
}

const JetTensor& PointGeometry::ricci(int order) {
  return cached(ricci_, order, order_ - 2, "ricci tensor", [&] {
    build_curvature();
    return *ricci_[order_ - 2];
  });
}

const JetTensor& PointGeometry::scalar_curvature(int order) {
  return cached(scalar_, order, order_ - 2, "scalar curvature", [&] {
    build_curvature();
    return *scalar_[order_ - 2];
  });
}

JetTensor PointGeometry::build_inverse() {
  // g = G0 + H with H vanishing at the point, so
  // g^-1 = sum_k (-G0^-1 H)^k G0^-1 terminates after order_ terms.
  const int n = dim_;
  const JetTensor& g = *metric_[order_];
  JetTensor p(n, covariant_valence(2), n, order_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Jet h = g(l, j);
        h[0] = 0.0;
        p(i, j) += h * (-inverse_value_(i, l));
      }
  JetTensor term(n, Valence(2, Slot::Contravariant), n, order_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) term(i, j)[0] = inverse_value_(i, j);
  JetTensor sum = term;
  for (int k = 1; k <= order_; ++k) {
    JetTensor next(n, Valence(2, Slot::Contravariant), n, order_);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) next(i, j).add_product(p(i, l), term(l, j));
    for (std::size_t f = 0; f < sum.size(); ++f) sum[f] += next[f];
    term = std::move(next);
  }
  return sum;
}

JetTensor PointGeometry::build_christoffel() {
  const int n = dim_;
  const int o = order_ - 1;
  const JetTensor& g = *metric_[order_];
  // dg[idx3(i, j, l)] = d_i g_jl
  std::vector<Jet> dg;
  dg.reserve(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) dg.push_back(g(j, l).derivative(i));
  const JetTensor& ginv = inverse_metric(o);
  JetTensor gamma(n, {Slot::Contravariant, Slot::Covariant, Slot::Covariant}, n, o);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        // Christoffel symbol of the first kind [ij, l].
        Jet first = dg[idx3(n, i, j, l)] + dg[idx3(n, j, i, l)] - dg[idx3(n, l, i, j)];
        first *= 0.5;
        for (int k = 0; k < n; ++k) gamma(k, i, j).add_product(ginv(k, l), first);
      }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) gamma(k, i, j) = gamma(k, j, i);
  return gamma;
}

void PointGeometry::build_curvature() {
  const int n = dim_;
  const int o = order_ - 2;
  if (o < 0) throw JetBudgetError("curvature needs metric jets of order 2");
  if (riemann_[o]) return;
  const JetTensor& gamma1 = christoffel(o + 1);
  const JetTensor& gamma = christoffel(o);
  // rm(l, i, j, k) = R^l_{ijk} with R(d_i, d_j) d_k = R^l_{ijk} d_l.
  JetTensor rm(n, {Slot::Contravariant, Slot::Covariant, Slot::Covariant, Slot::Covariant}, n, o);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Jet r = gamma1(l, j, k).derivative(i) - gamma1(l, i, k).derivative(j);
          for (int m = 0; m < n; ++m) {
            r.add_product(gamma(l, i, m), gamma(m, j, k));
            r.add_product(gamma(l, j, m), gamma(m, i, k), -1.0);
          }
          rm(l, j, i, k) = r * -1.0;
          rm(l, i, j, k) = std::move(r);
        }

  const JetTensor& g = metric(o);
  JetTensor riem(n, covariant_valence(4), n, o);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          // R_ijkl = g_km R^m_{ijl}
          Jet& r = riem(i, j, k, l);
          for (int m = 0; m < n; ++m) r.add_product(g(k, m), rm(m, i, j, l));
          riem(j, i, k, l) = r * -1.0;
        }

  JetTensor ric(n, covariant_valence(2), n, o);
  for (int j = 0; j < n; ++j)
    for (int l = j; l < n; ++l) {
      Jet& r = ric(j, l);
      for (int i = 0; i < n; ++i) r += rm(i, i, j, l);
      if (l != j) ric(l, j) = r;
    }

  const JetTensor& ginv = inverse_metric(o);
  JetTensor scal(n, Valence{}, n, o);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) scal[0].add_product(ginv(j, l), ric(j, l));

  riemann_[o] = std::move(riem);
  ricci_[o] = std::move(ric);
  scalar_[o] = std::move(scal);
}

JetTensor covariant_derivative(const JetTensor& t, PointGeometry& geom) {
  const int n = t.dim();
  const int o = t.order() - 1;
  if (o < 0) throw JetBudgetError("covariant derivative of an order-0 jet tensor");
  const JetTensor& gamma = geom.christoffel(o);
  const JetTensor low = t.truncated(o);
  Valence valence = t.valence();
  valence.insert(valence.begin(), Slot::Covariant);
  JetTensor out(n, std::move(valence), t.n_vars(), o);
  const std::size_t size = t.size();
  for (int a = 0; a < n; ++a)
    for (std::size_t f = 0; f < size; ++f) {
      Jet& r = out[static_cast<std::size_t>(a) * size + f];
      r = t[f].derivative(a);
      for (int s = 0; s < t.rank(); ++s) {
        const std::size_t st = t.stride(s);
        const int is = static_cast<int>((f / st) % n);
        const std::size_t base = f - static_cast<std::size_t>(is) * st;
        if (t.valence()[s] == Slot::Covariant) {
          for (int m = 0; m < n; ++m)
            r.add_product(gamma[idx3(n, m, a, is)], low[base + static_cast<std::size_t>(m) * st], -1.0);
        } else {
          for (int m = 0; m < n; ++m)
            r.add_product(gamma[idx3(n, is, a, m)], low[base + static_cast<std::size_t>(m) * st]);
        }
      }
    }
  return out;
}

JetTensor metric_trace(const JetTensor& t, int s1, int s2, PointGeometry& geom) {
  if (s1 == s2 || s1 < 0 || s2 < 0 || s1 >= t.rank() || s2 >= t.rank())
    throw ShapeError("invalid trace slots " + std::to_string(s1) + ", " + std::to_string(s2));
  if (s1 > s2) std::swap(s1, s2);
  const int n = t.dim();
  const int o = t.order();
  const Slot k1 = t.valence()[s1], k2 = t.valence()[s2];
  const JetTensor* weights = nullptr;
  if (k1 == Slot::Covariant && k2 == Slot::Covariant) weights = &geom.inverse_metric(o);
  if (k1 == Slot::Contravariant && k2 == Slot::Contravariant) weights = &geom.metric(o);

  Valence valence;
  for (int s = 0; s < t.rank(); ++s)
    if (s != s1 && s != s2) valence.push_back(t.valence()[s]);
  JetTensor out(n, std::move(valence), t.n_vars(), o);
  const std::size_t st1 = t.stride(s1), st2 = t.stride(s2);
  for (std::size_t f = 0; f < out.size(); ++f) {
    // Insert zeros at s1 and s2 to get the base position in t.
    const std::vector<int> oi = out.unflat(f);
    std::size_t base = 0;
    for (int s = 0, q = 0; s < t.rank(); ++s) {
      const int v = (s == s1 || s == s2) ? 0 : oi[q++];
      base = base * n + static_cast<std::size_t>(v);
    }
    Jet& r = out[f];
    for (int a = 0; a < n; ++a) {
      if (!weights) {
        r += t[base + a * st1 + a * st2];
        continue;
      }
      for (int b = 0; b < n; ++b) r.add_product((*weights)(a, b), t[base + a * st1 + b * st2]);
    }
  }
  return out;
}

TensorField::TensorField(std::string name, Valence valence, int consumption, Evaluator eval)
    : name_(std::move(name)), valence_(std::move(valence)), consumption_(consumption), eval_(std::move(eval)) {}

JetTensor TensorField::evaluate(PointGeometry& geom, int out_order) const {
  if (out_order < 0 || out_order + consumption_ > geom.order())
    throw JetBudgetError("field '" + name_ + "' at order " + std::to_string(out_order) +
                         " needs metric jets of order " + std::to_string(out_order + consumption_) +
                         ", have " + std::to_string(geom.order()));
  return eval_(geom, out_order);
}

TensorValue TensorField::at(PointGeometry& geom) const { return evaluate(geom, 0).value(geom.point()); }

TensorField metric_field() {
  return TensorField("metric", covariant_valence(2), 0,
                     [](PointGeometry& geom, int o) { return geom.metric(o); });
}

TensorField riemann_field() {
  return TensorField("riemann", covariant_valence(4), 2,
                     [](PointGeometry& geom, int o) { return geom.riemann(o); });
}

TensorField ricci_field() {
  return TensorField("ricci", covariant_valence(2), 2,
                     [](PointGeometry& geom, int o) { return geom.ricci(o); });
}

TensorField scalar_curvature_field() {
  return TensorField("scalar", Valence{}, 2,
                     [](PointGeometry& geom, int o) { return geom.scalar_curvature(o); });
}

namespace {

void require_dim(int n, int min_dim, const char* what) {
  if (n < min_dim)
    throw ParameterError(std::string(what) + " requires dimension >= " + std::to_string(min_dim) +
                         ", got " + std::to_string(n));
}

JetTensor schouten_jets(PointGeometry& geom, int o) {
  const int n = geom.dim();
  require_dim(n, 3, "schouten tensor");
  const JetTensor& ric = geom.ricci(o);
  const JetTensor& g = geom.metric(o);
  const Jet& r = geom.scalar_curvature(o)[0];
  JetTensor a = ric;
  const double c = -1.0 / (2.0 * (n - 1));
  for (std::size_t f = 0; f < a.size(); ++f) a[f].add_product(r, g[f], c);
  return a;
}

// Weyl from the Ricci decomposition of the curvature tensor.
JetTensor weyl_jets(PointGeometry& geom, int o) {
  const int n = geom.dim();
  require_dim(n, 3, "weyl tensor");
  const JetTensor& rm = geom.riemann(o);
  const JetTensor& ric = geom.ricci(o);
  const JetTensor& g = geom.metric(o);
  const Jet& r = geom.scalar_curvature(o)[0];
  std::vector<Jet> rg;
  rg.reserve(g.size());
  for (std::size_t f = 0; f < g.size(); ++f) rg.push_back(r * g[f]);
  const double c1 = 1.0 / (n - 2);
  const double c2 = 1.0 / ((n - 1.0) * (n - 2.0));
  JetTensor w = rm;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Jet& x = w[idx4(n, i, j, k, l)];
          x.add_product(ric(i, k), g(j, l), -c1);
          x.add_product(ric(j, l), g(i, k), -c1);
          x.add_product(ric(i, l), g(j, k), c1);
          x.add_product(ric(j, k), g(i, l), c1);
          x.add_product(rg[idx2(n, j, l)], g(i, k), c2);
          x.add_product(rg[idx2(n, i, l)], g(j, k), -c2);
        }
  return w;
}

JetTensor weyl_via_schouten_jets(PointGeometry& geom, int o) {
  const int n = geom.dim();
  require_dim(n, 3, "weyl tensor");
  const JetTensor a = schouten_jets(geom, o);
  const JetTensor& g = geom.metric(o);
  const double c = 1.0 / (n - 2);
  JetTensor w = geom.riemann(o);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Jet& x = w[idx4(n, i, j, k, l)];
          x.add_product(g(i, k), a(j, l), -c);
          x.add_product(g(i, l), a(j, k), c);
          x.add_product(g(j, k), a(i, l), c);
          x.add_product(g(j, l), a(i, k), -c);
        }
  return w;
}

// C_ijk = T_ijk - T_jik for T = nabla A style inputs.
JetTensor skew_first_pair(const JetTensor& t) {
  const int n = t.dim();
  JetTensor c(n, covariant_valence(3), t.n_vars(), t.order());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c(i, j, k) = t(i, j, k) - t(j, i, k);
  return c;
}

JetTensor cotton_jets(PointGeometry& geom, int o) {
  const int n = geom.dim();
  require_dim(n, 3, "cotton tensor");
  const JetTensor dric = covariant_derivative(geom.ricci(o + 1), geom);
  const JetTensor dr = covariant_derivative(geom.scalar_curvature(o + 1), geom);
  const JetTensor& g = geom.metric(o);
  JetTensor c = skew_first_pair(dric);
  const double s = -1.0 / (2.0 * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Jet& x = c(i, j, k);
        x.add_product(dr[i], g(j, k), s);
        x.add_product(dr[j], g(i, k), -s);
      }
  return c;
}

}  // namespace

TensorField schouten_field() {
  return TensorField("schouten", covariant_valence(2), 2, schouten_jets);
}

TensorField weyl_field() { return TensorField("weyl", covariant_valence(4), 2, weyl_jets); }

TensorField weyl_via_schouten_field() {
  return TensorField("weyl_via_schouten", covariant_valence(4), 2, weyl_via_schouten_jets);
}

TensorField cotton_field() { return TensorField("cotton", covariant_valence(3), 3, cotton_jets); }

TensorField cotton_via_schouten_field() {
  return TensorField("cotton_via_schouten", covariant_valence(3), 3, [](PointGeometry& geom, int o) {
    require_dim(geom.dim(), 3, "cotton tensor");
    return skew_first_pair(covariant_derivative(schouten_jets(geom, o + 1), geom));
  });
}

TensorField bach_field() {
  return TensorField("bach", covariant_valence(2), 4, [](PointGeometry& geom, int o) {
    const int n = geom.dim();
    require_dim(n, 3, "bach tensor");
    if (n == 3) return divergence(cotton_field(), 0).evaluate(geom, o);
    // B_ij = nabla_k nabla_l W_ikjl / (n-3) + R_kl W_ikjl / (n-2)
    static const TensorField div_weyl = divergence(divergence(weyl_field(), 3), 1);
    JetTensor b = div_weyl.evaluate(geom, o);
    for (std::size_t f = 0; f < b.size(); ++f) b[f] *= 1.0 / (n - 3);
    const JetTensor w = weyl_jets(geom, o);
    const JetTensor& ric = geom.ricci(o);
    const JetTensor& ginv = geom.inverse_metric(o);
    JetTensor half(n, {Slot::Contravariant, Slot::Covariant}, n, o);
    for (int k = 0; k < n; ++k)
      for (int b2 = 0; b2 < n; ++b2)
        for (int a = 0; a < n; ++a) half(k, b2).add_product(ginv(k, a), ric(a, b2));
    JetTensor rup(n, Valence(2, Slot::Contravariant), n, o);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int b2 = 0; b2 < n; ++b2) rup(k, l).add_product(half(k, b2), ginv(l, b2));
    const double c = 1.0 / (n - 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) b(i, j).add_product(rup(k, l), w(i, k, j, l), c);
    return b;
  });
}

TensorField scalar_function_field(std::string name, ScalarFunction f) {
  return TensorField(std::move(name), Valence{}, 0, [f = std::move(f)](PointGeometry& geom, int o) {
    const std::vector<Jet> x = geom.coordinates(o);
    JetTensor t(geom.dim(), Valence{}, geom.dim(), o);
    t[0] = f(x);
    return t;
  });
}

TensorField covariant_derivative(const TensorField& field) {
  Valence valence = field.valence();
  valence.insert(valence.begin(), Slot::Covariant);
  return TensorField("nabla(" + field.name() + ")", std::move(valence), field.consumption() + 1,
                     [field](PointGeometry& geom, int o) {
                       return covariant_derivative(field.evaluate(geom, o + 1), geom);
                     });
}

TensorField divergence(const TensorField& field, int slot) {
  if (slot < 0 || slot >= static_cast<int>(field.valence().size()))
    throw ShapeError("divergence slot " + std::to_string(slot) + " invalid for field '" +
                     field.name() + "'");
  Valence valence = field.valence();
  valence.erase(valence.begin() + slot);
  return TensorField("div" + std::to_string(slot) + "(" + field.name() + ")", std::move(valence),
                     field.consumption() + 1, [field, slot](PointGeometry& geom, int o) {
                       const JetTensor d = covariant_derivative(field.evaluate(geom, o + 1), geom);
                       return metric_trace(d, 0, slot + 1, geom);
                     });
}

TensorField weyl_fourth_divergence_field() {
  // innermost nabla_i hits slot 0 of W_ijkl, then nabla_l (slot 2 of jkl),
  // nabla_k (slot 1 of jk) and nabla_j.
  return divergence(divergence(divergence(divergence(weyl_field(), 0), 2), 1), 0);
}

TensorField cotton_third_divergence_field() {
  return divergence(divergence(divergence(cotton_field(), 0), 0), 0);
}

namespace {

PointGeometry safe_geometry(const MetricChart& chart, const Point& p, int order) {
  if (static_cast<int>(p.size()) != chart.dim())
    throw ShapeError("point has " + std::to_string(p.size()) + " coordinates, chart '" + chart.name() +
                     "' has dimension " + std::to_string(chart.dim()));
  if (!chart.in_safe_domain(p)) throw DomainError("point outside the safe domain of '" + chart.name() + "'");
  return PointGeometry(chart, p, order);
}

}  // namespace

TensorValue christoffel(const MetricChart& chart, const Point& p) {
  auto geom = safe_geometry(chart, p, 1);
  return geom.christoffel(0).value(p);
}

TensorValue riemann(const MetricChart& chart, const Point& p) {
  auto geom = safe_geometry(chart, p, 2);
  return geom.riemann(0).value(p);
}

TensorValue ricci(const MetricChart& chart, const Point& p) {
  auto geom = safe_geometry(chart, p, 2);
  return geom.ricci(0).value(p);
}

double scalar_curvature(const MetricChart& chart, const Point& p) {
  auto geom = safe_geometry(chart, p, 2);
  return geom.scalar_curvature(0)[0].value();
}

TensorValue schouten(const MetricChart& chart, const Point& p) {
  auto geom = safe_geometry(chart, p, 2);
  return schouten_field().at(geom);
}

TensorValue weyl(const MetricChart& chart, const Point& p) {
  auto geom = safe_geometry(chart, p, 2);
  return weyl_field().at(geom);
}

TensorValue cotton(const MetricChart& chart, const Point& p) {
  auto geom = safe_geometry(chart, p, 3);
  return cotton_field().at(geom);
}

TensorValue bach(const MetricChart& chart, const Point& p) {
  auto geom = safe_geometry(chart, p, 4);
  return bach_field().at(geom);
}

TensorValue divergence(const TensorField& field, const MetricChart& chart, const Point& p, int slot) {
  const TensorField d = divergence(field, slot);
  auto geom = safe_geometry(chart, p, d.consumption());
  return d.at(geom);
}

double sectional_curvature(PointGeometry& geom, const std::vector<double>& v1,
                           const std::vector<double>& v2) {
  const int n = geom.dim();
  if (static_cast<int>(v1.size()) != n || static_cast<int>(v2.size()) != n)
    throw ShapeError("plane vectors must have the chart dimension");
  const Matrix& g = geom.metric_value();
  double g11 = 0, g22 = 0, g12 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g11 += g(i, j) * v1[i] * v1[j];
      g22 += g(i, j) * v2[i] * v2[j];
      g12 += g(i, j) * v1[i] * v2[j];
    }
  const double gram = g11 * g22 - g12 * g12;
  if (!(gram > 1e-12)) throw DomainError("degenerate plane (Gram determinant " + std::to_string(gram) + ")");
  const JetTensor& rm = geom.riemann(0);
  double num = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          num += rm(i, j, k, l).value() * v1[i] * v2[j] * v1[k] * v2[l];
  return num / gram;
}

double sectional_curvature(const MetricChart& chart, const Point& p, const std::vector<double>& v1,
                           const std::vector<double>& v2) {
  auto geom = safe_geometry(chart, p, 2);
  return sectional_curvature(geom, v1, v2);
}

RicciEigensystem ricci_eigensystem(PointGeometry& geom) {
  const int n = geom.dim();
  const JetTensor& ric = geom.ricci(0);
  Matrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = ric(i, j).value();
  SymmetricEigen e = generalized_eigen(r, geom.metric_value());
  return RicciEigensystem{std::move(e.values), std::move(e.vectors)};
}

RicciEigensystem ricci_eigensystem(const MetricChart& chart, const Point& p) {
  auto geom = safe_geometry(chart, p, 2);
  return ricci_eigensystem(geom);
}

}  // namespace curvlab
