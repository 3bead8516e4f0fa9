#include "curvlab/identities.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab {

TensorValue frame_components(const TensorField& field, PointGeometry& geom) {
  return to_frame(field.at(geom), geom.frame());
}

namespace {

void require_dim(const PointGeometry& geom, int min_dim, const char* what) {
  if (geom.dim() < min_dim)
    throw ParameterError(std::string(what) + " requires dimension >= " + std::to_string(min_dim));
}

TensorValue frame_riemann(PointGeometry& geom) { return frame_components(riemann_field(), geom); }
TensorValue frame_ricci(PointGeometry& geom) { return frame_components(ricci_field(), geom); }

// Residual a - b with the scale taken over both sides.
PointResidual difference(const TensorValue& a, const TensorValue& b, double extra_scale = 0.0) {
  PointResidual out{a, std::max({a.max_abs(), b.max_abs(), extra_scale})};
  for (std::size_t f = 0; f < a.size(); ++f) out.residual[f] = a[f] - b[f];
  return out;
}

double trace(const TensorValue& t) {
  double s = 0.0;
  for (int i = 0; i < t.dim(); ++i) s += t(i, i);
  return s;
}

}  // namespace

PointResidual riemann_symmetry_residual(PointGeometry& geom) {
  const int n = geom.dim();
  const TensorValue r = frame_riemann(geom);
  PointResidual out{TensorValue(n, covariant_valence(4), geom.point()), r.max_abs()};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = r(i, j, k, l);
          const double parts[] = {v + r(j, i, k, l), v + r(i, j, l, k), v - r(k, l, i, j)};
          double worst = 0.0;
          for (double p : parts)
            if (std::abs(p) > std::abs(worst)) worst = p;
          out.residual(i, j, k, l) = worst;
        }
  return out;
}

PointResidual first_bianchi_residual(PointGeometry& geom) {
  const int n = geom.dim();
  const TensorValue r = frame_riemann(geom);
  PointResidual out{TensorValue(n, covariant_valence(4), geom.point()), r.max_abs()};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out.residual(i, j, k, l) = r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l);
  return out;
}

PointResidual metric_compatibility_residual(PointGeometry& geom) {
  TensorValue dg = frame_components(covariant_derivative(metric_field()), geom);
  return PointResidual{std::move(dg), 1.0};
}

PointResidual contracted_bianchi_residual(PointGeometry& geom) {
  const TensorValue div_ric = frame_components(divergence(ricci_field(), 0), geom);
  TensorValue half_dr = frame_components(covariant_derivative(scalar_curvature_field()), geom);
  for (std::size_t f = 0; f < half_dr.size(); ++f) half_dr[f] *= 0.5;
  return difference(div_ric, half_dr);
}

PointResidual weyl_routes_residual(PointGeometry& geom) {
  require_dim(geom, 3, "Weyl tensor");
  return difference(frame_components(weyl_field(), geom), frame_components(weyl_via_schouten_field(), geom),
                    frame_riemann(geom).max_abs());
}

PointResidual weyl_trace_residual(PointGeometry& geom) {
  require_dim(geom, 3, "Weyl tensor");
  const int n = geom.dim();
  const TensorValue w = frame_components(weyl_field(), geom);
  // each cell keeps the largest of the six slot-pair traces with free indices (a, b)
  PointResidual out{TensorValue(n, covariant_valence(2), geom.point()), frame_riemann(geom).max_abs()};
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (const auto& pr : pairs) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0.0;
        for (int t = 0; t < n; ++t) {
          int idx[4];
          int free[2] = {a, b}, fi = 0;
          for (int slot = 0; slot < 4; ++slot) idx[slot] = (slot == pr[0] || slot == pr[1]) ? t : free[fi++];
          s += w(idx[0], idx[1], idx[2], idx[3]);
        }
        double& cell = out.residual(a, b);
        if (std::abs(s) > std::abs(cell)) cell = s;
      }
  }
  return out;
}

PointResidual cotton_routes_residual(PointGeometry& geom) {
  require_dim(geom, 3, "Cotton tensor");
  const TensorValue dric = frame_components(covariant_derivative(ricci_field()), geom);
  return difference(frame_components(cotton_field(), geom), frame_components(cotton_via_schouten_field(), geom),
                    dric.max_abs());
}

PointResidual cotton_weyl_residual(PointGeometry& geom) {
  require_dim(geom, 4, "Cotton-Weyl relation");
  const int n = geom.dim();
  const TensorValue c = frame_components(cotton_field(), geom);
  TensorValue div_w = frame_components(divergence(weyl_field(), 3), geom);
  for (std::size_t f = 0; f < div_w.size(); ++f) div_w[f] *= -(n - 2.0) / (n - 3.0);
  return difference(c, div_w);
}

PointResidual bach_divergence_residual(PointGeometry& geom) {
  require_dim(geom, 3, "Bach tensor");
  const int n = geom.dim();
  const TensorValue lhs = frame_components(divergence(bach_field(), 0), geom);
  const TensorValue c = frame_components(cotton_field(), geom);
  const TensorValue ric = frame_ricci(geom);
  TensorValue rhs(n, covariant_valence(1), geom.point());
  const double k = (n - 4.0) / ((n - 2.0) * (n - 2.0));
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) rhs(j) += k * c(j, a, b) * ric(a, b);
  return difference(lhs, rhs);
}

PointResidual bach_symmetry_residual(PointGeometry& geom) {
  require_dim(geom, 3, "Bach tensor");
  const int n = geom.dim();
  const TensorValue b = frame_components(bach_field(), geom);
  PointResidual out{TensorValue(n, covariant_valence(2), geom.point()), b.max_abs()};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.residual(i, j) = b(i, j) - b(j, i);
  if (n >= 4) {
    const double tr = trace(b);
    if (std::abs(tr) > out.residual.max_abs()) out.residual(0, 0) = tr;
  }
  return out;
}

PointResidual cubic_identity_residual(PointGeometry& geom) {
  require_dim(geom, 4, "cubic curvature identity");
  const int n = geom.dim();
  const TensorValue rm = frame_riemann(geom);
  const TensorValue ric = frame_ricci(geom);
  const TensorValue w = frame_components(weyl_field(), geom);
  const double r = trace(ric);
  TensorValue tr = ric;
  for (int i = 0; i < n; ++i) tr(i, i) -= r / n;

  double tr_cube = 0.0, ric_cube = 0.0, tr_sq = 0.0, w_rr = 0.0, rm_rr = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      tr_sq += tr(i, j) * tr(i, j);
      for (int k = 0; k < n; ++k) {
        tr_cube += tr(i, j) * tr(j, k) * tr(k, i);
        ric_cube += ric(i, j) * ric(j, k) * ric(i, k);
        for (int l = 0; l < n; ++l) {
          w_rr += w(i, j, k, l) * ric(i, k) * ric(j, l);
          rm_rr += rm(i, j, k, l) * ric(j, l) * ric(i, k);
        }
      }
    }
  const double terms[] = {n / (n - 2.0) * tr_cube, -w_rr, -ric_cube, rm_rr, r * tr_sq / (n - 1.0)};
  double sum = 0.0, scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  return scalar_residual(sum, scale);
}

PointResidual ricci_identity_residual(PointGeometry& geom) {
  const int n = geom.dim();
  const TensorValue d = frame_components(covariant_derivative(covariant_derivative(ricci_field())), geom);
  const TensorValue rm = frame_riemann(geom);
  const TensorValue ric = frame_ricci(geom);
  PointResidual out{TensorValue(n, covariant_valence(4), geom.point()), d.max_abs()};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double t1 = 0.0, t2 = 0.0;
          for (int s = 0; s < n; ++s) {
            t1 += rm(i, j, k, s) * ric(s, l);
            t2 += rm(i, j, l, s) * ric(k, s);
          }
          out.residual(i, j, k, l) = d(i, j, k, l) - d(j, i, k, l) - t1 - t2;
          out.scale = std::max({out.scale, std::abs(t1), std::abs(t2)});
        }
  return out;
}

std::optional<PointResidual> eigen_commutator_residual(PointGeometry& geom, double min_gap) {
  const int n = geom.dim();
  const RicciEigensystem eig = ricci_eigensystem(geom);
  for (int i = 0; i + 1 < n; ++i)
    if (eig.values[i + 1] - eig.values[i] < min_gap) return std::nullopt;

  const TensorValue d = frame_components(covariant_derivative(covariant_derivative(ricci_field())), geom);
  const TensorValue ric = frame_ricci(geom);
  double first = 0.0, second = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        first += d(i, j, i, k) * ric(j, k);
        second += d(j, i, i, k) * ric(j, k);
      }
  const TensorValue rm = to_frame(riemann_field().at(geom), frame_from_vectors(eig.vectors));
  double rhs = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double gap = eig.values[i] - eig.values[j];
      rhs += rm(i, j, i, j) * gap * gap;
    }
  const double scale = std::max({std::abs(first), std::abs(second), std::abs(rhs)});
  return scalar_residual(first - second - rhs, scale);
}

PointResidual n3_bach_div_residual(PointGeometry& geom) {
  if (geom.dim() != 3) throw ParameterError("this Bach divergence identity is specific to dimension 3");
  const int n = 3;
  const TensorValue lhs = frame_components(divergence(bach_field(), 1), geom);
  const TensorValue c = frame_components(cotton_field(), geom);
  const TensorValue ric = frame_ricci(geom);
  TensorValue rhs(n, covariant_valence(1), geom.point());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) rhs(i) -= ric(j, k) * c(i, j, k);
  return difference(lhs, rhs);
}

namespace {

PointGeometry safe_geometry(const MetricChart& chart, const Point& p, int order) {
  if (!chart.in_safe_domain(p)) throw DomainError("point outside the safe domain of '" + chart.name() + "'");
  return PointGeometry(chart, p, order);
}

}  // namespace

PointResidual cubic_identity_residual(const MetricChart& chart, const Point& p) {
  PointGeometry geom = safe_geometry(chart, p, 2);
  return cubic_identity_residual(geom);
}

PointResidual n3_bach_div_residual(const MetricChart& chart, const Point& p) {
  PointGeometry geom = safe_geometry(chart, p, 5);
  return n3_bach_div_residual(geom);
}

std::vector<std::string> universal_identity_names(int n) {
  std::vector<std::string> names = {"riemann_symmetry", "first_bianchi",   "metric_compatibility",
                                    "contracted_bianchi", "weyl_routes",   "weyl_trace_free",
                                    "cotton_routes"};
  if (n >= 4) names.push_back("cotton_weyl");
  names.push_back("bach_divergence");
  names.push_back("bach_symmetry");
  if (n >= 4) names.push_back("cubic_identity");
  names.push_back("ricci_identity");
  names.push_back("eigen_commutator");
  if (n == 3) names.push_back("n3_bach_div");
  return names;
}

int universal_identity_order() { return 5; }

std::vector<NamedResidual> universal_identities_at(PointGeometry& geom) {
  std::vector<NamedResidual> out;
  for (const auto& name : universal_identity_names(geom.dim())) {
    NamedResidual r{name, std::nullopt};
    if (name == "riemann_symmetry") r.value = riemann_symmetry_residual(geom);
    else if (name == "first_bianchi") r.value = first_bianchi_residual(geom);
    else if (name == "metric_compatibility") r.value = metric_compatibility_residual(geom);
    else if (name == "contracted_bianchi") r.value = contracted_bianchi_residual(geom);
    else if (name == "weyl_routes") r.value = weyl_routes_residual(geom);
    else if (name == "weyl_trace_free") r.value = weyl_trace_residual(geom);
    else if (name == "cotton_routes") r.value = cotton_routes_residual(geom);
    else if (name == "cotton_weyl") r.value = cotton_weyl_residual(geom);
    else if (name == "bach_divergence") r.value = bach_divergence_residual(geom);
    else if (name == "bach_symmetry") r.value = bach_symmetry_residual(geom);
    else if (name == "cubic_identity") r.value = cubic_identity_residual(geom);
    else if (name == "ricci_identity") r.value = ricci_identity_residual(geom);
    else if (name == "eigen_commutator") r.value = eigen_commutator_residual(geom);
    else if (name == "n3_bach_div") r.value = n3_bach_div_residual(geom);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace curvlab
