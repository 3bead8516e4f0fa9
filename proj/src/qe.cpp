#include "curvlab/qe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curvlab/sampling.hpp"

namespace curvlab {

Jet QEStructure::potential_jet(const Point& p, int order) const {
  return potential(chart.coordinates(p, order));
}

double QEStructure::potential_value(const Point& p) const { return potential_jet(p, 0).value(); }

TensorField potential_field(const QEStructure& s) { return scalar_function_field("u", s.potential); }

TensorField traceless_norm_sq_field() {
  return TensorField("traceless_ricci_norm_sq", Valence{}, 2, [](PointGeometry& geom, int o) {
    const int n = geom.dim();
    const JetTensor& ric = geom.ricci(o);
    const JetTensor& g = geom.metric(o);
    const JetTensor& ginv = geom.inverse_metric(o);
    const Jet& r = geom.scalar_curvature(o)[0];
    JetTensor tr = ric;
    for (std::size_t f = 0; f < tr.size(); ++f) tr[f].add_product(r, g[f], -1.0 / n);
    // mixed(i, b) = g^ia T_ab; |T|^2 = mixed(i, b) mixed(b, i)
    JetTensor mixed(n, {Slot::Contravariant, Slot::Covariant}, n, o);
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) mixed(i, b).add_product(ginv(i, a), tr(a, b));
    JetTensor out(n, Valence{}, n, o);
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < n; ++b) out[0].add_product(mixed(i, b), mixed(b, i));
    return out;
  });
}

namespace {

TensorField u_times_field(const QEStructure& s, const TensorField& inner) {
  return TensorField("u*" + inner.name(), inner.valence(), inner.consumption(),
                     [&s, inner](PointGeometry& geom, int o) {
                       JetTensor t = inner.evaluate(geom, o);
                       const Jet u = s.potential(geom.coordinates(o));
                       for (std::size_t f = 0; f < t.size(); ++f) t[f] = t[f] * u;
                       return t;
                     });
}

}  // namespace

QEPoint::QEPoint(const QEStructure& s, const Point& p, int order)
    : s_(&s), geom_([&]() -> PointGeometry {
        if (!s.chart.in_safe_domain(p))
          throw DomainError("point outside the safe domain of '" + s.chart.name() + "'");
        return PointGeometry(s.chart, p, order);
      }()) {}

TensorValue QEPoint::frame_value(const TensorField& f) { return to_frame(f.at(geom_), geom_.frame()); }

double QEPoint::u() {
  if (!u_) u_ = s_->potential(geom_.coordinates(0)).value();
  return *u_;
}

const TensorValue& QEPoint::du() {
  if (!du_) du_ = frame_value(covariant_derivative(potential_field(*s_)));
  return *du_;
}

const TensorValue& QEPoint::hess_u() {
  if (!hess_u_) hess_u_ = frame_value(covariant_derivative(covariant_derivative(potential_field(*s_))));
  return *hess_u_;
}

const TensorValue& QEPoint::ricci() {
  if (!ricci_) ricci_ = frame_value(ricci_field());
  return *ricci_;
}

double QEPoint::scalar() {
  if (!scalar_) scalar_ = geom_.scalar_curvature(0)[0].value();
  return *scalar_;
}

const TensorValue& QEPoint::dscalar() {
  if (!dscalar_) dscalar_ = frame_value(covariant_derivative(scalar_curvature_field()));
  return *dscalar_;
}

const TensorValue& QEPoint::hess_scalar() {
  if (!hess_scalar_)
    hess_scalar_ = frame_value(covariant_derivative(covariant_derivative(scalar_curvature_field())));
  return *hess_scalar_;
}

const TensorValue& QEPoint::riemann() {
  if (!riemann_) riemann_ = frame_value(riemann_field());
  return *riemann_;
}

const TensorValue& QEPoint::weyl() {
  if (!weyl_) weyl_ = frame_value(weyl_field());
  return *weyl_;
}

const TensorValue& QEPoint::cotton() {
  if (!cotton_) cotton_ = frame_value(cotton_field());
  return *cotton_;
}

const TensorValue& QEPoint::dricci() {
  if (!dricci_) dricci_ = frame_value(covariant_derivative(ricci_field()));
  return *dricci_;
}

const TensorValue& QEPoint::bach() {
  if (!bach_) bach_ = frame_value(bach_field());
  return *bach_;
}

const TensorValue& QEPoint::traceless_ricci() {
  if (!traceless_) {
    TensorValue t = ricci();
    const int n = dim();
    for (int i = 0; i < n; ++i) t(i, i) -= scalar() / n;
    traceless_ = std::move(t);
  }
  return *traceless_;
}

double QEPoint::traceless_norm_sq() {
  if (!tnorm_) tnorm_ = traceless_norm_sq_field().at(geom_)[0];
  return *tnorm_;
}

const TensorValue& QEPoint::d_traceless_norm_sq() {
  if (!dtnorm_) dtnorm_ = frame_value(covariant_derivative(traceless_norm_sq_field()));
  return *dtnorm_;
}

double QEPoint::div_u_grad_traceless_norm_sq() {
  if (!div_u_grad_) {
    const TensorField flux = u_times_field(*s_, covariant_derivative(traceless_norm_sq_field()));
    div_u_grad_ = divergence(flux, 0).at(geom_)[0];
  }
  return *div_u_grad_;
}

const TensorValue& QEPoint::radial_weyl() {
  if (!radial_weyl_) {
    const int n = dim();
    const TensorValue& w = weyl();
    const TensorValue& d = du();
    TensorValue r(n, covariant_valence(3), geom_.point());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += w(i, j, k, l) * d(l);
          r(i, j, k) = s;
        }
    radial_weyl_ = std::move(r);
  }
  return *radial_weyl_;
}

namespace {

void require_interior(QEPoint& q) {
  if (!(q.u() > 0.0))
    throw InvariantViolation("potential u = " + std::to_string(q.u()) + " is not positive at an interior point");
}

TensorValue scalar_value(double v, const Point& p) {
  TensorValue t(0, Valence{}, p);
  t[0] = v;
  return t;
}

double max_abs(double a, double b) { return std::max(std::abs(a), std::abs(b)); }

}  // namespace

PointResidual qe_residual(QEPoint& q) {
  require_interior(q);
  const int n = q.dim();
  const TensorValue& h = q.hess_u();
  const TensorValue& ric = q.ricci();
  PointResidual out{TensorValue(n, covariant_valence(2), q.geometry().point()), 0.0};
  const double c = q.u() / q.m();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double rhs = c * (ric(i, j) - (i == j ? q.lambda() : 0.0));
      out.residual(i, j) = h(i, j) - rhs;
      out.scale = std::max(out.scale, max_abs(h(i, j), rhs));
    }
  return out;
}

PointResidual trace_residual(QEPoint& q) {
  require_interior(q);
  const int n = q.dim();
  double lap = 0.0;
  for (int i = 0; i < n; ++i) lap += q.hess_u()(i, i);
  const double rhs = q.u() / q.m() * (q.scalar() - q.lambda() * n);
  return PointResidual{scalar_value(lap - rhs, q.geometry().point()), max_abs(lap, rhs)};
}

PointResidual traceless_residual(QEPoint& q) {
  require_interior(q);
  const int n = q.dim();
  const TensorValue& h = q.hess_u();
  double lap = 0.0;
  for (int i = 0; i < n; ++i) lap += h(i, i);
  const TensorValue& tr = q.traceless_ricci();
  PointResidual out{TensorValue(n, covariant_valence(2), q.geometry().point()), 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double lhs = q.u() * tr(i, j);
      const double rhs = q.m() * (h(i, j) - (i == j ? lap / n : 0.0));
      out.residual(i, j) = lhs - rhs;
      out.scale = std::max(out.scale, max_abs(lhs, rhs));
    }
  return out;
}

double scalar_bound_margin(QEPoint& q) {
  const double n = q.dim();
  return q.scalar() - n * (n - 1.0) * q.lambda() / (q.m() + n - 1.0);
}

IdentityResidual scalar_bound_check(const QEStructure& s, const std::vector<Point>& points, double tolerance) {
  IdentityResidual r;
  r.name = "scalar_bound";
  r.tolerance = tolerance;
  r.observed = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    QEPoint q(s, p, 2);
    r.observed = std::min(r.observed, scalar_bound_margin(q));
    ++r.points_checked;
  }
  r.max_abs = r.max_rel = std::max(0.0, -r.observed);
  r.pass = r.observed >= -tolerance;
  return r;
}

TensorValue t_tensor(QEPoint& q) {
  const int n = q.dim();
  if (n < 3) throw ParameterError("T tensor requires dimension >= 3");
  const double m = q.m(), lambda = q.lambda(), u = q.u(), r = q.scalar();
  const TensorValue& ric = q.ricci();
  const TensorValue& du = q.du();
  const TensorValue& dr = q.dscalar();
  const double a1 = (m + n - 2.0) / (n - 2.0);
  const double a2 = m / (n - 2.0);
  const double a3 = ((n - 1.0) * (n - 2.0) * lambda + m * r) / ((n - 1.0) * (n - 2.0));
  const double a4 = u / (2.0 * (n - 1.0));
  std::vector<double> ric_du(n, 0.0);  // R_il u_l
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) ric_du[i] += ric(i, l) * du(l);
  TensorValue t(n, covariant_valence(3), q.geometry().point());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double dik = i == k ? 1.0 : 0.0, djk = j == k ? 1.0 : 0.0;
        t(i, j, k) = a1 * (ric(i, k) * du(j) - ric(j, k) * du(i)) +
                     a2 * (ric_du[j] * dik - ric_du[i] * djk) +
                     a3 * (du(i) * djk - du(j) * dik) - a4 * (dr(i) * djk - dr(j) * dik);
      }
  return t;
}

PointResidual lemma_cwt_residual(QEPoint& q) {
  const int n = q.dim();
  const TensorValue t = t_tensor(q);
  const TensorValue& c = q.cotton();
  const TensorValue& rw = q.radial_weyl();
  PointResidual out{TensorValue(n, covariant_valence(3), q.geometry().point()), 0.0};
  for (std::size_t f = 0; f < t.size(); ++f) {
    const double uc = q.u() * c[f], mw = q.m() * rw[f];
    out.residual[f] = uc - mw - t[f];
    out.scale = std::max({out.scale, std::abs(uc), std::abs(mw), std::abs(t[f])});
  }
  return out;
}

PointResidual contraction_identity_residual(QEPoint& q) { return contraction_identity_residual(q, 1.0); }

PointResidual contraction_identity_residual(QEPoint& q, double t_multiplier) {
  const int n = q.dim();
  const TensorValue t = t_tensor(q);
  const TensorValue& c = q.cotton();
  const TensorValue& du = q.du();
  const TensorValue& ric = q.ricci();
  double first = 0.0, ct = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        first += c(i, j, k) * du(i) * ric(j, k);
        ct += c(i, j, k) * t(i, j, k) * t_multiplier;
      }
  const double second = (n - 2.0) / (2.0 * (q.m() + n - 2.0)) * ct;
  return PointResidual{scalar_value(first + second, q.geometry().point()), max_abs(first, second)};
}

PointResidual bochner_residual(QEPoint& q) {
  const int n = q.dim();
  if (n < 3) throw ParameterError("Bochner formula requires dimension >= 3");
  const double m = q.m(), u = q.u(), r = q.scalar();
  const TensorValue& tr = q.traceless_ricci();
  const TensorValue& dric = q.dricci();
  const TensorValue& dr = q.dscalar();
  const TensorValue& hr = q.hess_scalar();
  const TensorValue& du = q.du();
  const TensorValue& c = q.cotton();
  const TensorValue& w = q.weyl();
  const TensorValue& rw = q.radial_weyl();
  const TensorValue& dnorm = q.d_traceless_norm_sq();

  double grad_tr_sq = 0.0;  // |nabla traceless Ric|^2
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double v = dric(k, i, j) - (i == j ? dr(k) / n : 0.0);
        grad_tr_sq += v * v;
      }
  double c_sq = 0.0, c_rw = 0.0;
  for (std::size_t f = 0; f < c.size(); ++f) {
    c_sq += c[f] * c[f];
    c_rw += c[f] * rw[f];
  }
  double hr_tr = 0.0, tr_du_dr = 0.0, tr_sq = 0.0, tr_cube = 0.0, w_tr_tr = 0.0, dnorm_du = 0.0;
  for (int i = 0; i < n; ++i) {
    dnorm_du += dnorm(i) * du(i);
    for (int j = 0; j < n; ++j) {
      hr_tr += hr(i, j) * tr(i, j);
      tr_du_dr += tr(i, j) * du(i) * dr(j);
      tr_sq += tr(i, j) * tr(i, j);
      for (int k = 0; k < n; ++k) {
        tr_cube += tr(i, j) * tr(j, k) * tr(k, i);
        for (int p = 0; p < n; ++p) w_tr_tr += w(i, k, j, p) * tr(i, j) * tr(k, p);
      }
    }
  }

  const double lhs = 0.5 * q.div_u_grad_traceless_norm_sq();
  const double terms[] = {
      u * grad_tr_sq,
      m * (n - 2.0) * u / (m + n - 2.0) * c_sq,
      u * hr_tr,
      (m + 2.0 * n - 2.0) / (n - 1.0) * tr_du_dr,
      (m - 1.0) / 2.0 * dnorm_du,
      2.0 * r * u / (n - 1.0) * tr_sq,
      2.0 * n * u / (n - 2.0) * tr_cube,
      -2.0 * u * w_tr_tr,
      -m * m * (n - 2.0) / (m + n - 2.0) * c_rw,
  };
  double rhs = 0.0, scale = std::abs(lhs);
  for (double t : terms) {
    rhs += t;
    scale = std::max(scale, std::abs(t));
  }
  return PointResidual{scalar_value(lhs - rhs, q.geometry().point()), scale};
}

PointResidual bach_from_cotton_qe_residual(QEPoint& q) {
  const int n = q.dim();
  if (n < 4) throw ParameterError("Bach-Cotton relation requires dimension >= 4");
  const double radial = q.radial_weyl().max_abs();
  if (radial >= 1e-8)
    throw HypothesisViolation("radial Weyl curvature " + std::to_string(radial) + " is not zero");
  const TensorValue& b = q.bach();
  const TensorValue& c = q.cotton();
  const TensorValue& du = q.du();
  const double k = q.m() * (n - 3.0) / ((n - 2.0) * (n - 2.0));
  PointResidual out{TensorValue(n, covariant_valence(2), q.geometry().point()), 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double cdu = 0.0;
      for (int l = 0; l < n; ++l) cdu += c(j, l, i) * du(l);
      const double lhs = q.u() * b(i, j), rhs = k * cdu;
      out.residual(i, j) = lhs - rhs;
      out.scale = std::max(out.scale, max_abs(lhs, rhs));
    }
  return out;
}

PointResidual static_condition_residual(QEPoint& q) {
  double lap = 0.0;
  for (int i = 0; i < q.dim(); ++i) lap += q.hess_u()(i, i);
  const double rhs = -q.lambda() * q.u();
  return PointResidual{scalar_value(lap - rhs, q.geometry().point()), max_abs(lap, rhs)};
}

double traceless_norm_formula(double n, double m, double lambda, double scalar) {
  if (m == 1.0) throw ParameterError("traceless Ricci norm formula requires m != 1");
  return -(m + n - 1.0) / (n * (m - 1.0)) * (scalar - n * lambda) *
         (scalar - n * (n - 1.0) * lambda / (m + n - 1.0));
}

TracelessNormSample traceless_norm_sample(QEPoint& q) {
  TracelessNormSample s;
  s.scalar = q.scalar();
  double direct = 0.0;
  const TensorValue& tr = q.traceless_ricci();
  for (std::size_t f = 0; f < tr.size(); ++f) direct += tr[f] * tr[f];
  s.direct = direct;
  s.formula = traceless_norm_formula(q.dim(), q.m(), q.lambda(), s.scalar);
  return s;
}

IdentityResidual traceless_norm_formula_check(const std::vector<TracelessNormSample>& samples, double m,
                                              double tolerance) {
  if (m == 1.0) throw ParameterError("traceless Ricci norm formula requires m != 1");
  double mean = 0.0;
  for (const auto& s : samples) mean += s.scalar;
  mean /= std::max<std::size_t>(samples.size(), 1);
  double var = 0.0;
  for (const auto& s : samples) var += (s.scalar - mean) * (s.scalar - mean);
  const double spread = std::sqrt(var / std::max<std::size_t>(samples.size(), 1));
  if (spread > 1e-9 * std::max(1.0, std::abs(mean)))
    throw HypothesisViolation("scalar curvature is not constant over the samples (stddev " +
                              std::to_string(spread) + ")");
  std::vector<PointResidual> residuals;
  for (const auto& s : samples) {
    TensorValue t(0, Valence{});
    t[0] = s.direct - s.formula;
    residuals.push_back({std::move(t), max_abs(s.direct, s.formula)});
  }
  IdentityResidual r = aggregate("traceless_norm", residuals, tolerance);
  if (!samples.empty()) r.observed = samples.front().direct;
  return r;
}

IdentityResidual traceless_norm_formula_check(const QEStructure& s, const std::vector<Point>& points,
                                              double tolerance) {
  if (s.m == 1.0) throw ParameterError("traceless Ricci norm formula requires m != 1");
  std::vector<TracelessNormSample> samples;
  for (const auto& p : points) {
    QEPoint q(s, p, 2);
    samples.push_back(traceless_norm_sample(q));
  }
  return traceless_norm_formula_check(samples, s.m, tolerance);
}

int probe_order(int n) { return n >= 3 ? 6 : 2; }

double min_sectional_curvature(PointGeometry& geom, int planes, std::uint64_t seed) {
  const int n = geom.dim();
  std::mt19937_64 rng(seed);
  double lowest = std::numeric_limits<double>::infinity();
  int done = 0;
  while (done < planes) {
    std::vector<double> v1(n), v2(n);
    for (int i = 0; i < n; ++i) {
      v1[i] = uniform(rng, -1.0, 1.0);
      v2[i] = uniform(rng, -1.0, 1.0);
    }
    try {
      lowest = std::min(lowest, sectional_curvature(geom, v1, v2));
      ++done;
    } catch (const DomainError&) {
      // nearly parallel pair; draw again
    }
  }
  return lowest;
}

ProbeSample probe_point(QEPoint& q, const ProbeOptions& options, std::uint64_t point_seed) {
  const int n = q.dim();
  ProbeSample s;
  PointGeometry& geom = q.geometry();
  s.scalar = q.scalar();
  s.min_sectional = min_sectional_curvature(geom, options.planes_per_point, point_seed);
  if (n >= 3) {
    s.radial_weyl = q.radial_weyl().max_abs();
    s.bach = q.bach().max_abs();
  }
  if (n >= 4) s.div4_weyl = std::abs(weyl_fourth_divergence_field().at(geom)[0]);
  if (n == 3) s.div3_cotton = std::abs(cotton_third_divergence_field().at(geom)[0]);
  return s;
}

std::vector<IdentityResidual> summarize_probe(const std::vector<ProbeSample>& samples, int n,
                                              const ProbeOptions& options) {
  const int count = static_cast<int>(samples.size());
  auto max_stat = [&](const char* name, double tol, double ProbeSample::*field) {
    IdentityResidual r;
    r.name = name;
    r.tolerance = tol;
    r.points_checked = count;
    for (const auto& s : samples) r.max_abs = std::max(r.max_abs, s.*field);
    r.max_rel = r.observed = r.max_abs;
    r.pass = r.max_abs <= tol;
    return r;
  };
  std::vector<IdentityResidual> out;
  if (n >= 3) out.push_back(max_stat("radial_weyl", options.radial_weyl_tol, &ProbeSample::radial_weyl));
  if (n >= 4) out.push_back(max_stat("div4_weyl", options.div4_weyl_tol, &ProbeSample::div4_weyl));
  if (n == 3) out.push_back(max_stat("div3_cotton", options.div3_cotton_tol, &ProbeSample::div3_cotton));

  {
    IdentityResidual r;
    r.name = "constant_scalar";
    r.tolerance = options.constant_scalar_tol;
    r.points_checked = count;
    double mean = 0.0;
    for (const auto& s : samples) mean += s.scalar;
    mean /= std::max(count, 1);
    double var = 0.0;
    for (const auto& s : samples) {
      var += (s.scalar - mean) * (s.scalar - mean);
      r.max_abs = std::max(r.max_abs, std::abs(s.scalar - mean));
    }
    r.observed = r.max_rel = std::sqrt(var / std::max(count, 1));
    r.pass = r.observed <= r.tolerance;
    out.push_back(r);
  }
  {
    IdentityResidual r;
    r.name = "nonneg_sectional";
    r.tolerance = options.sectional_tol;
    r.points_checked = count;
    r.observed = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) r.observed = std::min(r.observed, s.min_sectional);
    r.max_abs = r.max_rel = std::max(0.0, -r.observed);
    r.pass = r.observed >= -r.tolerance;
    out.push_back(r);
  }
  if (n >= 3) out.push_back(max_stat("bach_flat", options.bach_tol, &ProbeSample::bach));
  return out;
}

std::vector<IdentityResidual> condition_probe(const QEStructure& s, const std::vector<Point>& points,
                                              const ProbeOptions& options) {
  std::vector<ProbeSample> samples;
  const int n = s.chart.dim();
  for (std::size_t k = 0; k < points.size(); ++k) {
    QEPoint q(s, points[k], probe_order(n));
    samples.push_back(probe_point(q, options, mix_seed(options.seed, k)));
  }
  return summarize_probe(samples, n, options);
}

}  // namespace curvlab
