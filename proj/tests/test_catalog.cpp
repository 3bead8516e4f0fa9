#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvlab/catalog.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/sampling.hpp"

using namespace curvlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct NamedSpec {
  std::string name;
  WarpedSpec spec;
};

std::vector<NamedSpec> oracle_specs() {
  std::vector<NamedSpec> out;
  WarpedSpec a;  // exampleA (2, 2, 2)
  a.p = 2;
  a.q = 2;
  a.phi = [](const Jet& r) { return sin(r); };
  a.psi = [](const Jet& r) { return Jet::constant(0.5, r.n_vars(), r.max_order()); };
  a.r_lo = 0.0;
  a.r_hi = kPi / 2;
  out.push_back({"exampleA", a});

  WarpedSpec g;  // generic doubly warped
  g.p = 2;
  g.q = 1;
  g.phi = [](const Jet& r) { return r + 0.3 * r * r; };
  g.psi = [](const Jet& r) { return 1.0 + 0.2 * cos(r); };
  g.r_lo = 0.2;
  g.r_hi = 2.0;
  out.push_back({"generic", g});

  WarpedSpec e;
  e.p = 1;
  e.q = 2;
  e.phi = [](const Jet& r) { return exp(0.5 * r); };
  e.psi = [](const Jet& r) { return sqrt(1.0 + r); };
  e.r_lo = 0.1;
  e.r_hi = 1.5;
  out.push_back({"exp_sqrt", e});
  return out;
}

SampleBox box_for(const WarpedSpec& s) {
  SampleBox b{{s.r_lo + 0.1}, {s.r_hi - 0.1}};
  auto fiber = [&](int k) {
    for (int j = 0; j < k; ++j) {
      b.lo.push_back(j + 1 == k ? 0.0 : 0.4);
      b.hi.push_back(j + 1 == k ? 2 * kPi : kPi - 0.4);
    }
  };
  fiber(s.p);
  fiber(s.q);
  return b;
}

double rel_diff(const TensorValue& a, const TensorValue& b) {
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    s = std::max({s, std::abs(a[i]), std::abs(b[i])});
  }
  return s > 1e-6 ? d / s : d;
}

TensorValue engine_hessian_r(const MetricChart& c, const Point& p) {
  TensorField r = scalar_function_field("r", [](CoordinateJets x) { return x[0]; });
  PointGeometry geom(c, p, 2);
  return covariant_derivative(covariant_derivative(r)).at(geom);
}

}  // namespace

TEST(WarpedOracle, MatchesEngineOnThirtySamples) {
  int samples = 0;
  double worst = 0.0;
  for (const auto& [name, spec] : oracle_specs()) {
    MetricChart c = warped_chart(spec, name);
    for (const Point& p : sample_points(box_for(spec), 10, 17)) {
      worst = std::max(worst, rel_diff(ricci(c, p), warped_oracle_ricci_tensor(spec, p)));
      worst = std::max(worst, rel_diff(engine_hessian_r(c, p), warped_oracle_hessian_r_tensor(spec, p)));
      ++samples;
    }
  }
  EXPECT_EQ(samples, 30);
  EXPECT_LT(worst, 1e-10);
}

TEST(WarpedOracle, ExampleAEigenvalues) {
  WarpedSpec s = oracle_specs()[0].spec;
  for (double r : {0.3, 0.8, 1.4}) {
    WarpedRicci ric = warped_oracle_ricci(s, r);
    EXPECT_NEAR(ric.radial, 2.0, 1e-12);
    EXPECT_NEAR(ric.fiber_p, 2.0, 1e-12);
    EXPECT_NEAR(ric.fiber_q, 4.0, 1e-12);
    WarpedHessian h = warped_oracle_hessian_r(s, r);
    EXPECT_NEAR(h.fiber_p, std::sin(r) * std::cos(r), 1e-14);
    EXPECT_EQ(h.fiber_q, 0.0);
  }
}

TEST(WarpedOracle, ProductAndFlatCone) {
  WarpedSpec prod;
  prod.p = 3;
  prod.q = 2;
  prod.phi = [](const Jet& r) { return Jet::constant(2.0, r.n_vars(), r.max_order()); };
  prod.psi = [](const Jet& r) { return Jet::constant(0.5, r.n_vars(), r.max_order()); };
  WarpedRicci ric = warped_oracle_ricci(prod, 0.5);
  EXPECT_NEAR(ric.radial, 0.0, 1e-15);
  EXPECT_NEAR(ric.fiber_p, 2.0 / 4.0, 1e-15);
  EXPECT_NEAR(ric.fiber_q, 1.0 / 0.25, 1e-15);
  WarpedHessian h = warped_oracle_hessian_r(prod, 0.5);
  EXPECT_EQ(h.fiber_p, 0.0);
  EXPECT_EQ(h.fiber_q, 0.0);

  WarpedSpec cone;
  cone.p = 3;
  cone.phi = [](const Jet& r) { return r; };
  cone.r_hi = 10.0;
  ric = warped_oracle_ricci(cone, 1.7);
  EXPECT_NEAR(ric.radial, 0.0, 1e-15);
  EXPECT_NEAR(ric.fiber_p, 0.0, 1e-15);
  EXPECT_NEAR(warped_oracle_hessian_r(cone, 1.7).fiber_p, 1.7, 1e-15);

  MetricChart c = warped_chart(cone, "cone");
  EXPECT_LT(ricci(c, Point{{1.7, 1.0, 2.0, 0.3}}).max_abs(), 1e-12);
  EXPECT_THROW(warped_oracle_ricci(cone, -1.0), DomainError);
}

TEST(WarpedSpec, JetsMatchFiniteDifferences) {
  for (const auto& [name, spec] : oracle_specs()) {
    for (const RadialFunction* f : {&spec.phi, &spec.psi}) {
      const double r = 0.5 * (spec.r_lo + spec.r_hi), h = 1e-4;
      auto v = [&](double x) { return radial_derivatives(*f, x).value; };
      RadialDerivatives d = radial_derivatives(*f, r);
      EXPECT_NEAR(d.d1, (v(r + h) - v(r - h)) / (2 * h), 1e-6) << name;
      EXPECT_NEAR(d.d2, (v(r + h) - 2 * v(r) + v(r - h)) / (h * h), 1e-6) << name;
    }
  }
}

TEST(Hemisphere, Structure) {
  CatalogEntry e = build_hemisphere(4, 3.0);
  EXPECT_EQ(e.chart.dim(), 4);
  EXPECT_DOUBLE_EQ(e.qe->lambda, 6.0);
  EXPECT_NEAR(e.qe->potential_value(Point{{kPi / 2, 1.0, 1.0, 1.0}}), 0.0, 1e-15);
  for (const Point& p : sample_points(e.box, 10, 2)) {
    EXPECT_GT(p[0], 0.05);
    EXPECT_LT(p[0], kPi / 2 - 0.1 + 1e-15);
    EXPECT_GT(e.qe->potential_value(p), 0.0);
    TensorValue ric = ricci(e.chart, p);
    Matrix g = e.chart.metric_value(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(ric(i, j), 3.0 * g(i, j), 1e-10);
    EXPECT_LT(weyl(e.chart, p).max_abs(), 1e-10);
    EXPECT_LT(cotton(e.chart, p).max_abs(), 1e-10);
    EXPECT_LT(bach(e.chart, p).max_abs(), 1e-9);
  }
}

TEST(Cylinder, Structure) {
  CatalogEntry e = build_cylinder(4, 2.0, 2.0);
  const double length = kPi * std::sqrt(2.0 / 2.0);
  EXPECT_NEAR(e.qe->potential_value(Point{{0.0, 1.0, 1.0, 1.0}}), 0.0, 1e-15);
  EXPECT_NEAR(e.qe->potential_value(Point{{length, 1.0, 1.0, 1.0}}), 0.0, 1e-15);
  for (const Point& p : sample_points(e.box, 10, 2)) {
    EXPECT_GT(e.qe->potential_value(p), 0.0);
    EXPECT_NEAR(scalar_curvature(e.chart, p), 3.0 * 2.0, 1e-10);
    EXPECT_LT(weyl(e.chart, p).max_abs(), 1e-9);
  }
  EXPECT_THROW(build_cylinder(4, 2.0, 0.0), ParameterError);
  EXPECT_THROW(build_cylinder(2, 2.0, 1.0), ParameterError);
}

TEST(ExampleA, Triples) {
  struct Triple {
    int p, q;
    double m;
  };
  for (Triple t : {Triple{2, 2, 2.0}, Triple{2, 3, 1.5}, Triple{3, 2, 2.0}}) {
    CatalogEntry e = build_example_A(t.p, t.q, t.m);
    const int n = t.p + t.q + 1;
    ASSERT_EQ(e.chart.dim(), n);
    for (const Point& p : sample_points(e.box, 5, 4)) {
      QEPoint q(*e.qe, p, 2);
      EXPECT_LT(qe_residual(q).rel(), 1e-10);
      RicciEigensystem es = ricci_eigensystem(e.chart, p);
      int low = 0, high = 0;
      for (double v : es.values) {
        if (std::abs(v - t.p) < 1e-9) ++low;
        if (std::abs(v - (t.p + t.m)) < 1e-9) ++high;
      }
      EXPECT_EQ(low, t.p + 1);
      EXPECT_EQ(high, t.q);
      EXPECT_NEAR(scalar_curvature(e.chart, p), t.p * (t.p + 1) + t.q * (t.p + t.m), 1e-9);
    }
  }
}

TEST(ExampleA, FiberHessianVanishes) {
  CatalogEntry e = build_example_A(2, 2, 2.0);
  for (const Point& p : sample_points(e.box, 5, 6)) {
    QEPoint q(*e.qe, p, 2);
    const TensorValue& h = q.hess_u();
    EXPECT_NEAR(h(3, 3), 0.0, 1e-12);
    EXPECT_NEAR(h(4, 4), 0.0, 1e-12);
    EXPECT_NEAR(h(3, 4), 0.0, 1e-12);
  }
}

TEST(ExampleA, Rejections) {
  EXPECT_THROW(build_example_A(2, 1, 2.0), ParameterError);
  EXPECT_THROW(build_example_A(0, 2, 2.0), ParameterError);
  EXPECT_THROW(build_example_A(2, 2, -1.0), ParameterError);
}

TEST(ExampleA, Declarations) {
  CatalogEntry e = build_example_A(2, 2, 2.0);
  EXPECT_TRUE(e.expected_pass("qe_equation"));
  EXPECT_TRUE(e.expected_pass("div4_weyl"));
  EXPECT_TRUE(e.expected_pass("nonneg_sectional"));
  EXPECT_FALSE(e.expected_pass("radial_weyl"));
  EXPECT_FALSE(e.expected_pass("bach_flat"));
}

TEST(RandomChart, AmplitudeZeroIsFlat) {
  MetricChart c = build_random_analytic_chart(4, 9, 0.0);
  EXPECT_LT(riemann(c, Point{{0.1, 0.2, 0.3, 0.4}}).max_abs(), 1e-15);
}

TEST(RandomChart, Deterministic) {
  Point p{{0.3, 0.1, 0.7, 0.2, 0.9}};
  JetTensor a = build_random_analytic_chart(5, 42, 0.2).evaluate(p, 3);
  JetTensor b = build_random_analytic_chart(5, 42, 0.2).evaluate(p, 3);
  JetTensor c = build_random_analytic_chart(5, 43, 0.2).evaluate(p, 3);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t r = 0; r < a[i].coeffs().size(); ++r) {
      EXPECT_EQ(a[i][r], b[i][r]);
      differs |= a[i][r] != c[i][r];
    }
  EXPECT_TRUE(differs);
}

TEST(RandomChart, PositiveDefiniteOnUnitBox) {
  for (int n = 3; n <= 6; ++n) {
    MetricChart c = build_random_analytic_chart(n, 5, 0.3);
    SampleBox box{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
    for (const Point& p : sample_points(box, 20, 1)) {
      SymmetricEigen e = jacobi_eigen(c.metric_value(p));
      EXPECT_GT(e.values.front(), 0.7 - 1e-12);
    }
  }
}

TEST(RandomChart, Rejections) {
  EXPECT_THROW(build_random_analytic_chart(7, 1, 0.2), ParameterError);
  EXPECT_THROW(build_random_analytic_chart(4, 1, 0.5), ParameterError);
}

TEST(BuildEntry, ByName) {
  EntryParams params;
  for (const std::string& name : catalog_names()) EXPECT_EQ(build_entry(name, params).name, name);
  EXPECT_THROW(build_entry("torus", params), ParameterError);
  params.q = 1;
  EXPECT_THROW(build_entry("exampleA", params), ParameterError);
}
