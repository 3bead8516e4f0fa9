#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvlab/catalog.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/identities.hpp"

using namespace curvlab;

namespace {

constexpr double kPi = std::numbers::pi;

Point pt(std::initializer_list<double> c) { return Point{std::vector<double>(c)}; }

// S^2 x S^2 with coordinates (a1, a2, b1, b2).
MetricChart product_s2s2() {
  return MetricChart::diagonal("s2xs2", 4, [](CoordinateJets x) {
    Jet one = Jet::constant(1.0, x[0].n_vars(), x[0].max_order());
    Jet sa = sin(x[0]), sb = sin(x[2]);
    return std::vector<Jet>{one, sa * sa, one, sb * sb};
  });
}

MetricChart scaled(const MetricChart& c, double s) {
  return MetricChart("scaled", c.dim(), [c, s](CoordinateJets x) {
    Point p;
    for (const Jet& xi : x) p.coords.push_back(xi.value());
    JetTensor g = c.evaluate(p, x[0].max_order());
    std::vector<Jet> out;
    for (std::size_t i = 0; i < g.size(); ++i) out.push_back(g[i] * s);
    return out;
  });
}

double max_abs_diff(const TensorValue& a, const TensorValue& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Christoffel, FlatIsZero) {
  EXPECT_LT(christoffel(flat_chart(3), pt({0.1, 0.2, 0.3})).max_abs(), 1e-15);
}

TEST(Christoffel, TwoSphere) {
  const double t = kPi / 3;
  TensorValue g = christoffel(round_sphere_chart(2), pt({t, 0.4}));
  EXPECT_NEAR(g(0, 1, 1), -std::sqrt(3.0) / 4.0, 1e-14);
  EXPECT_NEAR(g(1, 0, 1), 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(g(1, 1, 0), 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(g(0, 0, 0), 0.0, 1e-15);
}

TEST(Christoffel, ScaleInvariant) {
  MetricChart s = round_sphere_chart(3);
  Point p = pt({0.8, 1.1, 0.3});
  EXPECT_LT(max_abs_diff(christoffel(s, p), christoffel(scaled(s, 7.5), p)), 1e-13);
}

TEST(Christoffel, SingularMetric) {
  MetricChart bad = MetricChart::diagonal("bad", 2, [](CoordinateJets x) {
    return std::vector<Jet>{Jet::constant(1.0, x[0].n_vars(), x[0].max_order()),
                            Jet::constant(0.0, x[0].n_vars(), x[0].max_order())};
  });
  EXPECT_THROW(christoffel(bad, pt({0.0, 0.0})), SingularMetricError);
}

TEST(Riemann, FlatIsZero) {
  EXPECT_LT(riemann(flat_chart(4), pt({0.1, 0.2, 0.3, 0.4})).max_abs(), 1e-15);
}

TEST(Riemann, ThreeSphereConstantCurvature) {
  MetricChart s = round_sphere_chart(3);
  Point p = pt({0.9, 2.0, 1.3});
  TensorValue r = riemann(s, p);
  Matrix g = s.metric_value(p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          EXPECT_NEAR(r(i, j, k, l), g(i, k) * g(j, l) - g(i, l) * g(j, k), 1e-10);
}

TEST(Riemann, ProductBlockStructure) {
  MetricChart c = product_s2s2();
  TensorValue r = riemann(c, pt({1.0, 0.5, 2.0, 0.1}));
  auto block = [](int i) { return i / 2; };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          if (block(i) != block(j) || block(k) != block(l) || block(i) != block(k))
            EXPECT_NEAR(r(i, j, k, l), 0.0, 1e-14);
  EXPECT_GT(std::abs(r(0, 1, 0, 1)), 0.1);
}

TEST(Riemann, SymmetriesOnRandomMetrics) {
  for (int n = 3; n <= 5; ++n)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      MetricChart c = build_random_analytic_chart(n, seed, 0.25);
      PointGeometry geom(c, Point{std::vector<double>(n, 0.4)}, 2);
      EXPECT_LT(riemann_symmetry_residual(geom).rel(), 1e-10);
      EXPECT_LT(first_bianchi_residual(geom).rel(), 1e-10);
    }
}

TEST(Ricci, FourSphere) {
  MetricChart s = round_sphere_chart(4);
  Point p = pt({0.7, 1.2, 2.1, 0.5});
  TensorValue ric = ricci(s, p);
  Matrix g = s.metric_value(p);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(ric(i, j), 3.0 * g(i, j), 1e-10);
  EXPECT_NEAR(scalar_curvature(s, p), 12.0, 1e-10);
}

TEST(Ricci, FlatIsZero) {
  EXPECT_LT(ricci(flat_chart(3), pt({0.0, 0.0, 0.0})).max_abs(), 1e-15);
  EXPECT_EQ(scalar_curvature(flat_chart(3), pt({0.0, 0.0, 0.0})), 0.0);
}

TEST(Ricci, UnsafePointRejected) {
  EXPECT_THROW(ricci(round_sphere_chart(3), pt({0.0, 1.0, 1.0})), DomainError);
}

TEST(Ricci, WrongPointSize) {
  EXPECT_THROW(ricci(flat_chart(3), pt({0.0, 0.0})), ShapeError);
}

TEST(Sectional, RoundSphere) {
  MetricChart s = round_sphere_chart(4);
  Point p = pt({0.7, 1.2, 2.1, 0.5});
  EXPECT_NEAR(sectional_curvature(s, p, {1, 0, 0, 0}, {0, 1, 0, 0}), 1.0, 1e-10);
  EXPECT_NEAR(sectional_curvature(s, p, {1, 2, 0, -1}, {0.3, 0, 1, 1}), 1.0, 1e-10);
}

TEST(Sectional, FlatAndDegenerate) {
  MetricChart f = flat_chart(3);
  Point p = pt({0.0, 0.0, 0.0});
  EXPECT_NEAR(sectional_curvature(f, p, {1, 0, 0}, {0, 1, 1}), 0.0, 1e-15);
  EXPECT_THROW(sectional_curvature(f, p, {1, 0, 0}, {2, 0, 0}), DomainError);
}

TEST(CovariantDerivative, MetricCompatibility) {
  for (int n = 3; n <= 5; ++n) {
    MetricChart c = build_random_analytic_chart(n, 40 + n, 0.3);
    PointGeometry geom(c, Point{std::vector<double>(n, 0.6)}, 3);
    EXPECT_LT(metric_compatibility_residual(geom).abs(), 1e-11);
  }
}

TEST(CovariantDerivative, ScalarCurvatureOnSphere) {
  MetricChart s = round_sphere_chart(3);
  PointGeometry geom(s, pt({0.9, 2.0, 1.3}), 4);
  TensorValue dr = covariant_derivative(scalar_curvature_field()).at(geom);
  EXPECT_LT(dr.max_abs(), 1e-10);
}

TEST(CovariantDerivative, BudgetExceeded) {
  MetricChart c = build_random_analytic_chart(4, 1, 0.2);
  PointGeometry geom(c, Point{std::vector<double>(4, 0.5)}, 3);
  EXPECT_THROW(bach_field().at(geom), JetBudgetError);
  EXPECT_THROW(weyl_fourth_divergence_field().at(geom), JetBudgetError);
  EXPECT_NO_THROW(cotton_field().at(geom));
}

TEST(CovariantDerivative, RicciIdentity) {
  MetricChart c = build_random_analytic_chart(4, 9, 0.25);
  PointGeometry geom(c, Point{std::vector<double>(4, 0.3)}, 4);
  EXPECT_LT(ricci_identity_residual(geom).rel(), 1e-9);
}

TEST(Schouten, FourSphere) {
  MetricChart s = round_sphere_chart(4);
  Point p = pt({0.7, 1.2, 2.1, 0.5});
  TensorValue a = schouten(s, p);
  Matrix g = s.metric_value(p);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(a(i, j), g(i, j), 1e-10);
}

TEST(Schouten, EinsteinReduction) {
  // Sphere of radius 2: Ric = (n-1)/4 g
  const int n = 5;
  const double kappa = (n - 1) / 4.0;
  MetricChart s = scaled(round_sphere_chart(n), 4.0);
  Point p = pt({0.7, 1.2, 2.1, 1.0, 0.5});
  TensorValue a = schouten(s, p);
  Matrix g = s.metric_value(p);
  const double c = kappa - n * kappa / (2.0 * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) EXPECT_NEAR(a(i, j), c * g(i, j), 1e-10);
}

TEST(Schouten, FlatAndLowDimension) {
  EXPECT_LT(schouten(flat_chart(3), pt({0, 0, 0})).max_abs(), 1e-15);
  EXPECT_THROW(schouten(round_sphere_chart(2), pt({1.0, 1.0})), ParameterError);
}

TEST(Weyl, SpaceFormsVanish) {
  EXPECT_LT(weyl(round_sphere_chart(4), pt({0.7, 1.2, 2.1, 0.5})).max_abs(), 1e-10);
  EXPECT_LT(weyl(round_sphere_chart(5), pt({0.7, 1.2, 2.1, 1.0, 0.5})).max_abs(), 1e-10);
}

TEST(Weyl, VanishesInDimensionThree) {
  MetricChart c = build_random_analytic_chart(3, 5, 0.3);
  EXPECT_LT(weyl(c, pt({0.2, 0.5, 0.8})).max_abs(), 1e-12);
}

TEST(Weyl, RoutesAgreeAndTraceFree) {
  for (int n = 4; n <= 5; ++n) {
    MetricChart c = build_random_analytic_chart(n, 12, 0.3);
    PointGeometry geom(c, Point{std::vector<double>(n, 0.5)}, 2);
    EXPECT_LT(weyl_routes_residual(geom).abs(), 1e-11);
    EXPECT_LT(weyl_trace_residual(geom).rel(), 1e-10);
    EXPECT_GT(weyl_field().at(geom).max_abs(), 1e-3);
  }
}

TEST(Weyl, ProductOfSpheresIsNotConformallyFlat) {
  EXPECT_GT(weyl(product_s2s2(), pt({1.0, 0.5, 2.0, 0.1})).max_abs(), 0.1);
}

TEST(Cotton, EinsteinVanishes) {
  EXPECT_LT(cotton(round_sphere_chart(4), pt({0.7, 1.2, 2.1, 0.5})).max_abs(), 1e-10);
}

TEST(Cotton, RoutesAndWeylRelation) {
  for (int n = 4; n <= 5; ++n) {
    MetricChart c = build_random_analytic_chart(n, 21, 0.2);
    PointGeometry geom(c, Point{std::vector<double>(n, 0.35)}, 3);
    EXPECT_LT(cotton_routes_residual(geom).rel(), 1e-10);
    EXPECT_LT(cotton_weyl_residual(geom).rel(), 1e-9);
    TensorValue ct = frame_components(cotton_field(), geom);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) EXPECT_NEAR(ct(i, j, k), -ct(j, i, k), 1e-12);
  }
}

TEST(Bach, SphereVanishes) {
  EXPECT_LT(bach(round_sphere_chart(4), pt({0.7, 1.2, 2.1, 0.5})).max_abs(), 1e-9);
}

TEST(Bach, ConformallyFlatVanishes) {
  MetricChart c = conformally_flat_chart(4, [](CoordinateJets x) { return x[0] + x[1]; });
  Point p = pt({0.2, -0.1, 0.3, 0.4});
  EXPECT_LT(weyl(c, p).max_abs(), 1e-10);
  EXPECT_LT(bach(c, p).max_abs(), 1e-8);
}

TEST(Bach, DivergenceAndSymmetry) {
  for (int n = 3; n <= 5; ++n) {
    MetricChart c = build_random_analytic_chart(n, 31, 0.2);
    PointGeometry geom(c, Point{std::vector<double>(n, 0.45)}, 5);
    EXPECT_LT(bach_divergence_residual(geom).rel(), 1e-8);
    EXPECT_LT(bach_symmetry_residual(geom).rel(), 1e-9);
  }
}

TEST(Divergence, MetricAndContractedBianchi) {
  MetricChart c = build_random_analytic_chart(4, 3, 0.3);
  Point p = pt({0.1, 0.4, 0.7, 0.2});
  EXPECT_LT(divergence(metric_field(), c, p, 0).max_abs(), 1e-12);
  PointGeometry geom(c, p, 3);
  EXPECT_LT(contracted_bianchi_residual(geom).rel(), 1e-9);
  EXPECT_THROW(divergence(metric_field(), c, p, 2), ShapeError);
}

TEST(RicciEigensystem, KnownSpectra) {
  RicciEigensystem s = ricci_eigensystem(round_sphere_chart(4), pt({0.7, 1.2, 2.1, 0.5}));
  for (double v : s.values) EXPECT_NEAR(v, 3.0, 1e-10);
  RicciEigensystem f = ricci_eigensystem(flat_chart(3), pt({0, 0, 0}));
  for (double v : f.values) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(RicciEigensystem, EigenpairResidual) {
  MetricChart c = build_random_analytic_chart(5, 8, 0.3);
  Point p = pt({0.1, 0.2, 0.3, 0.4, 0.5});
  PointGeometry geom(c, p, 2);
  RicciEigensystem e = ricci_eigensystem(geom);
  TensorValue ric = ricci_field().at(geom);
  const Matrix& g = geom.metric_value();
  for (int k = 0; k < 5; ++k) {
    if (k > 0) EXPECT_LE(e.values[k - 1], e.values[k]);
    for (int i = 0; i < 5; ++i) {
      double rv = 0.0, gv = 0.0;
      for (int j = 0; j < 5; ++j) {
        rv += ric(i, j) * e.vectors(j, k);
        gv += g(i, j) * e.vectors(j, k);
      }
      EXPECT_NEAR(rv, e.values[k] * gv, 1e-9);
    }
  }
}

TEST(TensorField, OrdersAgreeOnSharedCoefficients) {
  MetricChart c = build_random_analytic_chart(4, 2, 0.2);
  PointGeometry geom(c, Point{std::vector<double>(4, 0.5)}, 5);
  JetTensor lo = ricci_field().evaluate(geom, 1);
  JetTensor hi = ricci_field().evaluate(geom, 3).truncated(1);
  for (std::size_t i = 0; i < lo.size(); ++i)
    for (std::size_t r = 0; r < lo[i].coeffs().size(); ++r) EXPECT_NEAR(lo[i][r], hi[i][r], 1e-14);
}
