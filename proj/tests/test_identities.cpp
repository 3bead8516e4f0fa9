#include <gtest/gtest.h>

#include "curvlab/catalog.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/identities.hpp"
#include "curvlab/sampling.hpp"

using namespace curvlab;

namespace {

Point random_point(int n, std::uint64_t seed) {
  SampleBox box{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
  return sample_points(box, 1, seed)[0];
}

}  // namespace

TEST(UniversalIdentities, RandomMetrics) {
  for (int n = 3; n <= 5; ++n) {
    for (std::uint64_t k = 0; k < 4; ++k) {
      MetricChart c = build_random_analytic_chart(n, mix_seed(100, k), 0.2);
      PointGeometry geom(c, random_point(n, k + 7), universal_identity_order());
      auto results = universal_identities_at(geom);
      ASSERT_EQ(results.size(), universal_identity_names(n).size());
      for (const auto& r : results) {
        if (!r.value) continue;
        EXPECT_LT(r.value->rel(), 1e-8) << "n=" << n << " " << r.name;
      }
    }
  }
}

TEST(UniversalIdentities, NamesByDimension) {
  auto has = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  auto n3 = universal_identity_names(3), n4 = universal_identity_names(4);
  EXPECT_TRUE(has(n3, "n3_bach_div"));
  EXPECT_FALSE(has(n3, "cotton_weyl"));
  EXPECT_FALSE(has(n3, "cubic_identity"));
  EXPECT_TRUE(has(n4, "cotton_weyl"));
  EXPECT_TRUE(has(n4, "cubic_identity"));
  EXPECT_FALSE(has(n4, "n3_bach_div"));
  for (auto* v : {&n3, &n4}) {
    EXPECT_TRUE(has(*v, "bach_divergence"));
    EXPECT_TRUE(has(*v, "ricci_identity"));
    EXPECT_TRUE(has(*v, "eigen_commutator"));
  }
}

TEST(CubicIdentity, RandomMetrics) {
  for (int n = 4; n <= 5; ++n)
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      MetricChart c = build_random_analytic_chart(n, seed, 0.25);
      EXPECT_LT(cubic_identity_residual(c, random_point(n, seed)).rel(), 1e-9);
    }
}

TEST(CubicIdentity, EinsteinAndExampleA) {
  MetricChart s = round_sphere_chart(5);
  EXPECT_LT(cubic_identity_residual(s, Point{{0.7, 1.2, 2.1, 1.0, 0.5}}).abs(), 1e-12);
  CatalogEntry a = build_example_A(2, 2, 2.0);
  for (const Point& p : sample_points(a.box, 5, 3)) EXPECT_LT(cubic_identity_residual(a.chart, p).rel(), 1e-9);
}

TEST(CubicIdentity, RequiresDimensionFour) {
  MetricChart c = build_random_analytic_chart(3, 1, 0.2);
  EXPECT_THROW(cubic_identity_residual(c, random_point(3, 1)), ParameterError);
}

TEST(N3BachDiv, RandomMetrics) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    MetricChart c = build_random_analytic_chart(3, seed, 0.25);
    EXPECT_LT(n3_bach_div_residual(c, random_point(3, seed)).rel(), 1e-8);
  }
}

TEST(N3BachDiv, ConstantCurvatureAndConformallyFlat) {
  EXPECT_LT(n3_bach_div_residual(round_sphere_chart(3), Point{{0.9, 2.0, 1.3}}).abs(), 1e-9);
  MetricChart c = conformally_flat_chart(3, [](CoordinateJets x) { return 0.3 * sin(x[0]) + 0.2 * x[1] * x[2]; });
  PointGeometry geom(c, Point{{0.2, 0.4, 0.6}}, 5);
  EXPECT_LT(frame_components(cotton_field(), geom).max_abs(), 1e-9);
  EXPECT_LT(n3_bach_div_residual(geom).abs(), 1e-9);
}

TEST(N3BachDiv, RejectsOtherDimensions) {
  MetricChart c = build_random_analytic_chart(4, 1, 0.2);
  EXPECT_THROW(n3_bach_div_residual(c, random_point(4, 1)), ParameterError);
}

TEST(EigenCommutator, SkipsDegenerateSpectrum) {
  PointGeometry geom(round_sphere_chart(4), Point{{0.7, 1.2, 2.1, 0.5}}, 4);
  EXPECT_FALSE(eigen_commutator_residual(geom).has_value());
}

TEST(EigenCommutator, RandomMetrics) {
  int checked = 0;
  for (int n = 3; n <= 5; ++n)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      MetricChart c = build_random_analytic_chart(n, seed, 0.25);
      PointGeometry geom(c, random_point(n, seed), 4);
      auto r = eigen_commutator_residual(geom);
      if (!r) continue;
      ++checked;
      EXPECT_LT(r->rel(), 1e-8);
      EXPECT_GT(r->scale, 1e-6);
    }
  EXPECT_GT(checked, 10);
}

TEST(BudgetErrors, InsufficientOrder) {
  MetricChart c = build_random_analytic_chart(4, 1, 0.2);
  PointGeometry geom(c, random_point(4, 1), 3);
  EXPECT_THROW(ricci_identity_residual(geom), JetBudgetError);
  EXPECT_THROW(bach_divergence_residual(geom), JetBudgetError);
  EXPECT_NO_THROW(cotton_weyl_residual(geom));
}
