#pragma once

// Concrete metrics: round spheres, doubly warped products over an interval,
// the quasi-Einstein examples built from them, and seeded random metrics.
//
// Warped charts use coordinates (r, a_1..a_p, b_1..b_q) where (a) and (b) are
// nested angles on unit spheres: a_1..a_{p-1} are polar angles in (0, pi) and
// a_p is the azimuth, so g_{S^p} = da_1^2 + sin^2 a_1 da_2^2 + ...

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/chart.hpp"
#include "curvlab/qe.hpp"
#include "curvlab/sampling.hpp"

namespace curvlab {

using RadialFunction = std::function<Jet(const Jet&)>;

// g = dr^2 + phi(r)^2 g_{S^p} + psi(r)^2 g_{S^q} on r_lo < r < r_hi.
struct WarpedSpec {
  int p = 1;
  int q = 0;
  RadialFunction phi;
  RadialFunction psi;  // ignored when q = 0
  double r_lo = 0.0;
  double r_hi = 1.0;

  int dim() const { return 1 + p + q; }
};

struct RadialDerivatives {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};
RadialDerivatives radial_derivatives(const RadialFunction& f, double r);

MetricChart flat_chart(int n);
// Unit S^n in nested angles.
MetricChart round_sphere_chart(int n);
MetricChart warped_chart(const WarpedSpec& spec, std::string name = "warped");
// e^{2f} times the Euclidean metric.
MetricChart conformally_flat_chart(int n, ScalarFunction f, std::string name = "conformally_flat");
// g = I + (amplitude / n) S(x), S symmetric with entries mixing sin, cos and
// exp(sin) terms bounded by 1, so g >= (1 - amplitude) I everywhere.
MetricChart build_random_analytic_chart(int n, std::uint64_t seed, double amplitude = 0.2);

// Ricci eigenvalues of a warped metric on the radial line and the two fibers.
struct WarpedRicci {
  double radial = 0.0;
  double fiber_p = 0.0;
  double fiber_q = 0.0;
};
WarpedRicci warped_oracle_ricci(const WarpedSpec& spec, double r);

// hess r = fiber_p g_{S^p} + fiber_q g_{S^q}.
struct WarpedHessian {
  double fiber_p = 0.0;
  double fiber_q = 0.0;
};
WarpedHessian warped_oracle_hessian_r(const WarpedSpec& spec, double r);

// Coordinate components of the two oracles at a chart point.
TensorValue warped_oracle_ricci_tensor(const WarpedSpec& spec, const Point& p);
TensorValue warped_oracle_hessian_r_tensor(const WarpedSpec& spec, const Point& p);

struct CatalogEntry {
  std::string name;
  MetricChart chart;
  std::optional<QEStructure> qe;
  std::optional<WarpedSpec> warped;
  // Expected pass/fail per check name; checks not listed are expected to pass.
  std::map<std::string, bool> declared;
  std::string boundary;
  std::string citation;
  SampleBox box;

  bool expected_pass(const std::string& check) const;
};

CatalogEntry build_hemisphere(int n, double m);
CatalogEntry build_cylinder(int n, double m, double lambda);
CatalogEntry build_example_A(int p, int q, double m);
CatalogEntry build_random_entry(int n, std::uint64_t seed, double amplitude);
CatalogEntry build_flat_entry(int n);

struct EntryParams {
  std::optional<int> p, q, n;
  std::optional<double> m, lambda;
  std::uint64_t seed = 1;
  double amplitude = 0.2;
};

// Entry by CLI name with defaults for unset parameters. Unknown names and
// invalid parameters throw ParameterError.
CatalogEntry build_entry(const std::string& name, const EntryParams& params);
std::vector<std::string> catalog_names();

}  // namespace curvlab
