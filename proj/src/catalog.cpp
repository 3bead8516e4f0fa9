#include "curvlab/catalog.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace curvlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPolarMargin = 1e-3;  // safe-domain distance from polar singularities
constexpr double kPolarSample = 0.35;  // sampling distance from polar singularities

// g_{S^k} diagonal in nested angles starting at coordinate `first`.
std::vector<Jet> sphere_factors(CoordinateJets x, int first, int k) {
  std::vector<Jet> h;
  h.reserve(k);
  Jet prod = Jet::constant(1.0, x[0].n_vars(), x[0].max_order());
  for (int j = 0; j < k; ++j) {
    h.push_back(prod);
    if (j + 1 < k) {
      const Jet s = sin(x[first + j]);
      prod = prod * s * s;
    }
  }
  return h;
}

std::vector<double> sphere_factor_values(const Point& p, int first, int k) {
  std::vector<double> h;
  double prod = 1.0;
  for (int j = 0; j < k; ++j) {
    h.push_back(prod);
    if (j + 1 < k) prod *= std::sin(p[first + j]) * std::sin(p[first + j]);
  }
  return h;
}

bool polar_angles_safe(const Point& p, int first, int k) {
  for (int j = 0; j + 1 < k; ++j) {
    const double a = p[first + j];
    if (!(a > kPolarMargin && a < kPi - kPolarMargin)) return false;
  }
  return true;
}

void append_sphere_box(SampleBox& box, int k) {
  for (int j = 0; j < k; ++j) {
    const bool azimuth = j + 1 == k;
    box.lo.push_back(azimuth ? 0.0 : kPolarSample);
    box.hi.push_back(azimuth ? 2.0 * kPi : kPi - kPolarSample);
  }
}

double value_of(const RadialFunction& f, double r) { return f(Jet::constant(r, 1, 0)).value(); }

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

}  // namespace

RadialDerivatives radial_derivatives(const RadialFunction& f, double r) {
  const Jet j = f(Jet::variable(0, r, 1, 2));
  return {j[0], j[1], 2.0 * j[2]};
}

MetricChart flat_chart(int n) {
  return MetricChart::diagonal("flat", n, [n](CoordinateJets x) {
    return std::vector<Jet>(n, Jet::constant(1.0, x[0].n_vars(), x[0].max_order()));
  });
}

MetricChart round_sphere_chart(int n) {
  require(n >= 2, "round sphere chart requires n >= 2");
  return MetricChart::diagonal(
      "sphere", n, [n](CoordinateJets x) { return sphere_factors(x, 0, n); },
      [n](const Point& p) { return polar_angles_safe(p, 0, n); });
}

MetricChart warped_chart(const WarpedSpec& spec, std::string name) {
  require(spec.p >= 1 && spec.q >= 0, "warped chart requires p >= 1 and q >= 0");
  require(static_cast<bool>(spec.phi) && (spec.q == 0 || static_cast<bool>(spec.psi)),
          "warped chart needs warping functions");
  const WarpedSpec s = spec;
  auto diag = [s](CoordinateJets x) {
    std::vector<Jet> d;
    d.push_back(Jet::constant(1.0, x[0].n_vars(), x[0].max_order()));
    const Jet phi = s.phi(x[0]);
    const Jet phi2 = phi * phi;
    for (const Jet& h : sphere_factors(x, 1, s.p)) d.push_back(phi2 * h);
    if (s.q > 0) {
      const Jet psi = s.psi(x[0]);
      const Jet psi2 = psi * psi;
      for (const Jet& h : sphere_factors(x, 1 + s.p, s.q)) d.push_back(psi2 * h);
    }
    return d;
  };
  auto safe = [s](const Point& p) {
    const double r = p[0];
    if (!(r > s.r_lo && r < s.r_hi)) return false;
    if (!(value_of(s.phi, r) > 0.0)) return false;
    if (s.q > 0 && !(value_of(s.psi, r) > 0.0)) return false;
    return polar_angles_safe(p, 1, s.p) && polar_angles_safe(p, 1 + s.p, s.q);
  };
  return MetricChart::diagonal(std::move(name), spec.dim(), diag, safe);
}

MetricChart conformally_flat_chart(int n, ScalarFunction f, std::string name) {
  return MetricChart::diagonal(std::move(name), n, [n, f](CoordinateJets x) {
    return std::vector<Jet>(n, exp(2.0 * f(x)));
  });
}

MetricChart build_random_analytic_chart(int n, std::uint64_t seed, double amplitude) {
  require(n >= 2 && n <= 6, "random analytic chart requires 2 <= n <= 6");
  require(amplitude >= 0.0 && amplitude <= 0.3, "random chart amplitude must lie in [0, 0.3]");

  struct Wave {
    std::vector<double> freq;
    double phase;
  };
  struct Entry {
    double w_sin, w_cos, w_exp;
    Wave sin_wave, cos_wave, exp_wave;
  };
  std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(n)));
  auto wave = [&] {
    Wave w;
    for (int i = 0; i < n; ++i) w.freq.push_back(uniform(rng, -1.5, 1.5));
    w.phase = uniform(rng, 0.0, 2.0 * kPi);
    return w;
  };
  std::vector<Entry> entries;  // upper triangle, row-major
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Entry e;
      double w[3];
      double total = 0.0;
      for (double& v : w) {
        v = uniform(rng, -1.0, 1.0);
        total += std::abs(v);
      }
      e.w_sin = w[0] / total;
      e.w_cos = w[1] / total;
      e.w_exp = w[2] / total;
      e.sin_wave = wave();
      e.cos_wave = wave();
      e.exp_wave = wave();
      entries.push_back(std::move(e));
    }

  const double scale = amplitude / n;
  const double exp_norm = 1.0 / (std::numbers::e - 1.0);
  auto components = [n, entries, scale, exp_norm](CoordinateJets x) {
    auto phase = [&](const Wave& w) {
      Jet s = Jet::constant(w.phase, x[0].n_vars(), x[0].max_order());
      for (int i = 0; i < n; ++i) s += w.freq[i] * x[i];
      return s;
    };
    std::vector<Jet> g(n * n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++k) {
        const Entry& e = entries[k];
        Jet t = e.w_sin * sin(phase(e.sin_wave));
        t += e.w_cos * cos(phase(e.cos_wave));
        t += (e.w_exp * exp_norm) * (exp(sin(phase(e.exp_wave))) - 1.0);
        t *= scale;
        if (i == j) t += 1.0;
        g[i * n + j] = t;
        g[j * n + i] = t;
      }
    return g;
  };
  return MetricChart("random", n, components);
}

WarpedRicci warped_oracle_ricci(const WarpedSpec& spec, double r) {
  if (!(r > spec.r_lo && r < spec.r_hi)) throw DomainError("r outside the warped product interval");
  const double p = spec.p, q = spec.q;
  const RadialDerivatives f = radial_derivatives(spec.phi, r);
  RadialDerivatives h;
  if (spec.q > 0) h = radial_derivatives(spec.psi, r);
  WarpedRicci out;
  out.radial = -p * f.d2 / f.value;
  out.fiber_p = -f.d2 / f.value + (p - 1.0) * (1.0 - f.d1 * f.d1) / (f.value * f.value);
  if (spec.q > 0) {
    out.radial -= q * h.d2 / h.value;
    out.fiber_p -= q * f.d1 * h.d1 / (f.value * h.value);
    out.fiber_q = -h.d2 / h.value + (q - 1.0) * (1.0 - h.d1 * h.d1) / (h.value * h.value) -
                  p * f.d1 * h.d1 / (f.value * h.value);
  }
  return out;
}

WarpedHessian warped_oracle_hessian_r(const WarpedSpec& spec, double r) {
  if (!(r > spec.r_lo && r < spec.r_hi)) throw DomainError("r outside the warped product interval");
  const RadialDerivatives f = radial_derivatives(spec.phi, r);
  WarpedHessian out;
  out.fiber_p = f.d1 * f.value;
  if (spec.q > 0) {
    const RadialDerivatives h = radial_derivatives(spec.psi, r);
    out.fiber_q = h.d1 * h.value;
  }
  return out;
}

TensorValue warped_oracle_ricci_tensor(const WarpedSpec& spec, const Point& p) {
  const int n = spec.dim();
  if (static_cast<int>(p.size()) != n) throw ShapeError("point dimension does not match the warped chart");
  const WarpedRicci ric = warped_oracle_ricci(spec, p[0]);
  const double phi = value_of(spec.phi, p[0]);
  TensorValue t(n, covariant_valence(2), p);
  t(0, 0) = ric.radial;
  const auto hp = sphere_factor_values(p, 1, spec.p);
  for (int j = 0; j < spec.p; ++j) t(1 + j, 1 + j) = ric.fiber_p * phi * phi * hp[j];
  if (spec.q > 0) {
    const double psi = value_of(spec.psi, p[0]);
    const auto hq = sphere_factor_values(p, 1 + spec.p, spec.q);
    for (int j = 0; j < spec.q; ++j) t(1 + spec.p + j, 1 + spec.p + j) = ric.fiber_q * psi * psi * hq[j];
  }
  return t;
}

TensorValue warped_oracle_hessian_r_tensor(const WarpedSpec& spec, const Point& p) {
  const int n = spec.dim();
  if (static_cast<int>(p.size()) != n) throw ShapeError("point dimension does not match the warped chart");
  const WarpedHessian hess = warped_oracle_hessian_r(spec, p[0]);
  TensorValue t(n, covariant_valence(2), p);
  const auto hp = sphere_factor_values(p, 1, spec.p);
  for (int j = 0; j < spec.p; ++j) t(1 + j, 1 + j) = hess.fiber_p * hp[j];
  if (spec.q > 0) {
    const auto hq = sphere_factor_values(p, 1 + spec.p, spec.q);
    for (int j = 0; j < spec.q; ++j) t(1 + spec.p + j, 1 + spec.p + j) = hess.fiber_q * hq[j];
  }
  return t;
}

bool CatalogEntry::expected_pass(const std::string& check) const {
  const auto it = declared.find(check);
  return it == declared.end() || it->second;
}

CatalogEntry build_hemisphere(int n, double m) {
  require(n >= 2, "hemisphere requires n >= 2");
  require(m > 0.0, "hemisphere requires m > 0");
  WarpedSpec spec;
  spec.p = n - 1;
  spec.phi = [](const Jet& r) { return sin(r); };
  spec.r_lo = 0.0;
  spec.r_hi = kPi / 2.0;
  MetricChart chart = warped_chart(spec, "hemisphere");
  QEStructure qe{chart, [](CoordinateJets x) { return cos(x[0]); }, m, m + n - 1.0};

  SampleBox box{{kPolarSample}, {kPi / 2.0 - 0.1}};
  append_sphere_box(box, spec.p);
  return CatalogEntry{"hemisphere",
                      chart,
                      qe,
                      spec,
                      {},
                      "r = pi/2",
                      "upper hemisphere with the round metric, u = cos r, lambda = m + n - 1",
                      box};
}

CatalogEntry build_cylinder(int n, double m, double lambda) {
  require(n >= 3, "cylinder requires n >= 3");
  require(m > 0.0, "cylinder requires m > 0");
  require(lambda > 0.0, "cylinder requires lambda > 0");
  const double radius = std::sqrt((n - 2.0) / lambda);
  const double k = std::sqrt(lambda / m);
  const double length = kPi / k;
  WarpedSpec spec;
  spec.p = n - 1;
  spec.phi = [radius](const Jet& t) { return Jet::constant(radius, t.n_vars(), t.max_order()); };
  spec.r_lo = 0.0;
  spec.r_hi = length;
  MetricChart chart = warped_chart(spec, "cylinder");
  QEStructure qe{chart, [k](CoordinateJets x) { return sin(k * x[0]); }, m, lambda};

  SampleBox box{{0.1}, {length - 0.1}};
  append_sphere_box(box, spec.p);
  return CatalogEntry{"cylinder",
                      chart,
                      qe,
                      spec,
                      {},
                      "t = 0 and t = pi sqrt(m/lambda)",
                      "dt^2 + ((n-2)/lambda) g_{S^(n-1)}, u = sin(sqrt(lambda/m) t)",
                      box};
}

CatalogEntry build_example_A(int p, int q, double m) {
  require(p >= 1, "exampleA requires p >= 1");
  require(q >= 2, "exampleA requires q >= 2 (the S^q fiber radius^2 (q-1)/(p+m) vanishes for q = 1)");
  require(m > 0.0, "exampleA requires m > 0");
  const double radius = std::sqrt((q - 1.0) / (p + m));
  WarpedSpec spec;
  spec.p = p;
  spec.q = q;
  spec.phi = [](const Jet& r) { return sin(r); };
  spec.psi = [radius](const Jet& r) { return Jet::constant(radius, r.n_vars(), r.max_order()); };
  spec.r_lo = 0.0;
  spec.r_hi = kPi / 2.0;
  MetricChart chart = warped_chart(spec, "exampleA");
  QEStructure qe{chart, [](CoordinateJets x) { return cos(x[0]); }, m, p + m};

  SampleBox box{{kPolarSample}, {kPi / 2.0 - 0.1}};
  append_sphere_box(box, p);
  append_sphere_box(box, q);
  std::map<std::string, bool> declared = {
      {"radial_weyl", false}, {"weyl_zero", false}, {"bach_flat", false}, {"bach_from_cotton", false}};
  return CatalogEntry{"exampleA",
                      chart,
                      qe,
                      spec,
                      declared,
                      "r = pi/2",
                      "dr^2 + sin^2 r g_{S^p} + ((q-1)/(p+m)) g_{S^q} on S^(p+1)_+ x S^q, u = cos r, lambda = p + m",
                      box};
}

CatalogEntry build_random_entry(int n, std::uint64_t seed, double amplitude) {
  MetricChart chart = build_random_analytic_chart(n, seed, amplitude);
  SampleBox box{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
  return CatalogEntry{"random", chart, std::nullopt, std::nullopt, {}, "none", "seeded random analytic metric", box};
}

CatalogEntry build_flat_entry(int n) {
  require(n >= 2, "flat chart requires n >= 2");
  SampleBox box{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
  return CatalogEntry{"flat", flat_chart(n), std::nullopt, std::nullopt, {}, "none", "Euclidean space", box};
}

CatalogEntry build_entry(const std::string& name, const EntryParams& params) {
  if (name == "hemisphere") return build_hemisphere(params.n.value_or(4), params.m.value_or(3.0));
  if (name == "cylinder")
    return build_cylinder(params.n.value_or(4), params.m.value_or(2.0), params.lambda.value_or(2.0));
  if (name == "exampleA")
    return build_example_A(params.p.value_or(2), params.q.value_or(2), params.m.value_or(2.0));
  if (name == "random") {
    const int n = params.n.value_or(4);
    require(n >= 3 && n <= 6, "random entry requires 3 <= n <= 6");
    return build_random_entry(n, params.seed, params.amplitude);
  }
  if (name == "flat") return build_flat_entry(params.n.value_or(4));
  throw ParameterError("unknown catalog entry '" + name + "'");
}

std::vector<std::string> catalog_names() { return {"hemisphere", "cylinder", "exampleA", "random", "flat"}; }

}  // namespace curvlab
