// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "curvlab/catalog.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/identities.hpp"
#include "curvlab/qe.hpp"
#include "curvlab/report.hpp"
#include "curvlab/sampling.hpp"

using namespace curvlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body, double time_limit = 0.0) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0.0 && secs >= time_limit) {
    o.pass = false;
    o.detail += fmt("; over time limit %.0f s", time_limit);
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s  %s [%s] (%.2f s)\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

template <class F>
double max_over(const QEStructure& s, const std::vector<Point>& pts, int order, F f) {
  double m = 0.0;
  for (const Point& p : pts) {
    QEPoint q(s, p, order);
    m = std::max(m, f(q));
  }
  return m;
}

double rel_diff(const TensorValue& a, const TensorValue& b) {
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    s = std::max({s, std::abs(a[i]), std::abs(b[i])});
  }
  return s > 1e-6 ? d / s : d;
}

}  // namespace

int main() {
  const CatalogEntry exA = build_example_A(2, 2, 2.0);
  const CatalogEntry hemi = build_hemisphere(4, 3.0);
  const CatalogEntry cyl = build_cylinder(4, 2.0, 2.0);

  criterion(1, "exampleA (2,2,2) QE equation, 50 points, rel < 1e-9", [&] {
    double worst = max_over(*exA.qe, sample_points(exA.box, 50, 1), 2,
                            [](QEPoint& q) { return qe_residual(q).rel(); });
    return Outcome{exA.qe->lambda == 4.0 && worst < 1e-9, fmt("max rel %.3g", worst)};
  }, 30.0);

  criterion(2, "exampleA Ricci spectrum {2 x3, 4 x2} and R = 14 constant", [&] {
    double spec_err = 0.0;
    std::vector<double> scalars;
    for (const Point& p : sample_points(exA.box, 20, 2)) {
      RicciEigensystem e = ricci_eigensystem(exA.chart, p);
      const double expect[] = {2, 2, 2, 4, 4};
      for (int i = 0; i < 5; ++i) spec_err = std::max(spec_err, std::abs(e.values[i] - expect[i]));
      scalars.push_back(scalar_curvature(exA.chart, p));
    }
    double mean = 0.0, var = 0.0;
    for (double r : scalars) mean += r / scalars.size();
    for (double r : scalars) var += (r - mean) * (r - mean) / scalars.size();
    const double sd = std::sqrt(var);
    const double expected_r = 2 * 3 + 2 * 4;
    bool ok = spec_err < 1e-9 && sd < 1e-9 && std::abs(mean - expected_r) < 1e-9;
    return Outcome{ok, fmt("eigen err %.3g", spec_err) + fmt(", R %.12g", mean) + fmt(", stddev %.3g", sd)};
  });

  criterion(3, "exampleA condition profile: sec >= -1e-8, |div4 W| < 1e-6, radial Weyl > 1e-3", [&] {
    ProbeOptions opt;
    opt.planes_per_point = 10;
    auto results = condition_probe(*exA.qe, sample_points(exA.box, 20, 3), opt);
    std::map<std::string, IdentityResidual> by;
    for (auto& r : results) by[r.name] = r;
    const int planes = by.at("nonneg_sectional").points_checked * opt.planes_per_point;
    const double sec = by.at("nonneg_sectional").observed;
    const double div4 = by.at("div4_weyl").max_abs;
    const double radial = by.at("radial_weyl").max_abs;
    bool ok = planes >= 200 && sec >= -1e-8 && div4 < 1e-6 && radial > 1e-3;
    return Outcome{ok, fmt("%.0f planes", planes) + fmt(", min sec %.4g", sec) + fmt(", max div4 %.3g", div4) +
                           fmt(", radial Weyl %.4g", radial)};
  }, 300.0);

  criterion(4, "hemisphere and cylinder: QE equation, W = C = B = 0, scalar bound equality", [&] {
    const auto hp = sample_points(hemi.box, 20, 4), cp = sample_points(cyl.box, 20, 4);
    const double qh = max_over(*hemi.qe, hp, 2, [](QEPoint& q) { return qe_residual(q).rel(); });
    const double qc = max_over(*cyl.qe, cp, 2, [](QEPoint& q) { return qe_residual(q).rel(); });
    const double wcb = max_over(*hemi.qe, hp, 4, [](QEPoint& q) {
      return std::max({q.weyl().max_abs(), q.cotton().max_abs(), q.bach().max_abs()});
    });
    const double wc = max_over(*cyl.qe, cp, 2, [](QEPoint& q) { return q.weyl().max_abs(); });
    const double margin = max_over(*hemi.qe, hp, 2, [](QEPoint& q) { return std::abs(scalar_bound_margin(q)); });
    bool ok = qh < 1e-9 && qc < 1e-9 && wcb < 1e-9 && wc < 1e-9 && margin < 1e-8;
    return Outcome{ok, fmt("qe %.3g", qh) + fmt("/%.3g", qc) + fmt(", hemisphere WCB %.3g", wcb) +
                           fmt(", cylinder W %.3g", wc) + fmt(", bound gap %.3g", margin)};
  });

  criterion(5, "universal identities on 30 random metrics (n = 3, 4, 5), rel < 1e-8", [&] {
    const std::vector<std::string> wanted = {"cotton_weyl",    "bach_divergence", "cubic_identity",
                                             "ricci_identity", "eigen_commutator", "n3_bach_div"};
    std::map<std::string, double> worst;
    std::map<std::string, int> points;
    for (int n = 3; n <= 5; ++n) {
      RunConfig c;
      c.command = "identities";
      c.params.n = n;
      c.samples = 10;
      c.seed = 11;
      RunReport r = run_identities(c);
      for (const auto& ch : r.checks) {
        worst[ch.name] = std::max(worst[ch.name], ch.result.max_rel);
        points[ch.name] += ch.result.points_checked;
      }
    }
    bool ok = true;
    std::string detail;
    for (const auto& name : wanted) {
      ok = ok && points[name] > 0 && worst[name] < 1e-8;
      detail += (detail.empty() ? "" : ", ") + name + fmt(" %.2g", worst[name]);
    }
    ok = ok && points["cotton_weyl"] == 20 && points["cubic_identity"] == 20 && points["n3_bach_div"] == 10;
    return Outcome{ok, detail};
  }, 300.0);

  criterion(6, "QE identities on hemisphere, cylinder, exampleA; traceless norm 4.8", [&] {
    double lemma = 0.0, contraction = 0.0, bochner = 0.0;
    bool norms = true;
    for (const CatalogEntry* e : {&hemi, &cyl, &exA}) {
      const auto pts = sample_points(e->box, 20, 6);
      lemma = std::max(lemma, max_over(*e->qe, pts, 3, [](QEPoint& q) { return lemma_cwt_residual(q).rel(); }));
      contraction = std::max(
          contraction, max_over(*e->qe, pts, 3, [](QEPoint& q) { return contraction_identity_residual(q).rel(); }));
      bochner = std::max(bochner, max_over(*e->qe, pts, 4, [](QEPoint& q) { return bochner_residual(q).abs(); }));
      norms = norms && traceless_norm_formula_check(*e->qe, pts).pass;
    }
    IdentityResidual ex = traceless_norm_formula_check(*exA.qe, sample_points(exA.box, 20, 6));
    const double formula = traceless_norm_formula(5, 2, 4, 14);
    bool ok = lemma < 1e-9 && contraction < 1e-9 && bochner < 1e-7 && norms && std::abs(ex.observed - 4.8) < 1e-9 &&
              std::abs(formula - 4.8) < 1e-9 && ex.max_abs < 1e-9;
    return Outcome{ok, fmt("lemma %.3g", lemma) + fmt(", contraction %.3g", contraction) +
                           fmt(", bochner %.3g", bochner) + fmt(", |Ric0|^2 %.12g", ex.observed)};
  });

  criterion(7, "warped-product Ricci and hess r oracles vs engine, 30 samples, rel < 1e-10", [&] {
    std::vector<WarpedSpec> specs;
    specs.push_back(*exA.warped);
    WarpedSpec g;
    g.p = 2;
    g.q = 1;
    g.phi = [](const Jet& r) { return r + 0.3 * r * r; };
    g.psi = [](const Jet& r) { return 1.0 + 0.2 * cos(r); };
    g.r_lo = 0.2;
    g.r_hi = 2.0;
    specs.push_back(g);
    specs.push_back(*hemi.warped);
    TensorField r_field = scalar_function_field("r", [](CoordinateJets x) { return x[0]; });
    TensorField hess_r = covariant_derivative(covariant_derivative(r_field));
    double worst = 0.0;
    int count = 0;
    for (const WarpedSpec& s : specs) {
      MetricChart c = warped_chart(s);
      SampleBox box{{s.r_lo + 0.2}, {s.r_hi - 0.2}};
      for (int k : {s.p, s.q})
        for (int j = 0; j < k; ++j) {
          box.lo.push_back(j + 1 == k ? 0.0 : 0.4);
          box.hi.push_back(j + 1 == k ? 2 * kPi : kPi - 0.4);
        }
      for (const Point& p : sample_points(box, 10, 7)) {
        PointGeometry geom(c, p, 2);
        worst = std::max(worst, rel_diff(ricci_field().at(geom), warped_oracle_ricci_tensor(s, p)));
        worst = std::max(worst, rel_diff(hess_r.at(geom), warped_oracle_hessian_r_tensor(s, p)));
        ++count;
      }
    }
    return Outcome{count == 30 && worst < 1e-10, fmt("%.0f samples", count) + fmt(", max rel %.3g", worst)};
  });

  criterion(8, "negative controls: lambda + 1e-3 detected; sin*exp jets to order 6 within 1e-10", [&] {
    QEStructure off = *hemi.qe;
    off.lambda += 1e-3;
    double lowest = 1e300;
    for (const Point& p : sample_points(hemi.box, 20, 8)) {
      QEPoint q(off, p, 2);
      lowest = std::min(lowest, qe_residual(q).abs());
    }
    double jet_err = 0.0;
    std::mt19937_64 rng(8);
    const auto& space = JetSpace::get(2, 6);
    for (int t = 0; t < 20; ++t) {
      const double x0 = uniform(rng, -2, 2), y0 = uniform(rng, -2, 2);
      Jet f = sin(jet_variable(0, x0, 2, 6)) * exp(jet_variable(1, y0, 2, 6));
      for (std::size_t r = 0; r < space.size(); ++r) {
        const MultiIndex& a = space.index(r);
        const double ds[] = {std::sin(x0), std::cos(x0), -std::sin(x0), -std::cos(x0)};
        const double expect = ds[a.exponents[0] % 4] * std::exp(y0);
        jet_err = std::max(jet_err, std::abs(extract_partial(f, a) - expect) / std::max(1.0, std::abs(expect)));
      }
    }
    return Outcome{lowest > 1e-5 && jet_err < 1e-10,
                   fmt("min perturbed residual %.3g", lowest) + fmt(", jet err %.3g", jet_err)};
  });

  criterion(9, "determinism: two verify exampleA runs give identical canonical JSON", [&] {
    RunConfig c;
    c.command = "verify";
    c.entry = "exampleA";
    c.seed = 9;
    c.canonical = true;
    const std::string a = to_json(run_verify(c)).dump(2);
    const std::string b = to_json(run_verify(c)).dump(2);
    return Outcome{a == b && !a.empty(), fmt("%.0f bytes", static_cast<double>(a.size()))};
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
