#include "curvlab/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "curvlab/identities.hpp"

namespace curvlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class Kind {
  Residual,     // max over per-point residuals, relative
  MaxStat,      // max of a nonnegative per-point statistic
  LowerBound,   // min of a per-point statistic, pass if >= -tolerance
  Spread,       // standard deviation of a per-point value
  TracelessNorm
};

struct CheckSpec {
  CheckInfo info;
  Kind kind;
};

const std::vector<CheckSpec>& specs() {
  static const std::vector<CheckSpec> all = {
      {{"qe_equation", "hess u = (u/m)(Ric - lambda g)", 1e-9}, Kind::Residual},
      {{"trace", "Delta u = (u/m)(R - lambda n)", 1e-9}, Kind::Residual},
      {{"traceless", "u Ric0 = m (hess u)0", 1e-9}, Kind::Residual},
      {{"static_condition", "Delta u = -lambda u (m = 1)", 1e-9}, Kind::Residual},
      {{"scalar_bound", "R >= n(n-1) lambda / (m+n-1)", 1e-8}, Kind::LowerBound},
      {{"lemma_cwt", "u C_ijk = m W_ijkl u_l + T_ijk", 1e-9}, Kind::Residual},
      {{"contraction_identity", "C_ijk u_i R_jk = -(n-2)/(2(m+n-2)) C_ijk T_ijk", 1e-9}, Kind::Residual},
      {{"bochner", "(1/2) div(u grad |Ric0|^2) Bochner formula", 1e-7}, Kind::Residual},
      {{"traceless_norm", "|Ric0|^2 = -(m+n-1)/(n(m-1)) (R - n lambda)(R - n(n-1) lambda/(m+n-1))", 1e-9},
       Kind::TracelessNorm},
      {{"bach_from_cotton", "u B_ij = m(n-3)/(n-2)^2 C_jli u_l (zero radial Weyl)", 1e-9}, Kind::Residual},
      {{"weyl_zero", "W = 0", 1e-9}, Kind::MaxStat},
      {{"cotton_zero", "C = 0", 1e-9}, Kind::MaxStat},
      {{"radial_weyl", "W(., ., ., grad u) = 0", 1e-8}, Kind::MaxStat},
      {{"div4_weyl", "nabla_j nabla_k nabla_l nabla_i W_ijkl = 0", 1e-7}, Kind::MaxStat},
      {{"div3_cotton", "nabla_j nabla_i nabla_k C_kij = 0", 1e-7}, Kind::MaxStat},
      {{"constant_scalar", "R constant", 1e-9}, Kind::Spread},
      {{"nonneg_sectional", "sec >= 0", 1e-8}, Kind::LowerBound},
      {{"bach_flat", "B = 0", 1e-8}, Kind::MaxStat},
      {{"riemann_symmetry", "R_ijkl = -R_jikl = -R_ijlk = R_klij", 1e-8}, Kind::Residual},
      {{"first_bianchi", "R_ijkl + R_jkil + R_kijl = 0", 1e-8}, Kind::Residual},
      {{"metric_compatibility", "nabla g = 0", 1e-8}, Kind::Residual},
      {{"contracted_bianchi", "div Ric = dR / 2", 1e-8}, Kind::Residual},
      {{"weyl_routes", "W from Ric decomposition = W via Schouten", 1e-8}, Kind::Residual},
      {{"weyl_trace_free", "W totally trace-free", 1e-8}, Kind::Residual},
      {{"cotton_routes", "C from nabla Ric = nabla_i A_jk - nabla_j A_ik", 1e-8}, Kind::Residual},
      {{"cotton_weyl", "C_ijk = -(n-2)/(n-3) nabla_l W_ijkl", 1e-8}, Kind::Residual},
      {{"bach_divergence", "nabla_i B_ij = (n-4)/(n-2)^2 C_jks R_ks", 1e-8}, Kind::Residual},
      {{"bach_symmetry", "B symmetric, trace-free for n >= 4", 1e-8}, Kind::Residual},
      {{"cubic_identity", "n/(n-2) tr(Ric0^3) - W_ijkl R_ik R_jl = R_ij R_jk R_ik - R_ijkl R_jl R_ik - R |Ric0|^2/(n-1)",
        1e-8},
       Kind::Residual},
      {{"ricci_identity", "(nabla_i nabla_j - nabla_j nabla_i) R_kl = R_ijks R_sl + R_ijls R_ks", 1e-8},
       Kind::Residual},
      {{"eigen_commutator", "(nabla_i nabla_j - nabla_j nabla_i) R_ik R_jk = sum_{i<j} R_ijij (l_i - l_j)^2", 1e-8},
       Kind::Residual},
      {{"n3_bach_div", "nabla_j B_ij = -R_jk C_ijk (n = 3)", 1e-8}, Kind::Residual},
  };
  return all;
}

const CheckSpec& spec_of(const std::string& name) {
  for (const auto& s : specs())
    if (s.info.name == name) return s;
  throw ParameterError("unknown check '" + name + "'");
}

enum class Status { Ok, Skipped, Budget, Hypothesis };

// One check at one point.
struct Cell {
  Status status = Status::Skipped;
  double abs = kNaN;
  double rel = kNaN;
  double value = kNaN;  // statistic for non-residual kinds
  TracelessNormSample traceless;
  std::string message;
  double seconds = 0.0;
};

struct PointResult {
  std::map<std::string, Cell> cells;
  std::exception_ptr error;
};

double tolerance_for(const RunConfig& config, const std::string& name) {
  const auto it = config.tolerances.find(name);
  return it != config.tolerances.end() ? it->second : spec_of(name).info.tolerance;
}

template <class F>
Cell timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Cell c;
  try {
    c = f();
  } catch (const JetBudgetError& e) {
    c = Cell{};
    c.status = Status::Budget;
    c.message = e.what();
  } catch (const HypothesisViolation& e) {
    c = Cell{};
    c.status = Status::Hypothesis;
    c.message = e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

Cell residual_cell(const PointResidual& r) {
  Cell c;
  c.status = Status::Ok;
  c.abs = r.abs();
  c.rel = r.rel();
  return c;
}

Cell value_cell(double v) {
  Cell c;
  c.status = Status::Ok;
  c.value = v;
  c.abs = std::abs(v);
  c.rel = std::abs(v);
  return c;
}

// Runs f(i) for i in [0, count) on `jobs` threads; each index is handled once.
void parallel_for(int count, int jobs, const std::function<void(int)>& f) {
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) f(i);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::min(jobs, count); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

void rethrow_first(const std::vector<PointResult>& results) {
  for (const auto& r : results)
    if (r.error) std::rethrow_exception(r.error);
}

std::vector<std::string> qe_check_names(int n, double m) {
  std::vector<std::string> names = {"qe_equation", "trace", "traceless"};
  if (m == 1.0) names.push_back("static_condition");
  names.push_back("scalar_bound");
  if (n >= 3) {
    names.insert(names.end(), {"lemma_cwt", "contraction_identity", "bochner"});
  }
  if (m != 1.0) names.push_back("traceless_norm");
  if (n >= 4) names.push_back("bach_from_cotton");
  if (n >= 3) names.insert(names.end(), {"weyl_zero", "cotton_zero", "radial_weyl"});
  if (n >= 4) names.push_back("div4_weyl");
  if (n == 3) names.push_back("div3_cotton");
  names.insert(names.end(), {"constant_scalar", "nonneg_sectional"});
  if (n >= 3) names.push_back("bach_flat");
  return names;
}

int qe_order(int n) { return n >= 3 ? 6 : 2; }

PointResult evaluate_qe_point(const QEStructure& s, const Point& p, const std::vector<std::string>& names,
                              int order, const ProbeOptions& probe, std::uint64_t point_seed) {
  PointResult out;
  try {
    QEPoint q(s, p, order);
    for (const auto& name : names) {
      Cell c = timed([&]() -> Cell {
        if (name == "qe_equation") return residual_cell(qe_residual(q));
        if (name == "trace") return residual_cell(trace_residual(q));
        if (name == "traceless") return residual_cell(traceless_residual(q));
        if (name == "static_condition") return residual_cell(static_condition_residual(q));
        if (name == "scalar_bound") {
          Cell c = value_cell(scalar_bound_margin(q));
          c.abs = c.rel = std::max(0.0, -c.value);
          return c;
        }
        if (name == "lemma_cwt") return residual_cell(lemma_cwt_residual(q));
        if (name == "contraction_identity") return residual_cell(contraction_identity_residual(q));
        if (name == "bochner") return residual_cell(bochner_residual(q));
        if (name == "traceless_norm") {
          Cell c;
          c.status = Status::Ok;
          c.traceless = traceless_norm_sample(q);
          c.abs = std::abs(c.traceless.direct - c.traceless.formula);
          const double scale = std::max(std::abs(c.traceless.direct), std::abs(c.traceless.formula));
          c.rel = scale < 1e-6 ? c.abs : c.abs / scale;
          c.value = c.traceless.direct;
          return c;
        }
        if (name == "bach_from_cotton") return residual_cell(bach_from_cotton_qe_residual(q));
        if (name == "weyl_zero") return value_cell(q.weyl().max_abs());
        if (name == "cotton_zero") return value_cell(q.cotton().max_abs());
        if (name == "radial_weyl") return value_cell(q.radial_weyl().max_abs());
        if (name == "div4_weyl") return value_cell(weyl_fourth_divergence_field().at(q.geometry())[0]);
        if (name == "div3_cotton") return value_cell(cotton_third_divergence_field().at(q.geometry())[0]);
        if (name == "constant_scalar") return value_cell(q.scalar());
        if (name == "nonneg_sectional") {
          Cell c = value_cell(min_sectional_curvature(q.geometry(), probe.planes_per_point, point_seed));
          c.abs = c.rel = std::max(0.0, -c.value);
          return c;
        }
        if (name == "bach_flat") return value_cell(q.bach().max_abs());
        throw ParameterError("check '" + name + "' does not apply to quasi-Einstein entries");
      });
      out.cells.emplace(name, std::move(c));
    }
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

PointResult evaluate_universal_point(const MetricChart& chart, const Point& p, int order) {
  PointResult out;
  try {
    if (!chart.in_safe_domain(p)) throw DomainError("sample point outside the safe domain");
    PointGeometry geom(chart, p, order);
    for (const auto& name : universal_identity_names(chart.dim())) {
      Cell c = timed([&]() -> Cell {
        if (name == "riemann_symmetry") return residual_cell(riemann_symmetry_residual(geom));
        if (name == "first_bianchi") return residual_cell(first_bianchi_residual(geom));
        if (name == "metric_compatibility") return residual_cell(metric_compatibility_residual(geom));
        if (name == "contracted_bianchi") return residual_cell(contracted_bianchi_residual(geom));
        if (name == "weyl_routes") return residual_cell(weyl_routes_residual(geom));
        if (name == "weyl_trace_free") return residual_cell(weyl_trace_residual(geom));
        if (name == "cotton_routes") return residual_cell(cotton_routes_residual(geom));
        if (name == "cotton_weyl") return residual_cell(cotton_weyl_residual(geom));
        if (name == "bach_divergence") return residual_cell(bach_divergence_residual(geom));
        if (name == "bach_symmetry") return residual_cell(bach_symmetry_residual(geom));
        if (name == "cubic_identity") return residual_cell(cubic_identity_residual(geom));
        if (name == "ricci_identity") return residual_cell(ricci_identity_residual(geom));
        if (name == "eigen_commutator") {
          const auto r = eigen_commutator_residual(geom);
          if (!r) {
            Cell c;
            c.status = Status::Skipped;
            c.message = "Ricci eigenvalue gap below 1e-6";
            return c;
          }
          return residual_cell(*r);
        }
        if (name == "n3_bach_div") return residual_cell(n3_bach_div_residual(geom));
        throw ParameterError("unknown identity '" + name + "'");
      });
      out.cells.emplace(name, std::move(c));
    }
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

std::string count_note(int count, const std::string& what) {
  return std::to_string(count) + (count == 1 ? " point " : " points ") + what;
}

CheckReport aggregate_check(const std::string& name, const std::vector<PointResult>& results, const RunConfig& config,
                            double m) {
  const CheckSpec& spec = spec_of(name);
  CheckReport rep;
  rep.name = name;
  rep.formula = spec.info.formula;
  IdentityResidual& r = rep.result;
  r.name = name;
  r.tolerance = tolerance_for(config, name);

  std::vector<const Cell*> ok;
  int budget = 0, hypothesis = 0, skipped = 0;
  std::string budget_message, hypothesis_message;
  for (const auto& pr : results) {
    const auto it = pr.cells.find(name);
    const Cell* c = it == pr.cells.end() ? nullptr : &it->second;
    rep.point_abs.push_back(c && c->status == Status::Ok ? c->abs : kNaN);
    rep.point_rel.push_back(c && c->status == Status::Ok ? c->rel : kNaN);
    if (!c) continue;
    rep.seconds += c->seconds;
    switch (c->status) {
      case Status::Ok:
        ok.push_back(c);
        break;
      case Status::Budget:
        if (budget++ == 0) budget_message = c->message;
        break;
      case Status::Hypothesis:
        if (hypothesis++ == 0) hypothesis_message = c->message;
        break;
      case Status::Skipped:
        ++skipped;
        break;
    }
  }
  r.points_checked = static_cast<int>(ok.size());

  switch (spec.kind) {
    case Kind::Residual:
    case Kind::MaxStat:
      for (const Cell* c : ok) {
        r.max_abs = std::max(r.max_abs, c->abs);
        r.max_rel = std::max(r.max_rel, c->rel);
      }
      r.observed = r.max_abs;
      r.pass = (spec.kind == Kind::Residual ? r.max_rel : r.max_abs) <= r.tolerance;
      break;
    case Kind::LowerBound:
      r.observed = ok.empty() ? 0.0 : std::numeric_limits<double>::infinity();
      for (const Cell* c : ok) r.observed = std::min(r.observed, c->value);
      r.max_abs = r.max_rel = std::max(0.0, -r.observed);
      r.pass = r.observed >= -r.tolerance;
      break;
    case Kind::Spread: {
      double mean = 0.0;
      for (const Cell* c : ok) mean += c->value;
      mean /= std::max<std::size_t>(ok.size(), 1);
      double var = 0.0;
      for (const Cell* c : ok) {
        var += (c->value - mean) * (c->value - mean);
        r.max_abs = std::max(r.max_abs, std::abs(c->value - mean));
      }
      r.observed = std::sqrt(var / std::max<std::size_t>(ok.size(), 1));
      r.max_rel = r.observed;
      r.pass = r.observed <= r.tolerance;
      r.note = "mean " + [&] {
        std::ostringstream os;
        os << std::setprecision(17) << mean;
        return os.str();
      }();
      break;
    }
    case Kind::TracelessNorm: {
      std::vector<TracelessNormSample> samples;
      for (const Cell* c : ok) samples.push_back(c->traceless);
      try {
        const IdentityResidual t = traceless_norm_formula_check(samples, m, r.tolerance);
        r.max_abs = t.max_abs;
        r.max_rel = t.max_rel;
        r.observed = t.observed;
        r.pass = t.pass;
      } catch (const HypothesisViolation& e) {
        ++hypothesis;
        hypothesis_message = e.what();
        r.pass = false;
      }
      break;
    }
  }

  std::vector<std::string> notes;
  if (!r.note.empty()) notes.push_back(r.note);
  if (budget > 0) {
    rep.budget_exceeded = true;
    r.pass = false;
    notes.push_back("jet budget exceeded: " + budget_message);
  }
  if (hypothesis > 0) {
    r.pass = false;
    notes.push_back("hypothesis violated: " + hypothesis_message);
  }
  if (skipped > 0) notes.push_back(count_note(skipped, "skipped (degenerate)"));
  r.note.clear();
  for (std::size_t i = 0; i < notes.size(); ++i) r.note += (i ? "; " : "") + notes[i];
  return rep;
}

std::vector<PointResult> run_points(int count, int jobs, const std::function<PointResult(int)>& eval) {
  std::vector<PointResult> results(count);
  parallel_for(count, jobs, [&](int i) { results[i] = eval(i); });
  rethrow_first(results);
  return results;
}

std::map<std::string, double> resolved_parameters(const CatalogEntry& e, const RunConfig& config) {
  std::map<std::string, double> out;
  out["n"] = e.chart.dim();
  if (e.qe) {
    out["m"] = e.qe->m;
    out["lambda"] = e.qe->lambda;
  }
  if (e.name == "exampleA" && e.warped) {
    out["p"] = e.warped->p;
    out["q"] = e.warped->q;
  }
  if (e.name == "random") out["amplitude"] = config.params.amplitude;
  return out;
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> all = [] {
    std::vector<CheckInfo> v;
    for (const auto& s : specs()) v.push_back(s.info);
    return v;
  }();
  return all;
}

const CheckInfo& check_info(const std::string& name) { return spec_of(name).info; }

bool is_known_check(const std::string& name) {
  return std::any_of(specs().begin(), specs().end(), [&](const CheckSpec& s) { return s.info.name == name; });
}

void validate(const RunConfig& config) {
  if (config.command != "verify" && config.command != "identities")
    throw ParameterError("unknown command '" + config.command + "'");
  if (config.samples < 1) throw ParameterError("--samples must be >= 1");
  if (config.jobs < 1) throw ParameterError("--jobs must be >= 1");
  if (config.max_order < 0) throw ParameterError("--max-order must be >= 0");
  for (const auto& [name, tol] : config.tolerances) {
    if (!is_known_check(name)) throw ParameterError("unknown check '" + name + "' in tolerance override");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw ParameterError("tolerance for '" + name + "' must be positive");
  }
  if (config.command == "identities") {
    const int n = config.params.n.value_or(4);
    if (n < 3 || n > 5) throw ParameterError("identities requires 3 <= n <= 5");
  }
}

bool RunReport::verdict() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return !c.expected_pass || c.result.pass; });
}

bool RunReport::as_declared() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.as_declared(); });
}

std::vector<std::string> RunReport::budget_failures() const {
  std::vector<std::string> names;
  for (const auto& c : checks)
    if (c.budget_exceeded) names.push_back(c.name);
  return names;
}

RunReport run_verify(const RunConfig& config) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();
  EntryParams params = config.params;
  params.seed = config.seed;
  const CatalogEntry entry = build_entry(config.entry, params);
  const int n = entry.chart.dim();

  RunReport report;
  report.config = config;
  report.dim = n;
  report.parameters = resolved_parameters(entry, config);
  report.points = sample_points(entry.box, config.samples, config.seed);

  std::vector<std::string> names;
  std::vector<PointResult> results;
  double m = 0.0;
  if (entry.qe) {
    const QEStructure& s = *entry.qe;
    m = s.m;
    names = qe_check_names(n, s.m);
    const int order = std::min(qe_order(n), config.max_order);
    ProbeOptions probe;
    probe.seed = config.seed;
    results = run_points(config.samples, config.jobs, [&](int i) {
      return evaluate_qe_point(s, report.points[i], names, order, probe, mix_seed(config.seed, i));
    });
  } else {
    names = universal_identity_names(n);
    const int order = std::min(universal_identity_order(), config.max_order);
    results = run_points(config.samples, config.jobs,
                         [&](int i) { return evaluate_universal_point(entry.chart, report.points[i], order); });
  }
  for (const auto& name : names) {
    CheckReport c = aggregate_check(name, results, config, m);
    c.expected_pass = entry.expected_pass(name);
    report.checks.push_back(std::move(c));
  }
  report.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

RunReport run_identities(const RunConfig& config) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = config.params.n.value_or(4);
  RunReport report;
  report.config = config;
  report.dim = n;
  report.parameters = {{"n", n}, {"amplitude", config.params.amplitude}};
  const SampleBox box{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
  for (int i = 0; i < config.samples; ++i)
    report.points.push_back(sample_points(box, 1, mix_seed(config.seed, i)).front());

  const int order = std::min(universal_identity_order(), config.max_order);
  const auto results = run_points(config.samples, config.jobs, [&](int i) {
    const MetricChart chart = build_random_analytic_chart(n, mix_seed(config.seed, i), config.params.amplitude);
    return evaluate_universal_point(chart, report.points[i], order);
  });
  for (const auto& name : universal_identity_names(n)) report.checks.push_back(aggregate_check(name, results, config, 0.0));
  report.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

namespace {

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::ordered_json to_json(const RunReport& report) {
  using json = nlohmann::ordered_json;
  const RunConfig& c = report.config;
  json config;
  config["command"] = c.command;
  if (c.command == "verify") config["entry"] = c.entry;
  json params = json::object();
  for (const auto& [k, v] : report.parameters) params[k] = v;
  config["parameters"] = params;
  config["samples"] = c.samples;
  config["seed"] = c.seed;
  config["max_order"] = c.max_order;
  json tols = json::object();
  for (const auto& [k, v] : c.tolerances) tols[k] = v;
  config["tolerance_overrides"] = tols;
  if (!c.canonical) config["jobs"] = c.jobs;

  json checks = json::array();
  for (const auto& ch : report.checks) {
    json j;
    j["name"] = ch.name;
    j["paper_ref"] = ch.formula;
    j["max_abs"] = number(ch.result.max_abs);
    j["max_rel"] = number(ch.result.max_rel);
    j["tolerance"] = ch.result.tolerance;
    j["pass"] = ch.result.pass;
    j["expected_pass"] = ch.expected_pass;
    j["points"] = ch.result.points_checked;
    j["observed"] = number(ch.result.observed);
    j["note"] = ch.result.note;
    checks.push_back(std::move(j));
  }

  json out;
  out["schema_version"] = kSchemaVersion;
  out["tool_version"] = kToolVersion;
  out["convention"] = kConvention;
  out["config"] = std::move(config);
  out["checks"] = std::move(checks);
  out["verdict"] = report.verdict();
  out["as_declared"] = report.as_declared();
  if (!c.canonical) {
    json timing;
    timing["total_seconds"] = report.total_seconds;
    json per = json::object();
    for (const auto& ch : report.checks) per[ch.name] = ch.seconds;
    timing["checks"] = per;
    out["timing"] = timing;
  }
  return out;
}

std::string to_csv(const RunReport& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "check,point,abs,rel";
  for (int i = 0; i < report.dim; ++i) os << ",x" << i;
  os << '\n';
  for (const auto& ch : report.checks)
    for (std::size_t k = 0; k < ch.point_abs.size(); ++k) {
      os << ch.name << ',' << k << ',';
      if (std::isfinite(ch.point_abs[k])) os << ch.point_abs[k];
      os << ',';
      if (std::isfinite(ch.point_rel[k])) os << ch.point_rel[k];
      for (double x : report.points[k].coords) os << ',' << x;
      os << '\n';
    }
  return os.str();
}

std::string render(const RunReport& report) {
  if (report.config.format == ReportFormat::Csv) return to_csv(report);
  return to_json(report).dump(2) + "\n";
}

int exit_status(const RunReport& report) {
  if (!report.budget_failures().empty()) return 3;
  return report.as_declared() ? 0 : 1;
}

}  // namespace curvlab
