// curvlab command-line front end.
//
// Exit codes: 0 every check behaved as declared, 1 unexpected outcome,
// 2 invalid configuration, 3 jet order budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curvlab/catalog.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/qe.hpp"
#include "curvlab/report.hpp"

namespace {

using namespace curvlab;
using json = nlohmann::ordered_json;

constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

// Pulls --tol.<check>=<value> and --tol.<check> <value> out of argv; CLI11
// cannot declare options with open-ended names.
std::vector<std::string> extract_tolerances(int argc, char** argv, std::map<std::string, double>& tolerances) {
  std::vector<std::string> rest;
  for (int i = 0; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind("--tol.", 0) != 0) {
      rest.push_back(std::move(arg));
      continue;
    }
    std::string key = arg.substr(6), value;
    const auto eq = key.find('=');
    if (eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else if (i + 1 < argc) {
      value = argv[++i];
    } else {
      throw ParameterError("missing value for --tol." + key);
    }
    if (!is_known_check(key)) throw ParameterError("unknown check '" + key + "' in --tol." + key);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) throw ParameterError("invalid tolerance '" + value + "' for " + key);
    tolerances[key] = v;
  }
  return rest;
}

int default_jobs() {
  const char* env = std::getenv("CURVLAB_JOBS");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    const int jobs = std::stoi(env, &used);
    if (used == std::string(env).size() && jobs >= 1) return jobs;
  } catch (const std::exception&) {
  }
  throw ParameterError(std::string("CURVLAB_JOBS must be a positive integer, got '") + env + "'");
}

struct Options {
  std::string entry = "exampleA";
  std::optional<int> p, q, n;
  std::optional<double> m, lambda;
  int samples = 20;
  std::uint64_t seed = 1;
  double amplitude = 0.2;
  std::string out;
  std::string format = "json";
  int jobs = 1;
  int max_order = 6;
  bool canonical = false;
  std::string which = "ricci";
  std::vector<double> point;
};

void add_entry_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--entry", o.entry, "Catalog entry")->check(CLI::IsMember(catalog_names()));
  cmd->add_option("--p", o.p, "Dimension of the first sphere fiber (exampleA)");
  cmd->add_option("--q", o.q, "Dimension of the second sphere fiber (exampleA)");
  cmd->add_option("--m", o.m, "Quasi-Einstein parameter m");
  cmd->add_option("--lambda", o.lambda, "Quasi-Einstein constant lambda (cylinder)");
  cmd->add_option("--n", o.n, "Dimension");
  cmd->add_option("--amplitude", o.amplitude, "Random metric amplitude");
}

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--samples", o.samples, "Number of sample points");
  cmd->add_option("--seed", o.seed, "Sampling and random-metric seed");
  cmd->add_option("--out", o.out, "Report path (default: stdout)");
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--jobs", o.jobs, "Worker threads (default: $CURVLAB_JOBS or 1)");
  cmd->add_option("--max-order", o.max_order, "Largest metric jet order to evaluate");
  cmd->add_flag("--canonical", o.canonical, "Omit timing and parallelism from the report");
}

EntryParams entry_params(const Options& o) {
  EntryParams p;
  p.p = o.p;
  p.q = o.q;
  p.n = o.n;
  p.m = o.m;
  p.lambda = o.lambda;
  p.seed = o.seed;
  p.amplitude = o.amplitude;
  return p;
}

RunConfig run_config(const std::string& command, const Options& o, const std::map<std::string, double>& tols) {
  RunConfig c;
  c.command = command;
  c.entry = o.entry;
  c.params = entry_params(o);
  c.samples = o.samples;
  c.seed = o.seed;
  c.tolerances = tols;
  c.out = o.out;
  c.format = o.format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
  c.jobs = o.jobs;
  c.max_order = o.max_order;
  c.canonical = o.canonical;
  return c;
}

void print_summary(std::ostream& os, const RunReport& report) {
  for (const auto& c : report.checks) {
    os << std::left << std::setw(22) << c.name << ' ' << (c.result.pass ? "pass" : "FAIL") << "  max_rel "
       << std::setprecision(3) << std::scientific << c.result.max_rel << "  tol " << c.result.tolerance
       << std::defaultfloat;
    if (!c.as_declared()) os << "  (declared " << (c.expected_pass ? "pass" : "fail") << ")";
    else if (!c.expected_pass) os << "  (fails as declared)";
    os << '\n';
  }
  os << "verdict: " << (report.verdict() ? "pass" : "fail")
     << (report.as_declared() ? ", all checks as declared" : ", unexpected outcome") << '\n';
}

int emit(const RunReport& report) {
  const std::string text = render(report);
  if (report.config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(report.config.out);
    if (!f) throw ParameterError("cannot write '" + report.config.out + "'");
    f << text;
    print_summary(std::cout, report);
  }
  const auto budget = report.budget_failures();
  if (!budget.empty()) {
    std::cerr << "error: jet order budget exceeded in:";
    for (const auto& name : budget) std::cerr << ' ' << name;
    std::cerr << " (raise --max-order)\n";
  }
  return exit_status(report);
}

// Coordinate components, row-major.
json tensor_json(const TensorValue& t) {
  json comps = json::array();
  for (double v : t.components()) comps.push_back(v);
  return comps;
}

void print_tensor(std::ostream& os, const std::string& which, const TensorValue& t) {
  os << which << "  valence " << to_string(t.valence()) << "  dim " << t.dim() << '\n';
  os << std::setprecision(15);
  for (std::size_t f = 0; f < t.size(); ++f) {
    os << '[';
    const auto idx = t.unflat(f);
    for (std::size_t s = 0; s < idx.size(); ++s) os << (s ? "," : "") << idx[s];
    os << "] " << t[f] << '\n';
  }
}

TensorValue scalar_value(double v, const Point& p) {
  TensorValue t(0, Valence{}, p);
  t[0] = v;
  return t;
}

const std::vector<std::string>& tensor_names() {
  static const std::vector<std::string> names = {
      "metric", "christoffel", "riemann", "ricci",       "scalar",     "schouten",   "weyl",        "cotton",
      "bach",   "weyl-radial", "hessian-u", "div4-weyl", "div3-cotton", "ricci-eigenvalues"};
  return names;
}

int cmd_tensor(const Options& o) {
  const CatalogEntry entry = build_entry(o.entry, entry_params(o));
  const MetricChart& chart = entry.chart;
  const Point p = o.point.empty() ? entry.box.center() : Point{o.point};
  if (static_cast<int>(p.size()) != chart.dim())
    throw ParameterError("--point needs " + std::to_string(chart.dim()) + " coordinates for '" + entry.name + "'");
  if (!chart.in_safe_domain(p)) throw DomainError("point outside the safe domain of '" + entry.name + "'");

  json out;
  out["entry"] = entry.name;
  out["which"] = o.which;
  out["point"] = p.coords;
  std::optional<TensorValue> t;
  const auto& w = o.which;
  if (w == "metric") {
    PointGeometry g(chart, p, 0);
    t = metric_field().at(g);
  } else if (w == "christoffel") {
    t = christoffel(chart, p);
  } else if (w == "riemann") {
    t = riemann(chart, p);
  } else if (w == "ricci") {
    t = ricci(chart, p);
  } else if (w == "scalar") {
    t = scalar_value(scalar_curvature(chart, p), p);
  } else if (w == "schouten") {
    t = schouten(chart, p);
  } else if (w == "weyl") {
    t = weyl(chart, p);
  } else if (w == "cotton") {
    t = cotton(chart, p);
  } else if (w == "bach") {
    t = bach(chart, p);
  } else if (w == "div4-weyl") {
    PointGeometry g(chart, p, std::min(o.max_order, 6));
    t = weyl_fourth_divergence_field().at(g);
  } else if (w == "div3-cotton") {
    PointGeometry g(chart, p, std::min(o.max_order, 6));
    t = cotton_third_divergence_field().at(g);
  } else if (w == "ricci-eigenvalues") {
    const RicciEigensystem e = ricci_eigensystem(chart, p);
    t = TensorValue(chart.dim(), covariant_valence(1), p);
    for (int i = 0; i < chart.dim(); ++i) (*t)(i) = e.values[i];
  } else if (w == "weyl-radial" || w == "hessian-u") {
    if (!entry.qe) throw ParameterError("'" + w + "' needs a quasi-Einstein entry");
    QEPoint q(*entry.qe, p, 3);
    const TensorField du = covariant_derivative(potential_field(*entry.qe));
    if (w == "hessian-u") {
      t = covariant_derivative(du).at(q.geometry());
    } else {
      // W(d_i, d_j, d_k, grad u) in coordinates
      const TensorValue wv = weyl_field().at(q.geometry());
      const TensorValue dv = du.at(q.geometry());
      const Matrix& ginv = q.geometry().inverse_metric_value();
      const int n = chart.dim();
      std::vector<double> grad(n, 0.0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) grad[a] += ginv(a, b) * dv(b);
      t = TensorValue(n, covariant_valence(3), p);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) (*t)(i, j, k) += wv(i, j, k, l) * grad[l];
      out["max_norm"] = q.radial_weyl().max_abs();
    }
  } else {
    throw ParameterError("unknown tensor '" + w + "'");
  }

  if (o.format == "json") {
    out["valence"] = to_string(t->valence());
    out["components"] = tensor_json(*t);
    std::cout << out.dump(2) << '\n';
  } else {
    print_tensor(std::cout, w, *t);
    if (out.contains("max_norm")) std::cout << "max_norm " << out["max_norm"].get<double>() << '\n';
  }
  return 0;
}

int cmd_list() {
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = build_entry(name, EntryParams{});
    std::cout << std::left << std::setw(12) << name << " n=" << e.chart.dim() << "  " << e.citation << '\n';
  }
  std::cout << "\nchecks:\n";
  for (const auto& c : check_catalog())
    std::cout << "  " << std::left << std::setw(22) << c.name << " tol " << c.tolerance << "  " << c.formula << '\n';
  std::cout << "\ntensors:";
  for (const auto& t : tensor_names()) std::cout << ' ' << t;
  std::cout << '\n';
  return 0;
}

int run(int argc, char** argv) {
  std::map<std::string, double> tolerances;
  std::vector<std::string> args = extract_tolerances(argc, argv, tolerances);

  Options o;
  o.jobs = default_jobs();
  CLI::App app{"Curvature of coordinate metrics and quasi-Einstein identity checks", "curvlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CLI::App* verify = app.add_subcommand("verify", "Run the check suite of a catalog entry");
  add_entry_options(verify, o);
  add_run_options(verify, o);

  CLI::App* identities = app.add_subcommand("identities", "Universal curvature identities on random metrics");
  identities->add_option("--n", o.n, "Dimension (3, 4 or 5)");
  identities->add_option("--amplitude", o.amplitude, "Random metric amplitude");
  add_run_options(identities, o);

  CLI::App* tensor = app.add_subcommand("tensor", "Print a tensor of a catalog entry at a point");
  add_entry_options(tensor, o);
  tensor->add_option("--which", o.which, "Tensor name")->check(CLI::IsMember(tensor_names()));
  tensor->add_option("--point", o.point, "Coordinates, comma separated (default: sample box center)")
      ->delimiter(',');
  tensor->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  tensor->add_option("--max-order", o.max_order, "Largest metric jet order to evaluate");

  CLI::App* list = app.add_subcommand("list", "List catalog entries, checks and tensors");

  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*list) return cmd_list();
  if (*tensor) {
    if (tensor->count("--format") == 0) o.format = "text";
    return cmd_tensor(o);
  }
  if (*identities) return emit(run_identities(run_config("identities", o, tolerances)));
  return emit(run_verify(run_config("verify", o, tolerances)));
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const JetBudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnexpected;
  }
}
