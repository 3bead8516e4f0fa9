#pragma once

// Check suites over sampled points and their JSON / CSV reports.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvlab/catalog.hpp"
#include "curvlab/residual.hpp"

namespace curvlab {

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kConvention =
    "R(X,Y,X,Y) > 0 on round spheres; Ric_jl = g^ik R_ijkl; covariant derivative index first";

enum class ReportFormat { Json, Csv };

struct RunConfig {
  std::string command = "verify";  // verify | identities
  std::string entry = "exampleA";
  EntryParams params;
  int samples = 20;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  // overrides by check name
  std::string out;                           // empty: stdout
  ReportFormat format = ReportFormat::Json;
  int jobs = 1;
  int max_order = 6;
  bool canonical = false;
};

struct CheckInfo {
  std::string name;
  std::string formula;  // reported as paper_ref
  double tolerance;
};

// Every check a report can contain, in report order.
const std::vector<CheckInfo>& check_catalog();
const CheckInfo& check_info(const std::string& name);
bool is_known_check(const std::string& name);

// Throws ParameterError on invalid values or unknown check names.
void validate(const RunConfig& config);

struct CheckReport {
  std::string name;
  std::string formula;
  IdentityResidual result;
  bool expected_pass = true;
  bool budget_exceeded = false;
  double seconds = 0.0;
  std::vector<double> point_abs;  // per sample point, NaN where not evaluated
  std::vector<double> point_rel;

  bool as_declared() const { return result.pass == expected_pass; }
};

struct RunReport {
  RunConfig config;
  int dim = 0;
  std::map<std::string, double> parameters;  // resolved entry parameters
  std::vector<Point> points;
  std::vector<CheckReport> checks;
  double total_seconds = 0.0;

  // Conjunction of passes over checks declared to pass.
  bool verdict() const;
  // Every check matched its declaration.
  bool as_declared() const;
  // Names of checks that ran out of jet order.
  std::vector<std::string> budget_failures() const;
};

// Runs the entry's suite: QE checks and the condition probe for QE entries,
// the universal identities otherwise.
RunReport run_verify(const RunConfig& config);
// Universal identities on `samples` random metrics of dimension n, one point each.
RunReport run_identities(const RunConfig& config);

nlohmann::ordered_json to_json(const RunReport& report);
std::string to_csv(const RunReport& report);
std::string render(const RunReport& report);

// Process exit status: 0 as declared, 1 unexpected outcome, 3 jet budget exceeded.
int exit_status(const RunReport& report);

}  // namespace curvlab
