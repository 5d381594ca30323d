#ifndef ORLICZ_SUITE_HPP
#define ORLICZ_SUITE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orlicz/family.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/kernel.hpp"
#include "orlicz/phi.hpp"

#include "json.hpp"

namespace orlicz {

struct DensityPlan {
  std::string u_expr = "x0";
  double support_center = 0.5;   // target u is restricted to this ball
  double support_radius = 0.25;
  std::vector<double> ladder{0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625};

  static DensityPlan from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct Scenario {
  std::string id;
  DomainSpec domain;
  KernelSpec kernel;
  nlohmann::json phi_expr;
  FamilySpec family;
  std::uint64_t seed = 1;
  DensityPlan density;
  std::vector<std::string> suites;  // optional override of the global list

  static Scenario from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct SuiteConfig {
  std::vector<Scenario> scenarios;
  std::vector<std::string> suites;  // subset of the known suite names
  std::map<std::string, double> tolerances;

  double tol(const std::string& suite, double fallback) const;

  static SuiteConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

const std::vector<std::string>& known_suites();

struct SuiteRow {
  std::string suite;
  std::string scenario;
  std::string inequality;  // which bound the suite certifies
  long checked = 0;
  double worst_slack = 0.0;  // max over checks of (lhs - rhs); <= tol passes
  bool pass = true;
  double elapsed_sec = 0.0;  // in-memory only; reports stay byte-deterministic
};

struct Report {
  nlohmann::ordered_json environment;
  nlohmann::ordered_json config_echo;
  std::vector<SuiteRow> rows;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
  std::string to_markdown() const;
};

/// Runs every selected suite over every scenario. Check failures are
/// recorded in the rows, never thrown.
Report run_suite(const SuiteConfig& config);

/// Runs the approximation-chain experiment for every scenario.
Report run_density(const SuiteConfig& config);

/// One rung of the approximation chain: clamp values, drop small values,
/// truncate the support, mollify; returns the approximant.
GridFunction density_chain(const GridFunction& u, double eps);

/// Writes report.json, report.md and tables/rows.csv under out_dir.
/// format: "json", "csv", "markdown" or "all".
void emit_report(const Report& report, const std::string& out_dir,
                 const std::string& format = "all");

/// The built-in configuration: quadratic integrand on the unit interval.
SuiteConfig default_suite_config();

nlohmann::ordered_json environment_fingerprint();

}  // namespace orlicz

#endif
