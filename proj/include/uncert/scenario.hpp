#ifndef UNCERT_SCENARIO_HPP
#define UNCERT_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "uncert/boxlab.hpp"
#include "uncert/jsonio.hpp"
#include "uncert/pt.hpp"

namespace uncert::cli {

enum class OutputFormat { json, csv };

OutputFormat output_format_from_string(const std::string& name);

/// Declarative scenario description loaded from a JSON file or the builtin
/// table. Unknown keys are rejected at every level.
struct ScenarioConfig {
  std::string scenario_id;
  std::string kind;
  std::uint64_t seed = 0;
  bool has_seed = false;
  Json parameters = Json::object();
  OutputFormat format = OutputFormat::json;
  std::string output_path = "-";
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ReportRecord {
  std::string scenario_id;
  std::string module;
  std::string operation;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::vector<CheckResult> checks;
  std::string provenance;
  double wall_time_ms = 0.0;
};

struct ScenarioRun {
  std::vector<ReportRecord> records;
  bool all_checks_passed = true;
};

struct BuiltinInfo {
  std::string id;
  std::string description;
};

ScenarioConfig parse_scenario(const Json& doc);
ScenarioConfig load_scenario_file(const std::string& path);
ScenarioConfig builtin_scenario(const std::string& id);
std::vector<BuiltinInfo> list_builtin_scenarios();

/// Executes the scenario. Deterministic for a fixed seed up to the
/// wall_time_ms fields.
ScenarioRun run_scenario(const ScenarioConfig& config);

/// JSON document for a record list; timing fields can be omitted so that
/// deterministic payloads compare byte-for-byte.
std::string records_to_json(const std::vector<ReportRecord>& records,
                            bool include_timing = true);

/// Fixed-column projection of the records; the column set depends on the
/// scenario kind and is documented in the README.
std::string records_to_csv(const std::string& kind,
                           const std::vector<ReportRecord>& records);

// --- serialization of domain values -------------------------------------

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json state_to_json(const ComplexVector& v);
ComplexVector state_from_json(const Json& j);

Json wavefunction_to_json(const box::BoxWavefunction& f);
box::BoxWavefunction wavefunction_from_json(const Json& j);

Json pt_model_summary_to_json(const pt::PTModel& model);
/// Accepts either canonical parameters {"r","s","theta"} or an explicit
/// matrix model {"dim","h","p"}.
pt::PTModel pt_model_from_json(const Json& j, const std::string& id);

}  // namespace uncert::cli

#endif  // UNCERT_SCENARIO_HPP
