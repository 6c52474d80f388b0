#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uncert/scenario.hpp"

namespace {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("UNCERT_LOG");
  if (env == nullptr) return LogLevel::info;
  const std::string value(env);
  if (value == "quiet") return LogLevel::quiet;
  if (value == "debug") return LogLevel::debug;
  return LogLevel::info;
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::info) std::cerr << message << "\n";
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::debug) std::cerr << message << "\n";
}

int write_output(const uncert::cli::ScenarioConfig& config,
                 const uncert::cli::ScenarioRun& run,
                 const std::string& out_path,
                 uncert::cli::OutputFormat format) {
  std::string payload;
  if (format == uncert::cli::OutputFormat::json) {
    payload = uncert::cli::records_to_json(run.records);
  } else {
    payload = uncert::cli::records_to_csv(config.kind, run.records);
  }
  if (out_path == "-") {
    std::cout << payload;
  } else {
    // Write-then-rename keeps partially written reports invisible to
    // concurrent readers.
    const std::string tmp_path = out_path + ".tmp";
    {
      std::ofstream out(tmp_path);
      if (!out) {
        std::cerr << "error: cannot write to '" << tmp_path << "'\n";
        return 2;
      }
      out << payload;
    }
    if (std::rename(tmp_path.c_str(), out_path.c_str()) != 0) {
      std::cerr << "error: cannot move report into place at '" << out_path
                << "'\n";
      return 2;
    }
  }
  return run.all_checks_passed ? 0 : 1;
}

int run_command(const std::string& scenario_path, const std::string& builtin_id,
                const std::string& out_path,
                const std::optional<std::string>& format_name,
                const std::optional<long>& seed_override) {
  uncert::cli::ScenarioConfig config;
  if (!scenario_path.empty() && !builtin_id.empty()) {
    std::cerr << "error: pass either --scenario or --builtin, not both\n";
    return 2;
  }
  if (scenario_path.empty() && builtin_id.empty()) {
    std::cerr << "error: pass --scenario <path> or --builtin <id>\n";
    return 2;
  }
  config = scenario_path.empty()
               ? uncert::cli::builtin_scenario(builtin_id)
               : uncert::cli::load_scenario_file(scenario_path);
  if (seed_override.has_value()) {
    config.seed = static_cast<std::uint64_t>(*seed_override);
    config.has_seed = true;
  }
  uncert::cli::OutputFormat format = config.format;
  if (format_name.has_value()) {
    format = uncert::cli::output_format_from_string(*format_name);
  }
  std::string path = out_path.empty() ? config.output_path : out_path;

  log_info("running scenario '" + config.scenario_id + "' (" + config.kind +
           ")");
  const uncert::cli::ScenarioRun run = uncert::cli::run_scenario(config);
  for (const auto& record : run.records) {
    for (const auto& check : record.checks) {
      if (!check.pass) {
        log_info("  check failed: " + record.operation + "/" + check.name);
      } else {
        log_debug("  check ok: " + record.operation + "/" + check.name);
      }
    }
  }
  return write_output(config, run, path, format);
}

int list_command() {
  for (const auto& info : uncert::cli::list_builtin_scenarios()) {
    std::cout << info.id << "\t" << info.description << "\n";
  }
  return 0;
}

int check_command() {
  bool all_ok = true;
  for (const auto& info : uncert::cli::list_builtin_scenarios()) {
    const uncert::cli::ScenarioConfig config =
        uncert::cli::builtin_scenario(info.id);
    const uncert::cli::ScenarioRun first = uncert::cli::run_scenario(config);
    const uncert::cli::ScenarioRun second = uncert::cli::run_scenario(config);
    const std::string payload_a =
        uncert::cli::records_to_json(first.records, /*include_timing=*/false);
    const std::string payload_b =
        uncert::cli::records_to_json(second.records, /*include_timing=*/false);

    std::string status = "ok";
    if (!first.all_checks_passed) {
      status = "embedded checks failed";
    } else if (payload_a != payload_b) {
      status = "re-run payload differs";
    }
    const bool ok = status == "ok";
    all_ok = all_ok && ok;
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << info.id << " ("
              << first.records.size() << " records)"
              << (ok ? "" : ": " + status) << "\n";
  }
  std::cout << (all_ok ? "check: all builtin scenarios passed"
                       : "check: FAILURES present")
            << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uncertainty-relation scenario runner"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string builtin_id;
  std::string out_path;
  std::optional<std::string> format_name;
  std::optional<long> seed_override;

  CLI::App* run = app.add_subcommand("run", "run one scenario");
  run->add_option("--scenario", scenario_path, "path to a scenario JSON file");
  run->add_option("--builtin", builtin_id, "id of a builtin scenario");
  run->add_option("--out", out_path, "output path ('-' for stdout)");
  run->add_option("--format", format_name, "output format: json or csv");
  run->add_option("--seed", seed_override, "override the scenario seed");

  CLI::App* list = app.add_subcommand("list", "list builtin scenarios");
  CLI::App* check =
      app.add_subcommand("check", "run all builtin scenarios twice and "
                                  "verify checks and determinism");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      return run_command(scenario_path, builtin_id, out_path, format_name,
                         seed_override);
    }
    if (list->parsed()) return list_command();
    if (check->parsed()) return check_command();
  } catch (const uncert::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const uncert::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const uncert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
