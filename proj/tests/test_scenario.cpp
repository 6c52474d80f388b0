#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "uncert/scenario.hpp"

using namespace uncert::cli;
using uncert::Json;
using uncert::SchemaError;

namespace {

Json minimal_scenario() {
  return Json{{"scenario_id", "t"},
              {"kind", "finite_dim"},
              {"parameters",
               Json{{"pair", "pauli_xy"},
                    {"state", Json::array({Json::array({1, 0}),
                                           Json::array({1, 0})})}}}};
}

}  // namespace

TEST_CASE("schema validation") {
  SUBCASE("valid minimal scenario parses") {
    const ScenarioConfig config = parse_scenario(minimal_scenario());
    CHECK(config.scenario_id == "t");
    CHECK(config.kind == "finite_dim");
    CHECK(config.format == OutputFormat::json);
  }

  SUBCASE("unknown top-level keys are rejected") {
    Json doc = minimal_scenario();
    doc["extra"] = 1;
    CHECK_THROWS_AS(parse_scenario(doc), SchemaError);
  }

  SUBCASE("unknown parameter keys are rejected") {
    Json doc = minimal_scenario();
    doc["parameters"]["quux"] = 1;
    CHECK_THROWS_AS(run_scenario(parse_scenario(doc)), SchemaError);
  }

  SUBCASE("unknown kinds are rejected") {
    Json doc = minimal_scenario();
    doc["kind"] = "mystery";
    CHECK_THROWS_AS(parse_scenario(doc), SchemaError);
  }

  SUBCASE("stochastic kinds require a seed") {
    Json doc{{"scenario_id", "s"},
             {"kind", "search"},
             {"parameters",
              Json{{"pair", "pauli_xy"}, {"objective", "product"}}}};
    CHECK_THROWS_AS(parse_scenario(doc), SchemaError);
    doc["seed"] = 3;
    CHECK_NOTHROW(parse_scenario(doc));
  }

  SUBCASE("unknown output format is rejected") {
    Json doc = minimal_scenario();
    doc["output"] = Json{{"format", "xml"}};
    CHECK_THROWS_AS(parse_scenario(doc), SchemaError);
  }

  SUBCASE("expectations must reference real output fields") {
    Json doc = minimal_scenario();
    doc["parameters"]["expect"] = Json{{"no_such_field", Json{{"min", 0}}}};
    CHECK_THROWS_AS(run_scenario(parse_scenario(doc)), SchemaError);
  }
}

TEST_CASE("builtin scenarios") {
  SUBCASE("the catalog includes the advertised entries") {
    bool has_pauli = false, has_real_family = false, has_cos = false;
    for (const BuiltinInfo& info : list_builtin_scenarios()) {
      if (info.id == "pauli_phi1") has_pauli = true;
      if (info.id == "gellmann_real_family") has_real_family = true;
      if (info.id == "xm_bound_cos_ground") has_cos = true;
      CHECK(!info.description.empty());
    }
    CHECK(has_pauli);
    CHECK(has_real_family);
    CHECK(has_cos);
  }

  SUBCASE("unknown builtin ids are rejected") {
    CHECK_THROWS_AS(builtin_scenario("nonexistent"), SchemaError);
  }

  SUBCASE("every builtin passes its embedded checks deterministically") {
    for (const BuiltinInfo& info : list_builtin_scenarios()) {
      const ScenarioConfig config = builtin_scenario(info.id);
      const ScenarioRun first = run_scenario(config);
      const ScenarioRun second = run_scenario(config);
      CAPTURE(info.id);
      CHECK(first.all_checks_passed);
      CHECK(records_to_json(first.records, false) ==
            records_to_json(second.records, false));
    }
  }
}

TEST_CASE("report serialization") {
  SUBCASE("floats carry 17 significant digits") {
    CHECK(uncert::format_double(0.1) == "0.10000000000000001");
    CHECK(uncert::format_double(1.0) == "1");
    CHECK(uncert::format_double(-2.5e-13) == "-2.4999999999999999e-13");
  }

  SUBCASE("empty record list serializes to an empty document") {
    CHECK(records_to_json({}) == "[]\n");
  }

  SUBCASE("json payload parses back and timing is the only difference") {
    const ScenarioConfig config = builtin_scenario("pauli_phi1");
    const ScenarioRun run = run_scenario(config);
    const Json parsed = Json::parse(records_to_json(run.records));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].contains("wall_time_ms"));
    const Json stripped = Json::parse(records_to_json(run.records, false));
    CHECK(!stripped[0].contains("wall_time_ms"));
    CHECK(parsed[0]["outputs"] == stripped[0]["outputs"]);
  }

  SUBCASE("csv projection has the documented columns") {
    const ScenarioConfig config = builtin_scenario("pauli_phi1");
    const ScenarioRun run = run_scenario(config);
    const std::string csv = records_to_csv(config.kind, run.records);
    std::istringstream lines(csv);
    std::string header, row, extra;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, row));
    CHECK(!std::getline(lines, extra));
    CHECK(header ==
          "scenario_id,operation,checks_passed,delta_a,delta_b,product,bound,"
          "gap,sum_of_squares,bound_is_zero,a_eigenstate,b_eigenstate");
    CHECK(row.find("pauli_phi1,robertson_report,true") == 0);
  }
}

TEST_CASE("scenario files") {
  SUBCASE("a file on disk loads and runs") {
    const std::string path = "scenario_roundtrip_test.json";
    {
      std::ofstream out(path);
      out << minimal_scenario().dump();
    }
    const ScenarioConfig config = load_scenario_file(path);
    const ScenarioRun run = run_scenario(config);
    CHECK(run.all_checks_passed);
    std::remove(path.c_str());
  }

  SUBCASE("missing files raise an io error") {
    CHECK_THROWS_AS(load_scenario_file("does_not_exist.json"), uncert::IoError);
  }

  SUBCASE("invalid json raises a schema error") {
    const std::string path = "scenario_invalid_test.json";
    {
      std::ofstream out(path);
      out << "{ not json";
    }
    CHECK_THROWS_AS(load_scenario_file(path), SchemaError);
    std::remove(path.c_str());
  }
}

TEST_CASE("pt model serialization") {
  SUBCASE("canonical parameters") {
    const Json params{{"r", 1.0}, {"s", 2.0}, {"theta", 0.7}};
    const uncert::pt::PTModel model = pt_model_from_json(params, "m");
    CHECK(model.dim == 2);
    CHECK(model.phase == uncert::pt::Phase::unbroken);
  }

  SUBCASE("explicit matrix with signed permutation parity") {
    Json h = Json::array();
    // [[0, 1], [1, 0]] is PT-symmetric for any signed permutation parity.
    h.push_back(Json::array({0.0, 0.0}));
    h.push_back(Json::array({1.0, 0.0}));
    h.push_back(Json::array({1.0, 0.0}));
    h.push_back(Json::array({0.0, 0.0}));
    const Json params{{"dim", 2}, {"h", h}, {"p", Json::array({2, 1})}};
    const uncert::pt::PTModel model = pt_model_from_json(params, "m2");
    CHECK(model.parity(0, 1) == 1.0);
    CHECK(model.parity(1, 0) == 1.0);
    const Json summary = pt_model_summary_to_json(model);
    CHECK(summary.at("p") == Json::array({2, 1}));
    CHECK(summary.at("dim") == 2);
  }

  SUBCASE("bad parity lists are rejected") {
    const Json params{{"dim", 2},
                      {"h",
                       Json::array({Json::array({0.0, 0.0}),
                                    Json::array({0.0, 0.0}),
                                    Json::array({0.0, 0.0}),
                                    Json::array({0.0, 0.0})})},
                      {"p", Json::array({3, 1})}};
    CHECK_THROWS_AS(pt_model_from_json(params, "bad"), SchemaError);
  }
}

TEST_CASE("custom scenario overrides") {
  SUBCASE("box_symmetric domain shift with custom alphas") {
    Json doc{{"scenario_id", "shift"},
             {"kind", "box_symmetric"},
             {"parameters",
              Json{{"check", "domain_shift"},
                   {"alpha_values", Json::array({0.3})},
                   {"mode_numbers", Json::array({0, 1})}}}};
    const ScenarioRun run = run_scenario(parse_scenario(doc));
    CHECK(run.records.size() == 2);
    CHECK(run.all_checks_passed);
  }

  SUBCASE("unknown box_symmetric check is rejected") {
    Json doc{{"scenario_id", "bad"},
             {"kind", "box_symmetric"},
             {"parameters", Json{{"check", "nope"}}}};
    CHECK_THROWS_AS(run_scenario(parse_scenario(doc)), SchemaError);
  }
}
