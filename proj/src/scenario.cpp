#include "uncert/scenario.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "uncert/explorer.hpp"
#include "uncert/generators.hpp"

namespace uncert::cli {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }
  void restart() { start_ = std::chrono::steady_clock::now(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

void require_object(const Json& j, const std::string& context) {
  if (!j.is_object()) {
    throw SchemaError(context + " must be a JSON object");
  }
}

void require_keys(const Json& obj, const std::string& context,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  require_object(obj, context);
  for (const auto& key : required) {
    if (!obj.contains(key)) {
      throw SchemaError(context + " is missing required key '" + key + "'");
    }
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!required.contains(it.key()) && !optional.contains(it.key())) {
      throw SchemaError(context + " has unknown key '" + it.key() + "'");
    }
  }
}

double get_number(const Json& j, const std::string& context) {
  if (!j.is_number()) throw SchemaError(context + " must be a number");
  return j.get<double>();
}

long get_integer(const Json& j, const std::string& context) {
  if (!j.is_number_integer()) throw SchemaError(context + " must be an integer");
  return j.get<long>();
}

// --- checks ---------------------------------------------------------------

CheckResult check_abs(const std::string& name, double value, double target,
                      double tolerance) {
  return CheckResult{name, value, tolerance,
                     std::abs(value - target) <= tolerance};
}

CheckResult check_le(const std::string& name, double value, double limit) {
  return CheckResult{name, value, limit, value <= limit};
}

CheckResult check_ge(const std::string& name, double value, double limit) {
  return CheckResult{name, value, limit, value >= limit};
}

CheckResult check_flag(const std::string& name, bool pass) {
  return CheckResult{name, pass ? 1.0 : 0.0, 0.0, pass};
}

void apply_expectations(const Json& expect, const Json& outputs,
                        std::vector<CheckResult>& checks) {
  require_object(expect, "expect");
  for (auto it = expect.begin(); it != expect.end(); ++it) {
    const std::string& field = it.key();
    if (!outputs.contains(field)) {
      throw SchemaError("expect refers to unknown output field '" + field +
                        "'");
    }
    const Json& rule = it.value();
    require_keys(rule, "expect." + field, {}, {"value", "tol", "min", "max"});
    const Json& actual = outputs.at(field);

    if (actual.is_boolean()) {
      if (!rule.contains("value") || !rule.at("value").is_boolean()) {
        throw SchemaError("expect." + field + " needs a boolean 'value'");
      }
      const bool ok = actual.get<bool>() == rule.at("value").get<bool>();
      checks.push_back(check_flag("expect:" + field, ok));
      continue;
    }
    if (!actual.is_number()) {
      throw SchemaError("expect." + field + " refers to a non-numeric output");
    }
    const double x = actual.get<double>();
    if (rule.contains("value")) {
      const double target = get_number(rule.at("value"), "expect." + field);
      const double tolerance =
          rule.contains("tol") ? get_number(rule.at("tol"), "tol") : 0.0;
      checks.push_back(check_abs("expect:" + field, x, target, tolerance));
    }
    if (rule.contains("min")) {
      checks.push_back(check_ge("expect:" + field + "_min", x,
                                get_number(rule.at("min"), "min")));
    }
    if (rule.contains("max")) {
      checks.push_back(check_le("expect:" + field + "_max", x,
                                get_number(rule.at("max"), "max")));
    }
  }
}

// --- operator pairs -------------------------------------------------------

struct OperatorPair {
  const HermitianOperator* a;
  const HermitianOperator* b;
  int dim;
  std::string name;
};

OperatorPair pair_from_name(const std::string& name) {
  const GeneratorCatalog& cat = catalog();
  if (name == "pauli_xy") {
    return OperatorPair{&cat.sigma_x, &cat.sigma_y, 2, name};
  }
  if (name == "gellmann_34") {
    return OperatorPair{&cat.lambda3, &cat.lambda4, 3, name};
  }
  throw SchemaError("unknown operator pair '" + name +
                    "' (expected pauli_xy or gellmann_34)");
}

// --- record helpers -------------------------------------------------------

ReportRecord base_record(const ScenarioConfig& config,
                         const std::string& module,
                         const std::string& operation) {
  ReportRecord record;
  record.scenario_id = config.scenario_id;
  record.module = module;
  record.operation = operation;
  record.provenance = config.kind + ":" + config.scenario_id;
  return record;
}

}  // namespace

// --- serialization of domain values ----------------------------------------

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw SchemaError("complex value must be a [re, im] pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json state_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v[i]));
  }
  return out;
}

ComplexVector state_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError("state must be a nonempty array of [re, im] pairs");
  }
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  }
  return v;
}

Json wavefunction_to_json(const box::BoxWavefunction& f) {
  Json interval{
      {"a", f.interval().a},
      {"b", f.interval().b},
      {"variant", f.interval().variant == box::IntervalVariant::standard
                      ? "standard"
                      : "symmetric"}};
  Json rep;
  if (f.is_closed_form()) {
    Json terms = Json::array();
    for (const box::ClosedFormTerm& t : f.closed_form().terms()) {
      terms.push_back(Json::array(
          {t.coeff.real(), t.coeff.imag(), t.xpow, t.wavenum}));
    }
    rep = Json{{"tag", "closed_form"}, {"terms", std::move(terms)}};
  } else {
    Json samples = Json::array();
    for (const Complex& v : f.grid()) samples.push_back(complex_to_json(v));
    rep = Json{{"tag", "grid"}, {"samples", std::move(samples)}};
  }
  return Json{{"interval", std::move(interval)},
              {"representation", std::move(rep)}};
}

box::BoxWavefunction wavefunction_from_json(const Json& j) {
  require_keys(j, "wavefunction", {"interval", "representation"}, {});
  const Json& ij = j.at("interval");
  require_keys(ij, "wavefunction.interval", {"a", "b", "variant"}, {});
  box::BoxInterval interval;
  interval.a = get_number(ij.at("a"), "interval.a");
  interval.b = get_number(ij.at("b"), "interval.b");
  const std::string variant = ij.at("variant").get<std::string>();
  if (variant == "standard") {
    interval.variant = box::IntervalVariant::standard;
  } else if (variant == "symmetric") {
    interval.variant = box::IntervalVariant::symmetric;
  } else {
    throw SchemaError("unknown interval variant '" + variant + "'");
  }
  if (!(interval.a < interval.b)) {
    throw SchemaError("interval must satisfy a < b");
  }
  if (interval.variant == box::IntervalVariant::standard && interval.a != 0.0) {
    throw SchemaError("standard interval must start at 0");
  }
  if (interval.variant == box::IntervalVariant::symmetric &&
      interval.a != -interval.b) {
    throw SchemaError("symmetric interval must be centered at 0");
  }

  const Json& rep = j.at("representation");
  require_keys(rep, "wavefunction.representation", {"tag"},
               {"terms", "samples"});
  const std::string tag = rep.at("tag").get<std::string>();
  if (tag == "closed_form") {
    if (!rep.contains("terms")) {
      throw SchemaError("closed_form representation needs 'terms'");
    }
    std::vector<box::ClosedFormTerm> terms;
    for (const Json& t : rep.at("terms")) {
      if (!t.is_array() || t.size() != 4) {
        throw SchemaError("closed-form term must be [re, im, xpow, wavenum]");
      }
      terms.push_back(box::ClosedFormTerm{
          Complex(t[0].get<double>(), t[1].get<double>()),
          static_cast<int>(get_integer(t[2], "term xpow")),
          t[3].get<double>()});
    }
    return box::BoxWavefunction::from_closed_form(
        interval, box::ClosedForm(std::move(terms)));
  }
  if (tag == "grid") {
    if (!rep.contains("samples")) {
      throw SchemaError("grid representation needs 'samples'");
    }
    std::vector<Complex> samples;
    for (const Json& s : rep.at("samples")) {
      samples.push_back(complex_from_json(s));
    }
    return box::BoxWavefunction::from_grid(interval, std::move(samples));
  }
  throw SchemaError("unknown representation tag '" + tag + "'");
}

Json pt_model_summary_to_json(const pt::PTModel& model) {
  Json h = Json::array();
  for (int i = 0; i < model.dim; ++i) {
    for (int j = 0; j < model.dim; ++j) {
      h.push_back(complex_to_json(model.h(i, j)));
    }
  }
  Json p = Json::array();
  for (int i = 0; i < model.dim; ++i) {
    int entry = 0;
    for (int j = 0; j < model.dim; ++j) {
      const double v = model.parity(i, j);
      if (v != 0.0) entry = (v > 0.0 ? 1 : -1) * (j + 1);
    }
    p.push_back(entry);
  }
  Json spectrum = Json::array();
  for (Eigen::Index k = 0; k < model.spectrum.size(); ++k) {
    spectrum.push_back(complex_to_json(model.spectrum[k]));
  }
  return Json{{"id", model.id},
              {"dim", model.dim},
              {"h", std::move(h)},
              {"p", std::move(p)},
              {"phase", pt::to_string(model.phase)},
              {"spectrum", std::move(spectrum)}};
}

pt::PTModel pt_model_from_json(const Json& j, const std::string& id) {
  require_object(j, "model");
  if (j.contains("r") || j.contains("s") || j.contains("theta")) {
    require_keys(j, "model", {"r", "s", "theta"}, {});
    const double r = get_number(j.at("r"), "model.r");
    const double s = get_number(j.at("s"), "model.s");
    const double theta = get_number(j.at("theta"), "model.theta");
    return pt::make_model(pt::canonical_two_level(r, s, theta),
                          pt::exchange_parity(2), id);
  }
  require_keys(j, "model", {"dim", "h", "p"}, {});
  const int dim = static_cast<int>(get_integer(j.at("dim"), "model.dim"));
  if (dim < 1) throw SchemaError("model.dim must be positive");
  const Json& hj = j.at("h");
  if (!hj.is_array() || hj.size() != static_cast<std::size_t>(dim * dim)) {
    throw SchemaError("model.h must list dim*dim row-major [re, im] pairs");
  }
  ComplexMatrix h(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      h(i, k) = complex_from_json(hj[static_cast<std::size_t>(i * dim + k)]);
    }
  }
  const Json& pj = j.at("p");
  if (!pj.is_array() || pj.size() != static_cast<std::size_t>(dim)) {
    throw SchemaError("model.p must be a signed permutation list of length dim");
  }
  pt::RealMatrix parity = pt::RealMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const long entry = get_integer(pj[static_cast<std::size_t>(i)], "model.p");
    const long col = std::labs(entry) - 1;
    if (entry == 0 || col < 0 || col >= dim) {
      throw SchemaError("model.p entries must be +-(column index + 1)");
    }
    parity(i, static_cast<int>(col)) = entry > 0 ? 1.0 : -1.0;
  }
  return pt::make_model(std::move(h), std::move(parity), id);
}

// --- scenario parsing -------------------------------------------------------

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw SchemaError("unknown output format '" + name + "'");
}

namespace {

const std::set<std::string> kKinds{
    "finite_dim",   "family_scan", "search",  "box_standard",
    "box_symmetric", "pt_model",    "pt_non_universality"};

bool kind_is_stochastic(const std::string& kind, const Json& parameters) {
  if (kind == "family_scan" || kind == "search" ||
      kind == "pt_non_universality") {
    return true;
  }
  if (kind == "box_symmetric" && parameters.contains("check")) {
    const std::string check = parameters.at("check").get<std::string>();
    return check == "xm_unit_modulus" || check == "xm_wall_vanishing";
  }
  return false;
}

}  // namespace

ScenarioConfig parse_scenario(const Json& doc) {
  require_keys(doc, "scenario", {"scenario_id", "kind"},
               {"seed", "parameters", "output"});
  ScenarioConfig config;
  if (!doc.at("scenario_id").is_string()) {
    throw SchemaError("scenario_id must be a string");
  }
  config.scenario_id = doc.at("scenario_id").get<std::string>();
  if (config.scenario_id.empty()) {
    throw SchemaError("scenario_id must not be empty");
  }
  config.kind = doc.at("kind").get<std::string>();
  if (!kKinds.contains(config.kind)) {
    throw SchemaError("unknown scenario kind '" + config.kind + "'");
  }
  if (doc.contains("parameters")) {
    require_object(doc.at("parameters"), "parameters");
    config.parameters = doc.at("parameters");
  }
  if (doc.contains("seed")) {
    config.seed = static_cast<std::uint64_t>(get_integer(doc.at("seed"), "seed"));
    config.has_seed = true;
  }
  if (kind_is_stochastic(config.kind, config.parameters) && !config.has_seed) {
    throw SchemaError("scenario kind '" + config.kind +
                      "' draws random samples and requires a seed");
  }
  if (doc.contains("output")) {
    const Json& out = doc.at("output");
    require_keys(out, "output", {}, {"format", "path"});
    if (out.contains("format")) {
      config.format =
          output_format_from_string(out.at("format").get<std::string>());
    }
    if (out.contains("path")) {
      config.output_path = out.at("path").get<std::string>();
    }
  }
  return config;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open scenario file '" + path + "'");
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("scenario file '" + path + "' is not valid JSON: " +
                      e.what());
  }
  return parse_scenario(doc);
}

// --- scenario execution -----------------------------------------------------

namespace {

std::vector<ReportRecord> run_finite_dim(const ScenarioConfig& config) {
  require_keys(config.parameters, "parameters", {"pair", "state"}, {"expect"});
  const OperatorPair pair =
      pair_from_name(config.parameters.at("pair").get<std::string>());
  const ComplexVector raw = state_from_json(config.parameters.at("state"));
  if (raw.size() != pair.dim) {
    throw SchemaError("state dimension does not match the operator pair");
  }

  StopWatch watch;
  const StateVector state = StateVector::normalized(raw);
  const UncertaintyReport report = robertson_report(*pair.a, *pair.b, state);

  ReportRecord record = base_record(config, "observable", "robertson_report");
  record.inputs = Json{{"pair", pair.name},
                       {"state", config.parameters.at("state")}};
  record.outputs = Json{
      {"delta_a", report.delta_a},
      {"delta_b", report.delta_b},
      {"product", report.product},
      {"bound", report.bound},
      {"gap", report.gap},
      {"sum_of_squares", report.sum_of_squares},
      {"bound_is_zero", report.bound_is_zero},
      {"a_eigenstate", report.a_eigenstate},
      {"b_eigenstate", report.b_eigenstate},
  };
  record.checks.push_back(
      check_ge("gap_floor", report.gap, -uncert::tol::robertson));
  if (config.parameters.contains("expect")) {
    apply_expectations(config.parameters.at("expect"), record.outputs,
                       record.checks);
  }
  record.wall_time_ms = watch.elapsed_ms();
  return {std::move(record)};
}

FamilyDescriptor family_from_json(const Json& j, int pair_dim) {
  require_keys(j, "family", {"kind"},
               {"dim", "amplitude_range", "beta_range", "probes"});
  FamilyDescriptor family;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "real") {
    family.kind = FamilyDescriptor::Kind::real_coefficients;
  } else if (kind == "proportional") {
    family.kind = FamilyDescriptor::Kind::proportional_last_to_first;
  } else if (kind == "unconstrained") {
    family.kind = FamilyDescriptor::Kind::unconstrained;
  } else {
    throw SchemaError("unknown family kind '" + kind + "'");
  }
  family.dim = j.contains("dim")
                   ? static_cast<int>(get_integer(j.at("dim"), "family.dim"))
                   : pair_dim;
  if (j.contains("amplitude_range")) {
    const Json& r = j.at("amplitude_range");
    if (!r.is_array() || r.size() != 2) {
      throw SchemaError("amplitude_range must be [lo, hi]");
    }
    family.amplitude_min = get_number(r[0], "amplitude_range[0]");
    family.amplitude_max = get_number(r[1], "amplitude_range[1]");
  }
  if (j.contains("beta_range")) {
    const Json& r = j.at("beta_range");
    if (!r.is_array() || r.size() != 2) {
      throw SchemaError("beta_range must be [lo, hi]");
    }
    family.beta_min = get_number(r[0], "beta_range[0]");
    family.beta_max = get_number(r[1], "beta_range[1]");
  }
  if (j.contains("probes")) {
    for (const Json& probe : j.at("probes")) {
      family.probes.push_back(state_from_json(probe));
    }
  }
  return family;
}

std::vector<ReportRecord> run_family_scan(const ScenarioConfig& config) {
  require_keys(config.parameters, "parameters", {"pair", "family"},
               {"samples", "expect"});
  const OperatorPair pair =
      pair_from_name(config.parameters.at("pair").get<std::string>());
  const FamilyDescriptor family =
      family_from_json(config.parameters.at("family"), pair.dim);
  int samples = -1;
  if (config.parameters.contains("samples")) {
    samples = static_cast<int>(
        get_integer(config.parameters.at("samples"), "samples"));
  }

  StopWatch watch;
  const FamilyVerdict verdict =
      classify_family(family, *pair.a, *pair.b, config.seed, samples);

  ReportRecord record = base_record(config, "explorer", "classify_family");
  record.inputs = Json{{"pair", pair.name},
                       {"family", config.parameters.at("family")},
                       {"samples", samples < 0 ? family.default_samples()
                                               : samples},
                       {"seed", config.seed}};
  Json witness_examples = Json::array();
  for (std::size_t i = 0; i < verdict.witness_states.size() && i < 3; ++i) {
    witness_examples.push_back(
        state_to_json(verdict.witness_states[i].amplitudes()));
  }
  Json counter_examples = Json::array();
  for (std::size_t i = 0; i < verdict.counter_states.size() && i < 3; ++i) {
    counter_examples.push_back(
        state_to_json(verdict.counter_states[i].amplitudes()));
  }
  record.outputs = Json{
      {"family_descriptor", verdict.family_descriptor},
      {"bound_zero_on_family", verdict.bound_zero_on_family},
      {"witness_count", verdict.witness_count},
      {"counter_count", verdict.counter_count},
      {"max_witness_bound", verdict.max_witness_bound},
      {"min_counter_bound", verdict.min_counter_bound},
      {"notes", verdict.notes},
      {"witness_examples", std::move(witness_examples)},
      {"counter_examples", std::move(counter_examples)},
  };
  if (!family.probes.empty()) {
    Json probe_bounds = Json::array();
    double probe_min = 0.0;
    for (std::size_t i = 0; i < family.probes.size(); ++i) {
      const double bound =
          robertson_report(*pair.a, *pair.b,
                           StateVector::normalized(family.probes[i]))
              .bound;
      probe_bounds.push_back(bound);
      probe_min = i == 0 ? bound : std::min(probe_min, bound);
    }
    record.outputs["probe_bounds"] = std::move(probe_bounds);
    record.outputs["probe_min_bound"] = probe_min;
  }
  // Witness exemplars re-verified through the generic report path.
  double reverified_max = 0.0;
  for (const StateVector& w : verdict.witness_states) {
    reverified_max = std::max(
        reverified_max, robertson_report(*pair.a, *pair.b, w).bound);
  }
  record.checks.push_back(
      check_le("witness_bound_max", reverified_max, uncert::tol::zero_bound));
  if (config.parameters.contains("expect")) {
    apply_expectations(config.parameters.at("expect"), record.outputs,
                       record.checks);
  }
  record.wall_time_ms = watch.elapsed_ms();
  return {std::move(record)};
}

std::vector<ReportRecord> run_search(const ScenarioConfig& config) {
  require_keys(config.parameters, "parameters", {"pair", "objective"},
               {"restarts", "expect"});
  const OperatorPair pair =
      pair_from_name(config.parameters.at("pair").get<std::string>());
  const SearchObjective objective = search_objective_from_string(
      config.parameters.at("objective").get<std::string>());
  int restarts = 8;
  if (config.parameters.contains("restarts")) {
    restarts = static_cast<int>(
        get_integer(config.parameters.at("restarts"), "restarts"));
  }

  StopWatch watch;
  const SearchResult result =
      minimize_objective(*pair.a, *pair.b, objective, config.seed, restarts);

  ReportRecord record = base_record(config, "explorer", "minimize_objective");
  record.inputs = Json{{"pair", pair.name},
                       {"objective", to_string(objective)},
                       {"seed", config.seed},
                       {"restarts", restarts}};
  record.outputs = Json{
      {"best_value", result.best_value},
      {"iterations", result.iterations},
      {"best_state", state_to_json(result.best_state.amplitudes())},
  };
  const double reevaluated =
      objective_value(*pair.a, *pair.b, objective, result.best_state);
  record.checks.push_back(check_abs("best_value_consistent", reevaluated,
                                    result.best_value,
                                    uncert::tol::robertson));
  if (objective == SearchObjective::gap) {
    record.checks.push_back(
        check_ge("gap_floor", result.best_value, -uncert::tol::robertson));
  }
  if (config.parameters.contains("expect")) {
    apply_expectations(config.parameters.at("expect"), record.outputs,
                       record.checks);
  }
  record.wall_time_ms = watch.elapsed_ms();
  return {std::move(record)};
}

struct BoxParams {
  double length = 1.0;
  double hbar = 1.0;
};

BoxParams box_params(const Json& parameters) {
  BoxParams p;
  if (parameters.contains("length")) {
    p.length = get_number(parameters.at("length"), "length");
    if (!(p.length > 0.0)) throw SchemaError("length must be positive");
  }
  if (parameters.contains("hbar")) {
    p.hbar = get_number(parameters.at("hbar"), "hbar");
    if (!(p.hbar > 0.0)) throw SchemaError("hbar must be positive");
  }
  return p;
}

std::vector<double> number_list(const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError(context + " must be a nonempty array of numbers");
  }
  std::vector<double> out;
  for (const Json& v : j) out.push_back(get_number(v, context));
  return out;
}

std::vector<int> integer_list(const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError(context + " must be a nonempty array of integers");
  }
  std::vector<int> out;
  for (const Json& v : j) {
    out.push_back(static_cast<int>(get_integer(v, context)));
  }
  return out;
}

std::vector<double> default_theta_grid(int count) {
  std::vector<double> thetas;
  thetas.reserve(count);
  for (int k = 0; k < count; ++k) thetas.push_back(kTwoPi * k / count);
  return thetas;
}

std::vector<ReportRecord> run_box_standard(const ScenarioConfig& config) {
  require_keys(config.parameters, "parameters", {},
               {"length", "hbar", "theta_values", "mode_numbers"});
  const BoxParams p = box_params(config.parameters);
  std::vector<double> thetas =
      config.parameters.contains("theta_values")
          ? number_list(config.parameters.at("theta_values"), "theta_values")
          : default_theta_grid(16);
  std::vector<int> modes =
      config.parameters.contains("mode_numbers")
          ? integer_list(config.parameters.at("mode_numbers"), "mode_numbers")
          : std::vector<int>{-3, -2, -1, 0, 1, 2, 3};

  const box::BoxInterval interval = box::BoxInterval::standard(p.length);
  std::vector<ReportRecord> records;

  for (const double theta : thetas) {
    const box::MomentumExtension ext(wrap_angle(theta), interval, p.hbar);
    for (const int n : modes) {
      StopWatch watch;
      const box::BoxWavefunction u = box::eigenfunction(ext, n);
      const double p_n = box::eigenvalue(ext, n);
      const double eigen_residual =
          box::apply_momentum(u, ext)
              .add_scaled(u, Complex{-p_n, 0.0})
              .l2_norm();
      const box::BoxWavefunction chi = box::apply_position(u);
      const box::DomainVerdict verdict = box::domain_check(chi, ext);
      const box::CommutatorExpectation comm =
          box::commutator_expectation_canonical(u, ext);
      const box::BoxUncertaintyReport report =
          box::canonical_uncertainty_report(u, ext);

      ReportRecord record =
          base_record(config, "boxlab", "domain_pathology");
      record.inputs = Json{{"variant", "standard"},
                           {"length", p.length},
                           {"hbar", p.hbar},
                           {"theta", ext.theta},
                           {"n", n}};
      record.outputs = Json{
          {"eigenvalue", p_n},
          {"eigen_residual", eigen_residual},
          {"delta_x", report.delta_x},
          {"delta_p", report.delta_p.has_value() ? Json(*report.delta_p)
                                                 : Json(nullptr)},
          {"x_u_in_domain", verdict.in_domain},
          {"x_u_residual", verdict.residual},
          {"shifted_theta", verdict.shifted_theta.has_value()
                                ? Json(*verdict.shifted_theta)
                                : Json(nullptr)},
          {"commutator_defined", comm.defined},
          {"offending_factor", comm.offending_factor},
          {"bound_formula", box::to_string(report.bound_formula)},
      };
      record.checks.push_back(check_le("eigen_residual", eigen_residual, 1e-9));
      if (report.delta_p.has_value()) {
        record.checks.push_back(check_le("delta_p", *report.delta_p, 1e-9));
      }
      record.checks.push_back(
          check_flag("x_u_outside_domain", !verdict.in_domain));
      record.checks.push_back(
          check_flag("commutator_undefined", !comm.defined));
      record.checks.push_back(
          check_flag("no_bound_attached", !report.bound.has_value()));
      record.wall_time_ms = watch.elapsed_ms();
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::vector<ReportRecord> run_box_symmetric(const ScenarioConfig& config) {
  require_keys(config.parameters, "parameters", {"check"},
               {"length", "hbar", "alpha_values", "theta_values",
                "mode_numbers", "count", "theta"});
  const BoxParams p = box_params(config.parameters);
  const std::string check = config.parameters.at("check").get<std::string>();
  const box::BoxInterval interval = box::BoxInterval::symmetric(p.length);
  std::vector<ReportRecord> records;

  if (check == "domain_shift") {
    std::vector<double> alphas =
        config.parameters.contains("alpha_values")
            ? number_list(config.parameters.at("alpha_values"), "alpha_values")
            : std::vector<double>{0.5, 1.0, 2.0};
    std::vector<int> modes =
        config.parameters.contains("mode_numbers")
            ? integer_list(config.parameters.at("mode_numbers"),
                           "mode_numbers")
            : std::vector<int>{-2, -1, 0, 1, 2};
    for (const double alpha : alphas) {
      const box::MomentumExtension ext(wrap_angle(alpha), interval, p.hbar);
      for (const int n : modes) {
        StopWatch watch;
        const box::BoxWavefunction u = box::eigenfunction(ext, n);
        const box::BoxWavefunction xi = box::apply_position(u);
        const box::DomainVerdict verdict = box::domain_check(xi, ext);
        const double expected_shift = wrap_angle(alpha + M_PI);

        ReportRecord record = base_record(config, "boxlab", "domain_shift");
        record.inputs = Json{{"variant", "symmetric"},
                             {"length", p.length},
                             {"hbar", p.hbar},
                             {"alpha", ext.theta},
                             {"n", n}};
        record.outputs = Json{
            {"in_domain", verdict.in_domain},
            {"residual", verdict.residual},
            {"shifted_theta", verdict.shifted_theta.has_value()
                                  ? Json(*verdict.shifted_theta)
                                  : Json(nullptr)},
            {"expected_shift", expected_shift},
            {"note", verdict.note},
        };
        record.checks.push_back(
            check_flag("x_u_outside_domain", !verdict.in_domain));
        if (verdict.shifted_theta.has_value()) {
          record.checks.push_back(check_abs("shifted_theta",
                                            *verdict.shifted_theta,
                                            expected_shift, 1e-6));
        } else {
          record.checks.push_back(check_flag("shifted_theta_present", false));
        }
        record.wall_time_ms = watch.elapsed_ms();
        records.push_back(std::move(record));
      }
    }
    return records;
  }

  if (check == "xm_eigenmodes") {
    std::vector<double> thetas =
        config.parameters.contains("theta_values")
            ? number_list(config.parameters.at("theta_values"), "theta_values")
            : default_theta_grid(8);
    std::vector<int> modes =
        config.parameters.contains("mode_numbers")
            ? integer_list(config.parameters.at("mode_numbers"),
                           "mode_numbers")
            : std::vector<int>{-2, -1, 0, 1, 2};
    const double expected_delta_x = p.length / (2.0 * std::sqrt(3.0));
    for (const double theta : thetas) {
      const box::MomentumExtension ext(wrap_angle(theta), interval, p.hbar);
      for (const int n : modes) {
        StopWatch watch;
        const box::BoxWavefunction u = box::eigenfunction(ext, n);
        const Complex comm = box::xm_commutator_expectation(u, p.hbar);
        const box::BoxUncertaintyReport report =
            box::xm_uncertainty_report(u, ext);

        ReportRecord record =
            base_record(config, "boxlab", "xm_commutator_expectation");
        record.inputs = Json{{"variant", "symmetric"},
                             {"length", p.length},
                             {"hbar", p.hbar},
                             {"theta", ext.theta},
                             {"n", n}};
        record.outputs = Json{
            {"comm_re", comm.real()},
            {"comm_im", comm.imag()},
            {"delta_x", report.delta_x},
            {"delta_p", report.delta_p.has_value() ? Json(*report.delta_p)
                                                   : Json(nullptr)},
            {"product", report.product.has_value() ? Json(*report.product)
                                                   : Json(nullptr)},
            {"bound", report.bound.has_value() ? Json(*report.bound)
                                               : Json(nullptr)},
            {"bound_formula", box::to_string(report.bound_formula)},
            {"notes", report.notes},
        };
        record.checks.push_back(check_le("comm_abs", std::abs(comm), 1e-10));
        record.checks.push_back(check_abs("delta_x", report.delta_x,
                                          expected_delta_x, 1e-9));
        if (report.delta_p.has_value()) {
          record.checks.push_back(check_le("delta_p", *report.delta_p, 1e-9));
        }
        if (report.bound.has_value()) {
          record.checks.push_back(check_le("bound", *report.bound, 1e-10));
        }
        record.wall_time_ms = watch.elapsed_ms();
        records.push_back(std::move(record));
      }
    }
    return records;
  }

  if (check == "xm_unit_modulus" || check == "xm_wall_vanishing") {
    int count = 25;
    if (config.parameters.contains("count")) {
      count = static_cast<int>(
          get_integer(config.parameters.at("count"), "count"));
    }
    Rng rng(config.seed);
    const bool vanishing = check == "xm_wall_vanishing";
    for (int i = 0; i < count; ++i) {
      StopWatch watch;
      box::BoxWavefunction f = box::random_trig_state(
          interval, rng, vanishing ? 4 : 3,
          vanishing ? box::WallConstraint::vanishing
                    : box::WallConstraint::unit_modulus);
      if (vanishing) f = f.to_grid();
      const Complex comm = box::xm_commutator_expectation(f, p.hbar);
      const Complex quad = box::xm_commutator_quadrature(f, p.hbar);
      const Complex expected =
          vanishing ? Complex{0.0, -p.hbar} : Complex{0.0, 0.0};

      ReportRecord record =
          base_record(config, "boxlab", "xm_commutator_expectation");
      record.inputs = Json{{"variant", "symmetric"},
                           {"length", p.length},
                           {"hbar", p.hbar},
                           {"constraint", check},
                           {"index", i}};
      record.outputs = Json{
          {"comm_re", comm.real()},
          {"comm_im", comm.imag()},
          {"quad_re", quad.real()},
          {"quad_im", quad.imag()},
          {"wall_left_mod", std::abs(f.boundary_left())},
          {"wall_right_mod", std::abs(f.boundary_right())},
      };
      record.checks.push_back(
          check_le("comm_vs_expected", std::abs(comm - expected), 1e-10));
      record.checks.push_back(
          check_le("quadrature_vs_formula", std::abs(quad - comm), 1e-7));
      record.wall_time_ms = watch.elapsed_ms();
      records.push_back(std::move(record));
    }
    return records;
  }

  if (check == "xm_cos_ground") {
    double theta = 0.0;
    if (config.parameters.contains("theta")) {
      theta = wrap_angle(get_number(config.parameters.at("theta"), "theta"));
    }
    StopWatch watch;
    const box::MomentumExtension ext(theta, interval, p.hbar);
    const box::BoxWavefunction f =
        box::BoxWavefunction::trig(interval, M_PI / p.length, 0.0)
            .normalized();
    const Complex comm = box::xm_commutator_expectation(f, p.hbar);
    const Complex quad = box::xm_commutator_quadrature(f, p.hbar);
    const box::BoxUncertaintyReport report = box::xm_uncertainty_report(f, ext);

    const double analytic_delta_x =
        p.length * std::sqrt(1.0 / 12.0 - 1.0 / (2.0 * M_PI * M_PI));
    const double analytic_delta_p = p.hbar * M_PI / p.length;

    ReportRecord record = base_record(config, "boxlab", "xm_uncertainty_report");
    record.inputs = Json{{"variant", "symmetric"},
                         {"length", p.length},
                         {"hbar", p.hbar},
                         {"theta", theta},
                         {"state", "ground cosine (wall-vanishing)"}};
    record.outputs = Json{
        {"delta_x", report.delta_x},
        {"delta_p", report.delta_p.has_value() ? Json(*report.delta_p)
                                               : Json(nullptr)},
        {"product", report.product.has_value() ? Json(*report.product)
                                               : Json(nullptr)},
        {"bound", report.bound.has_value() ? Json(*report.bound)
                                           : Json(nullptr)},
        {"bound_formula", box::to_string(report.bound_formula)},
        {"comm_re", comm.real()},
        {"comm_im", comm.imag()},
        {"quad_re", quad.real()},
        {"quad_im", quad.imag()},
        {"analytic_delta_x", analytic_delta_x},
        {"analytic_delta_p", analytic_delta_p},
        {"notes", report.notes},
    };
    record.checks.push_back(
        check_abs("delta_x", report.delta_x, analytic_delta_x, 1e-9));
    if (report.delta_p.has_value()) {
      record.checks.push_back(
          check_abs("delta_p", *report.delta_p, analytic_delta_p, 1e-9));
    } else {
      record.checks.push_back(check_flag("delta_p_present", false));
    }
    if (report.bound.has_value()) {
      record.checks.push_back(
          check_abs("bound", *report.bound, 0.5 * p.hbar, 1e-10));
      if (report.product.has_value()) {
        record.checks.push_back(check_ge("product_vs_bound",
                                         *report.product,
                                         *report.bound - box::tol::quad));
      }
    }
    record.checks.push_back(check_le(
        "comm_vs_expected", std::abs(comm - Complex{0.0, -p.hbar}), 1e-10));
    record.checks.push_back(
        check_le("quadrature_vs_formula", std::abs(quad - comm), 1e-7));
    record.wall_time_ms = watch.elapsed_ms();
    records.push_back(std::move(record));
    return records;
  }

  throw SchemaError("unknown box_symmetric check '" + check + "'");
}

std::vector<ReportRecord> run_pt_model(const ScenarioConfig& config) {
  require_keys(config.parameters, "parameters", {"model"},
               {"expect_phase", "positivity_samples", "check_c_equals_p"});
  StopWatch watch;
  pt::PTModel model =
      pt_model_from_json(config.parameters.at("model"), config.scenario_id);
  const double pt_residual = pt::pt_symmetry_residual(model.h, model.parity);

  ReportRecord record = base_record(config, "pt", "model_analysis");
  record.inputs = Json{{"model", config.parameters.at("model")}};
  Json spectrum = Json::array();
  for (Eigen::Index k = 0; k < model.spectrum.size(); ++k) {
    spectrum.push_back(complex_to_json(model.spectrum[k]));
  }
  record.outputs = Json{
      {"dim", model.dim},
      {"pt_residual", pt_residual},
      {"phase", pt::to_string(model.phase)},
      {"spectrum", std::move(spectrum)},
  };
  record.checks.push_back(check_le("pt_residual", pt_residual, pt::kEpsPt));
  if (config.parameters.contains("expect_phase")) {
    const std::string expected =
        config.parameters.at("expect_phase").get<std::string>();
    if (expected != "unbroken" && expected != "broken") {
      throw SchemaError("expect_phase must be 'unbroken' or 'broken'");
    }
    record.checks.push_back(check_flag("phase_" + expected,
                                       pt::to_string(model.phase) == expected));
  }

  if (model.phase == pt::Phase::unbroken) {
    pt::build_c(model);
    const ComplexMatrix& c = *model.c_op;
    const ComplexMatrix parity_c = model.parity.cast<Complex>();
    const double scale = std::max(infinity_norm(c), 1.0);
    const double c2_residual =
        infinity_norm(c * c - ComplexMatrix::Identity(model.dim, model.dim)) /
        (scale * scale);
    const double ch_residual =
        infinity_norm(c * model.h - model.h * c) /
        (scale * std::max(infinity_norm(model.h), 1.0));
    const double ptc_residual =
        infinity_norm(c.conjugate() - parity_c * c * parity_c) / scale;

    int positivity_samples = 100;
    if (config.parameters.contains("positivity_samples")) {
      positivity_samples = static_cast<int>(get_integer(
          config.parameters.at("positivity_samples"), "positivity_samples"));
    }
    Rng rng(config.seed);
    double cpt_min = 0.0;
    bool first = true;
    for (int i = 0; i < positivity_samples; ++i) {
      ComplexVector psi(model.dim);
      for (int k = 0; k < model.dim; ++k) psi[k] = rng.complex_normal();
      psi.normalize();
      const Complex q = pt::cpt_inner_product(psi, psi, model);
      const double value = q.real() - std::abs(q.imag());
      cpt_min = first ? value : std::min(cpt_min, value);
      first = false;
    }

    Json signs = Json::array();
    for (const double s : model.pt_norm_signs) signs.push_back(s);
    record.outputs["c2_residual"] = c2_residual;
    record.outputs["ch_residual"] = ch_residual;
    record.outputs["ptc_residual"] = ptc_residual;
    record.outputs["cpt_min"] = cpt_min;
    record.outputs["pt_norm_signs"] = std::move(signs);
    record.outputs["labels_flipped"] = model.labels_flipped;
    record.outputs["c_trace_abs"] = std::abs(c.trace());

    record.checks.push_back(check_le("c2_residual", c2_residual, pt::kEpsPt));
    record.checks.push_back(check_le("ch_residual", ch_residual, pt::kEpsPt));
    record.checks.push_back(
        check_le("ptc_residual", ptc_residual, pt::kEpsPt));
    record.checks.push_back(check_ge("cpt_min", cpt_min, 1e-15));

    if (config.parameters.contains("check_c_equals_p") &&
        config.parameters.at("check_c_equals_p").get<bool>()) {
      const double c_minus_p = infinity_norm(c - parity_c);
      record.outputs["c_minus_p"] = c_minus_p;
      record.checks.push_back(check_le("c_minus_p", c_minus_p, 1e-8));
    }
  }
  record.wall_time_ms = watch.elapsed_ms();
  return {std::move(record)};
}

std::vector<ReportRecord> run_pt_non_universality(const ScenarioConfig& config) {
  require_keys(config.parameters, "parameters", {}, {"count", "max_attempts"});
  int count = 3;
  if (config.parameters.contains("count")) {
    count =
        static_cast<int>(get_integer(config.parameters.at("count"), "count"));
  }
  int max_attempts = 200;
  if (config.parameters.contains("max_attempts")) {
    max_attempts = static_cast<int>(
        get_integer(config.parameters.at("max_attempts"), "max_attempts"));
  }

  Rng rng(config.seed);
  auto draw_params = [&]() {
    // Rejection keeps the canonical family safely inside the unbroken phase.
    while (true) {
      const double r = rng.uniform(0.6, 1.4);
      const double s = rng.uniform(1.2, 2.2);
      const double theta = rng.uniform(0.25, 1.25);
      const double margin = s * s - r * r * std::sin(theta) * std::sin(theta);
      if (margin > 0.3) return std::array<double, 3>{r, s, theta};
    }
  };

  std::vector<ReportRecord> records;
  int found = 0;
  int attempts = 0;
  while (found < count && attempts < max_attempts) {
    ++attempts;
    const auto p1 = draw_params();
    const auto p2 = draw_params();
    StopWatch watch;
    pt::NonUniversalityDemo demo;
    try {
      demo = pt::non_universality_demo(
          pt::canonical_two_level(p1[0], p1[1], p1[2]),
          pt::canonical_two_level(p2[0], p2[1], p2[2]),
          pt::exchange_parity(2));
    } catch (const CommonEigenvectors&) {
      continue;
    } catch (const DegenerateSpectrum&) {
      continue;
    }
    if (!(demo.under_model1.residual <= pt::kEpsPt &&
          demo.under_model2.residual >= 1e-3)) {
      continue;
    }

    ReportRecord record = base_record(config, "pt", "non_universality_demo");
    record.inputs = Json{
        {"pair_index", found},
        {"model1", Json{{"r", p1[0]}, {"s", p1[1]}, {"theta", p1[2]}}},
        {"model2", Json{{"r", p2[0]}, {"s", p2[1]}, {"theta", p2[2]}}},
        {"operator", demo.operator_label},
    };
    record.outputs = Json{
        {"residual_model1", demo.under_model1.residual},
        {"residual_model2", demo.under_model2.residual},
        {"satisfies_model1", demo.under_model1.satisfies_condition},
        {"satisfies_model2", demo.under_model2.satisfies_condition},
        {"verdicts_differ", demo.verdicts_differ},
    };
    record.checks.push_back(check_le("residual_model1",
                                     demo.under_model1.residual, pt::kEpsPt));
    record.checks.push_back(
        check_ge("residual_model2", demo.under_model2.residual, 1e-3));
    record.checks.push_back(
        check_flag("verdicts_differ", demo.verdicts_differ));
    record.wall_time_ms = watch.elapsed_ms();
    records.push_back(std::move(record));
    ++found;
  }

  ReportRecord summary = base_record(config, "pt", "non_universality_summary");
  summary.inputs = Json{{"count", count}, {"seed", config.seed}};
  summary.outputs = Json{{"pairs_found", found}, {"attempts", attempts}};
  summary.checks.push_back(
      check_ge("pairs_found", static_cast<double>(found),
               static_cast<double>(count)));
  records.push_back(std::move(summary));
  return records;
}

}  // namespace

ScenarioRun run_scenario(const ScenarioConfig& config) {
  ScenarioRun run;
  if (config.kind == "finite_dim") {
    run.records = run_finite_dim(config);
  } else if (config.kind == "family_scan") {
    run.records = run_family_scan(config);
  } else if (config.kind == "search") {
    run.records = run_search(config);
  } else if (config.kind == "box_standard") {
    run.records = run_box_standard(config);
  } else if (config.kind == "box_symmetric") {
    run.records = run_box_symmetric(config);
  } else if (config.kind == "pt_model") {
    run.records = run_pt_model(config);
  } else if (config.kind == "pt_non_universality") {
    run.records = run_pt_non_universality(config);
  } else {
    throw SchemaError("unknown scenario kind '" + config.kind + "'");
  }
  for (const ReportRecord& record : run.records) {
    for (const CheckResult& check : record.checks) {
      if (!check.pass) run.all_checks_passed = false;
    }
  }
  return run;
}

// --- output -----------------------------------------------------------------

namespace {

Json record_to_json(const ReportRecord& record, bool include_timing) {
  Json checks = Json::array();
  for (const CheckResult& check : record.checks) {
    checks.push_back(Json{{"name", check.name},
                          {"value", check.value},
                          {"tolerance", check.tolerance},
                          {"pass", check.pass}});
  }
  Json out = Json{{"scenario_id", record.scenario_id},
                  {"module", record.module},
                  {"operation", record.operation},
                  {"inputs", record.inputs},
                  {"outputs", record.outputs},
                  {"checks", std::move(checks)},
                  {"provenance", record.provenance}};
  if (include_timing) out["wall_time_ms"] = record.wall_time_ms;
  return out;
}

}  // namespace

std::string records_to_json(const std::vector<ReportRecord>& records,
                            bool include_timing) {
  Json out = Json::array();
  for (const ReportRecord& record : records) {
    out.push_back(record_to_json(record, include_timing));
  }
  return dump_json(out);
}

namespace {

const std::vector<std::string>& csv_columns(const std::string& kind) {
  static const std::map<std::string, std::vector<std::string>> columns{
      {"finite_dim",
       {"delta_a", "delta_b", "product", "bound", "gap", "sum_of_squares",
        "bound_is_zero", "a_eigenstate", "b_eigenstate"}},
      {"family_scan",
       {"bound_zero_on_family", "witness_count", "counter_count",
        "max_witness_bound", "min_counter_bound"}},
      {"search", {"best_value", "iterations"}},
      {"box_standard",
       {"eigenvalue", "eigen_residual", "delta_x", "delta_p", "x_u_in_domain",
        "x_u_residual", "commutator_defined"}},
      {"box_symmetric",
       {"in_domain", "residual", "shifted_theta", "expected_shift", "comm_re",
        "comm_im", "quad_re", "quad_im", "delta_x", "delta_p", "product",
        "bound"}},
      {"pt_model",
       {"dim", "pt_residual", "phase", "c2_residual", "ch_residual",
        "ptc_residual", "cpt_min", "c_minus_p"}},
      {"pt_non_universality",
       {"residual_model1", "residual_model2", "satisfies_model1",
        "satisfies_model2", "verdicts_differ", "pairs_found"}},
  };
  const auto it = columns.find(kind);
  if (it == columns.end()) {
    throw SchemaError("no CSV projection for kind '" + kind + "'");
  }
  return it->second;
}

std::string csv_cell(const Json& value) {
  if (value.is_null()) return "";
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number_float()) return format_double(value.get<double>());
  if (value.is_number()) return value.dump();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (const char c : s) {
      if (c == '"') quoted += "\"\"";
      else quoted += c;
    }
    quoted += "\"";
    return quoted;
  }
  return "";
}

}  // namespace

std::string records_to_csv(const std::string& kind,
                           const std::vector<ReportRecord>& records) {
  const std::vector<std::string>& columns = csv_columns(kind);
  std::ostringstream out;
  out << "scenario_id,operation,checks_passed";
  for (const std::string& column : columns) out << "," << column;
  out << "\n";
  for (const ReportRecord& record : records) {
    bool passed = true;
    for (const CheckResult& check : record.checks) passed &= check.pass;
    out << record.scenario_id << "," << record.operation << ","
        << (passed ? "true" : "false");
    for (const std::string& column : columns) {
      out << ",";
      if (record.outputs.contains(column)) {
        out << csv_cell(record.outputs.at(column));
      }
    }
    out << "\n";
  }
  return out.str();
}

// --- builtins -----------------------------------------------------------------

namespace {

struct BuiltinScenario {
  const char* id;
  const char* description;
  const char* json;
};

const BuiltinScenario kBuiltins[] = {
    {"pauli_phi1",
     "two-level pair (sigma_x, sigma_y) at the equal-weight state: both sides "
     "of the relation vanish",
     R"({
  "scenario_id": "pauli_phi1",
  "kind": "finite_dim",
  "parameters": {
    "pair": "pauli_xy",
    "state": [[1, 0], [1, 0]],
    "expect": {
      "bound": {"value": 0.0, "tol": 1e-12},
      "delta_a": {"value": 0.0, "tol": 1e-12},
      "delta_b": {"value": 1.0, "tol": 1e-12},
      "bound_is_zero": {"value": true},
      "a_eigenstate": {"value": true}
    }
  }
})"},
    {"pauli_basis",
     "two-level pair at a basis state: bound and product both equal one",
     R"({
  "scenario_id": "pauli_basis",
  "kind": "finite_dim",
  "parameters": {
    "pair": "pauli_xy",
    "state": [[1, 0], [0, 0]],
    "expect": {
      "bound": {"value": 1.0, "tol": 1e-12},
      "product": {"value": 1.0, "tol": 1e-12},
      "gap": {"value": 0.0, "tol": 1e-9}
    }
  }
})"},
    {"gellmann_psi1",
     "three-level pair (lambda3, lambda4) at the uniform state: zero bound",
     R"({
  "scenario_id": "gellmann_psi1",
  "kind": "finite_dim",
  "parameters": {
    "pair": "gellmann_34",
    "state": [[1, 0], [1, 0], [1, 0]],
    "expect": {
      "bound": {"value": 0.0, "tol": 1e-12},
      "bound_is_zero": {"value": true}
    }
  }
})"},
    {"gellmann_real_family",
     "real-amplitude family scan: the bound vanishes on the whole family",
     R"({
  "scenario_id": "gellmann_real_family",
  "kind": "family_scan",
  "seed": 20230301,
  "parameters": {
    "pair": "gellmann_34",
    "family": {"kind": "real"},
    "expect": {
      "bound_zero_on_family": {"value": true},
      "max_witness_bound": {"max": 1e-9},
      "counter_count": {"value": 0.0, "tol": 0.0}
    }
  }
})"},
    {"gellmann_cbeta_family",
     "proportional family (last amplitude = beta * first, beta real): zero "
     "bound everywhere",
     R"({
  "scenario_id": "gellmann_cbeta_family",
  "kind": "family_scan",
  "seed": 20230302,
  "parameters": {
    "pair": "gellmann_34",
    "family": {"kind": "proportional"},
    "expect": {
      "bound_zero_on_family": {"value": true},
      "counter_count": {"value": 0.0, "tol": 0.0}
    }
  }
})"},
    {"gellmann_counter_family",
     "unconstrained family seeded with the probe (1, 0, i): nonzero bounds "
     "appear",
     R"({
  "scenario_id": "gellmann_counter_family",
  "kind": "family_scan",
  "seed": 20230303,
  "parameters": {
    "pair": "gellmann_34",
    "family": {"kind": "unconstrained", "probes": [[[1, 0], [0, 0], [0, 1]]]},
    "expect": {
      "bound_zero_on_family": {"value": false},
      "counter_count": {"min": 1},
      "probe_min_bound": {"min": 1e-3}
    }
  }
})"},
    {"search_pauli_product",
     "sphere search minimizing the deviation product of (sigma_x, sigma_y)",
     R"({
  "scenario_id": "search_pauli_product",
  "kind": "search",
  "seed": 11,
  "parameters": {
    "pair": "pauli_xy",
    "objective": "product",
    "expect": {"best_value": {"max": 1e-8}}
  }
})"},
    {"search_pauli_bound",
     "sphere search minimizing the bound of (sigma_x, sigma_y)",
     R"({
  "scenario_id": "search_pauli_bound",
  "kind": "search",
  "seed": 12,
  "parameters": {
    "pair": "pauli_xy",
    "objective": "bound",
    "expect": {"best_value": {"max": 1e-8}}
  }
})"},
    {"search_gellmann_gap",
     "sphere search minimizing the gap of (lambda3, lambda4)",
     R"({
  "scenario_id": "search_gellmann_gap",
  "kind": "search",
  "seed": 13,
  "parameters": {
    "pair": "gellmann_34",
    "objective": "gap",
    "expect": {"best_value": {"max": 1e-8}}
  }
})"},
    {"box_standard_domain_pathology",
     "multiplication by x exits every boundary-law domain on (0, l); the "
     "commutator expectation is undefined",
     R"({
  "scenario_id": "box_standard_domain_pathology",
  "kind": "box_standard",
  "parameters": {}
})"},
    {"box_symmetric_domain_shift",
     "multiplication by x shifts the boundary parameter by pi on the "
     "symmetric box",
     R"({
  "scenario_id": "box_symmetric_domain_shift",
  "kind": "box_symmetric",
  "parameters": {
    "check": "domain_shift",
    "alpha_values": [0.5, 1.0, 2.0]
  }
})"},
    {"xm_eigenmode_zero",
     "windowed-position commutator formula vanishes on momentum eigenmodes",
     R"({
  "scenario_id": "xm_eigenmode_zero",
  "kind": "box_symmetric",
  "parameters": {"check": "xm_eigenmodes"}
})"},
    {"xm_unit_modulus",
     "formula vanishes on unit-modulus-boundary states; quadrature agrees",
     R"({
  "scenario_id": "xm_unit_modulus",
  "kind": "box_symmetric",
  "seed": 77,
  "parameters": {"check": "xm_unit_modulus", "count": 25}
})"},
    {"xm_wall_vanishing",
     "formula gives -i*hbar on wall-vanishing states; quadrature agrees",
     R"({
  "scenario_id": "xm_wall_vanishing",
  "kind": "box_symmetric",
  "seed": 78,
  "parameters": {"check": "xm_wall_vanishing", "count": 25}
})"},
    {"xm_bound_cos_ground",
     "ground cosine state: the deviation product exceeds the boundary-formula "
     "bound",
     R"({
  "scenario_id": "xm_bound_cos_ground",
  "kind": "box_symmetric",
  "parameters": {"check": "xm_cos_ground"}
})"},
    {"pt_2x2_unbroken",
     "canonical two-level model in the unbroken phase: C identities and "
     "positivity",
     R"({
  "scenario_id": "pt_2x2_unbroken",
  "kind": "pt_model",
  "seed": 5,
  "parameters": {
    "model": {"r": 1.0, "s": 2.0, "theta": 0.7},
    "expect_phase": "unbroken"
  }
})"},
    {"pt_2x2_broken",
     "canonical two-level model in the broken phase: complex-conjugate pair",
     R"({
  "scenario_id": "pt_2x2_broken",
  "kind": "pt_model",
  "seed": 6,
  "parameters": {
    "model": {"r": 1.0, "s": 0.5, "theta": 1.2},
    "expect_phase": "broken"
  }
})"},
    {"pt_hermitian_limit",
     "Hermitian limit of the canonical model: C collapses to the parity",
     R"({
  "scenario_id": "pt_hermitian_limit",
  "kind": "pt_model",
  "seed": 7,
  "parameters": {
    "model": {"r": 1.0, "s": 2.0, "theta": 0.0},
    "expect_phase": "unbroken",
    "check_c_equals_p": true
  }
})"},
    {"pt_non_universality",
     "observability verdicts differ across two canonical models",
     R"({
  "scenario_id": "pt_non_universality",
  "kind": "pt_non_universality",
  "seed": 424242,
  "parameters": {"count": 3}
})"},
};

}  // namespace

ScenarioConfig builtin_scenario(const std::string& id) {
  for (const BuiltinScenario& builtin : kBuiltins) {
    if (id == builtin.id) {
      return parse_scenario(Json::parse(builtin.json));
    }
  }
  throw SchemaError("unknown builtin scenario '" + id + "'");
}

std::vector<BuiltinInfo> list_builtin_scenarios() {
  std::vector<BuiltinInfo> out;
  for (const BuiltinScenario& builtin : kBuiltins) {
    out.push_back(BuiltinInfo{builtin.id, builtin.description});
  }
  return out;
}

}  // namespace uncert::cli
