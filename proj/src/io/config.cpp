#include "lakebloom/io/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lakebloom/common/error.hpp"
#include "lakebloom/io/data_files.hpp"
#include "lakebloom/model/responses.hpp"
#include "lakebloom/model/rhs.hpp"

namespace lakebloom::io {

using Json = nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ValidationError(path.empty() ? "config" : path, "must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
      throw ValidationError(join(path, k), "unknown key");
    }
  }
}

double number(const Json& j, const std::string& key) {
  if (!j.is_number()) throw ValidationError(key, "must be a number");
  return j.get<double>();
}

std::int64_t integer(const Json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ValidationError(key, "must be an integer");
  return j.get<std::int64_t>();
}

std::string string(const Json& j, const std::string& key) {
  if (!j.is_string()) throw ValidationError(key, "must be a string");
  return j.get<std::string>();
}

bool boolean(const Json& j, const std::string& key) {
  if (!j.is_boolean()) throw ValidationError(key, "must be true or false");
  return j.get<bool>();
}

std::vector<double> numbers(const Json& j, const std::string& key) {
  if (!j.is_array()) throw ValidationError(key, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

/// A bare number, or {"value": x, "unit": u} with u equal to `unit`.
double quantity(const Json& j, const std::string& key, std::string_view unit) {
  if (j.is_object()) {
    only_keys(j, key, {"value", "unit"});
    if (!j.contains("value")) throw ValidationError(key, "missing 'value'");
    if (j.contains("unit")) {
      const std::string u = string(j["unit"], join(key, "unit"));
      if (u != unit) {
        throw ValidationError(key, "unit '" + u + "' does not match expected '" + std::string(unit) + "'");
      }
    }
    return number(j["value"], join(key, "value"));
  }
  return number(j, key);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

sim::SimulationSettings parse_simulation(const Json& j) {
  only_keys(j, "simulation", {"t0", "t1", "dt", "store_stride", "clamp_negative"});
  sim::SimulationSettings s;
  if (j.contains("t0")) s.t0 = number(j["t0"], "simulation.t0");
  if (j.contains("t1")) s.t1 = number(j["t1"], "simulation.t1");
  if (j.contains("dt")) s.dt = number(j["dt"], "simulation.dt");
  if (j.contains("store_stride")) s.store_stride = static_cast<int>(integer(j["store_stride"], "simulation.store_stride"));
  if (j.contains("clamp_negative")) s.clamp_negative = boolean(j["clamp_negative"], "simulation.clamp_negative");
  sim::validate(s);
  return s;
}

void parse_parameters(const Json& j, model::ModelParams& p) {
  if (!j.is_object()) throw ValidationError("parameters", "must be an object");
  for (const auto& [k, v] : j.items()) {
    const auto* info = model::find_param(k);
    if (!info) throw ValidationError("parameters." + k, "unknown parameter");
    model::set_param(p, k, quantity(v, "parameters." + k, info->unit));
  }
  model::validate(p);
}

void parse_initial_state(const Json& j, model::LakeState& s) {
  if (!j.is_object()) throw ValidationError("initial_state", "must be an object");
  auto a = s.to_array();
  for (const auto& [k, v] : j.items()) {
    const auto i = model::state_index(k);
    if (!i) throw ValidationError("initial_state." + k, "unknown state component");
    a[*i] = quantity(v, "initial_state." + k, canonical_unit(k));
  }
  s = model::LakeState::from_array(a);
}

void parse_fit(const Json& j, RunConfig& c) {
  only_keys(j, "fit", {"bounds", "population_size", "max_generations", "F", "CR", "penalty",
                       "tolerance", "patience", "normalize"});
  auto& f = c.fit;
  if (j.contains("bounds")) {
    const Json& b = j["bounds"];
    if (!b.is_array()) throw ValidationError("fit.bounds", "must be an array");
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string key = "fit.bounds[" + std::to_string(i) + "]";
      only_keys(b[i], key, {"name", "lower", "upper"});
      for (const char* req : {"name", "lower", "upper"}) {
        if (!b[i].contains(req)) throw ValidationError(key, std::string("missing '") + req + "'");
      }
      c.bounds.push_back({string(b[i]["name"], key + ".name"), number(b[i]["lower"], key + ".lower"),
                          number(b[i]["upper"], key + ".upper")});
    }
    calibrate::validate(c.bounds);
    calibrate::validate_fit_names(c.bounds);
  }
  if (j.contains("population_size")) f.population_size = static_cast<int>(integer(j["population_size"], "fit.population_size"));
  if (j.contains("max_generations")) f.max_generations = static_cast<int>(integer(j["max_generations"], "fit.max_generations"));
  if (j.contains("F")) f.F = number(j["F"], "fit.F");
  if (j.contains("CR")) f.CR = number(j["CR"], "fit.CR");
  if (j.contains("penalty")) f.penalty = number(j["penalty"], "fit.penalty");
  if (j.contains("tolerance")) f.tolerance = number(j["tolerance"], "fit.tolerance");
  if (j.contains("patience")) f.patience = static_cast<int>(integer(j["patience"], "fit.patience"));
  if (j.contains("normalize")) c.normalize = boolean(j["normalize"], "fit.normalize");
  calibrate::validate(f);
}

sensitivity::Transform parse_transform(const std::string& s, const std::string& key) {
  if (s == "offset") return sensitivity::Transform::offset;
  if (s == "scale") return sensitivity::Transform::scale;
  if (s == "set") return sensitivity::Transform::set;
  throw ValidationError(key, "must be 'offset', 'scale' or 'set'");
}

void parse_sobol(const Json& j, sensitivity::SobolDesign& d) {
  only_keys(j, "sobol", {"n", "sampler", "bootstrap", "output", "output_days", "failure_budget", "factors"});
  if (j.contains("n")) {
    const auto n = integer(j["n"], "sobol.n");
    if (n < 0) throw ValidationError("sobol.n", "must be positive");
    d.n = static_cast<std::size_t>(n);
  }
  if (j.contains("sampler")) {
    const std::string s = string(j["sampler"], "sobol.sampler");
    if (s == "sobol") d.sampler = sensitivity::Sampler::sobol;
    else if (s == "uniform") d.sampler = sensitivity::Sampler::uniform;
    else throw ValidationError("sobol.sampler", "must be 'sobol' or 'uniform'");
  }
  if (j.contains("bootstrap")) d.bootstrap = static_cast<int>(integer(j["bootstrap"], "sobol.bootstrap"));
  if (j.contains("output")) d.output = string(j["output"], "sobol.output");
  if (j.contains("output_days")) d.output_times = numbers(j["output_days"], "sobol.output_days");
  if (j.contains("failure_budget")) d.failure_budget = number(j["failure_budget"], "sobol.failure_budget");
  if (j.contains("factors")) {
    const Json& f = j["factors"];
    if (!f.is_array()) throw ValidationError("sobol.factors", "must be an array");
    d.factors.clear();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string key = "sobol.factors[" + std::to_string(i) + "]";
      only_keys(f[i], key, {"name", "target", "transform", "lower", "upper"});
      for (const char* req : {"name", "target", "transform", "lower", "upper"}) {
        if (!f[i].contains(req)) throw ValidationError(key, std::string("missing '") + req + "'");
      }
      d.factors.push_back({string(f[i]["name"], key + ".name"), string(f[i]["target"], key + ".target"),
                           number(f[i]["lower"], key + ".lower"), number(f[i]["upper"], key + ".upper"),
                           parse_transform(string(f[i]["transform"], key + ".transform"), key + ".transform")});
    }
  }
  sensitivity::validate(d);
  sensitivity::validate_targets(d);
}

std::vector<scenario::ScenarioSpec> parse_scenarios(const Json& j) {
  if (!j.is_array()) throw ValidationError("scenarios", "must be an array");
  std::vector<scenario::ScenarioSpec> out;
  std::set<std::string> labels;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string key = "scenarios[" + std::to_string(i) + "]";
    only_keys(j[i], key, {"label", "warm_season_offset", "temperature_offset", "initial_phosphorus",
                          "p_in", "exchange_rate", "depth_offset"});
    scenario::ScenarioSpec s;
    if (!j[i].contains("label")) throw ValidationError(key, "missing 'label'");
    s.label = string(j[i]["label"], key + ".label");
    if (s.label.empty() || !labels.insert(s.label).second) {
      throw ValidationError(key + ".label", "must be non-empty and unique");
    }
    auto opt = [&](const char* name, std::optional<double>& field) {
      if (j[i].contains(name)) field = number(j[i][name], key + "." + name);
    };
    opt("warm_season_offset", s.warm_season_offset);
    opt("temperature_offset", s.temperature_offset);
    opt("initial_phosphorus", s.initial_phosphorus);
    opt("p_in", s.p_in);
    opt("exchange_rate", s.exchange_rate);
    opt("depth_offset", s.depth_offset);
    scenario::validate(s);
    out.push_back(std::move(s));
  }
  return out;
}

scenario::GridSettings parse_grid(const Json& j) {
  only_keys(j, "vulnerability", {"exchange_rates", "depth_offsets", "warming_levels", "base"});
  scenario::GridSettings g;
  if (j.contains("exchange_rates")) g.exchange_rates = numbers(j["exchange_rates"], "vulnerability.exchange_rates");
  if (j.contains("depth_offsets")) g.depth_offsets = numbers(j["depth_offsets"], "vulnerability.depth_offsets");
  if (j.contains("warming_levels")) g.warming_levels = numbers(j["warming_levels"], "vulnerability.warming_levels");
  if (j.contains("base")) {
    const std::string b = string(j["base"], "vulnerability.base");
    if (b == "paired") g.base = scenario::GridBase::paired;
    else if (b == "lake_default") g.base = scenario::GridBase::lake_default;
    else throw ValidationError("vulnerability.base", "must be 'paired' or 'lake_default'");
  }
  scenario::validate(g);
  return g;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                       const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw ParseError(source, line, "malformed JSON");
  }
  only_keys(j, "", {"lake", "seed", "forcing", "observations", "parameters", "initial_state",
                    "simulation", "fit", "sobol", "scenarios", "vulnerability"});

  RunConfig c;
  if (j.contains("lake")) c.lake = string(j["lake"], "lake");
  if (j.contains("seed")) {
    const auto s = integer(j["seed"], "seed");
    if (s < 0) throw ValidationError("seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (!j.contains("forcing")) throw ValidationError("forcing", "a forcing file is required");
  c.forcing_path = resolve(base_dir, string(j["forcing"], "forcing"));
  c.setup.forcing = load_forcing(c.forcing_path);

  c.setup.params = model::default_params();
  if (j.contains("parameters")) parse_parameters(j["parameters"], c.setup.params);
  if (j.contains("simulation")) c.setup.settings = parse_simulation(j["simulation"]);

  const double t0_temperature =
      interpolate_forcing(c.setup.forcing, c.setup.settings.t0, c.setup.params.background.light).temperature;
  c.setup.initial = model::default_initial_state(t0_temperature);
  if (j.contains("initial_state")) parse_initial_state(j["initial_state"], c.setup.initial);

  if (j.contains("observations")) {
    c.observations_path = resolve(base_dir, string(j["observations"], "observations"));
    c.observations = load_observations(*c.observations_path, c.setup.forcing.base_year);
  }
  if (j.contains("fit")) parse_fit(j["fit"], c);
  if (j.contains("sobol")) parse_sobol(j["sobol"], c.sobol);
  if (j.contains("scenarios")) c.scenarios = parse_scenarios(j["scenarios"]);
  if (j.contains("vulnerability")) c.grid = parse_grid(j["vulnerability"]);

  const std::uint64_t seed = c.seed.value_or(kDefaultSeed);
  c.fit.seed = seed;
  c.sobol.seed = seed;
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path(), path.string());
}

}  // namespace lakebloom::io
