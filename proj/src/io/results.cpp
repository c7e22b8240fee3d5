#include "lakebloom/io/results.hpp"

#include <cmath>

#include "json.hpp"
#include "lakebloom/io/csv.hpp"

namespace lakebloom::io {

using Json = nlohmann::ordered_json;

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const char* transform_name(sensitivity::Transform t) {
  switch (t) {
    case sensitivity::Transform::offset: return "offset";
    case sensitivity::Transform::scale: return "scale";
    case sensitivity::Transform::set: return "set";
  }
  return "";
}

}  // namespace

std::string trajectory_csv(const sim::Trajectory& traj) {
  std::vector<std::string> header{"time"};
  for (const auto& n : sim::observable_names()) header.push_back(n);
  std::string out = csv_line(header);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::vector<std::string> f{format_number(traj.times[i])};
    for (const auto& n : sim::observable_names()) {
      f.push_back(format_number(sim::observable_value(traj.states[i], n)));
    }
    out += csv_line(f);
  }
  return out;
}

std::string diagnostics_csv(const sim::Trajectory& traj) {
  std::string out = csv_line({"time", "p_inflow", "p_outflow", "p_sinking", "p_clamp",
                              "tox_production", "tox_decay", "tox_outflow", "tox_sediment",
                              "tox_clamp"});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& d = traj.diagnostics[i];
    out += csv_line({format_number(traj.times[i]), format_number(d.p_inflow),
                     format_number(d.p_outflow), format_number(d.p_sinking),
                     format_number(d.p_clamp), format_number(d.tox_production),
                     format_number(d.tox_decay), format_number(d.tox_outflow),
                     format_number(d.tox_sediment), format_number(d.tox_clamp)});
  }
  return out;
}

std::string metrics_json(const sim::SeasonalMetrics& m) {
  Json vars = Json::object();
  for (const auto& v : m.variables) {
    vars[v.name] = {{"peak", v.peak},
                    {"peak_day", v.peak_day},
                    {"warm_season_mean", v.warm_mean ? Json(*v.warm_mean) : Json(nullptr)}};
  }
  Json doc;
  doc["min_oxygen"] = m.min_oxygen;
  doc["min_oxygen_day"] = m.min_oxygen_day;
  doc["variables"] = vars;
  return dump(doc);
}

std::string fit_json(const calibrate::FitResult& r) {
  Json best = Json::object();
  for (std::size_t i = 0; i < r.names.size(); ++i) best[r.names[i]] = r.best[i];
  const auto& s = r.settings;
  Json doc;
  doc["best"] = best;
  doc["best_objective"] = r.best_objective;
  doc["evaluations"] = r.evaluations;
  doc["failures"] = r.failures;
  doc["generations"] = r.history.empty() ? 0 : r.history.size() - 1;
  doc["history"] = r.history;
  doc["seed"] = r.seed;
  doc["settings"] = {{"algorithm", "DE/rand/1/bin"},
                     {"population_size", s.population_size},
                     {"max_generations", s.max_generations},
                     {"F", s.F},
                     {"CR", s.CR},
                     {"penalty", s.penalty},
                     {"tolerance", s.tolerance},
                     {"patience", s.patience}};
  return dump(doc);
}

std::string sobol_csv(const sensitivity::SobolResult& r) {
  std::string out = csv_line({"time", "factor", "s1", "st", "s1_ci", "st_ci"});
  for (const auto& p : r.points) {
    for (std::size_t i = 0; i < r.design.factors.size(); ++i) {
      const auto& f = p.indices.factors[i];
      out += csv_line({format_number(p.time), r.design.factors[i].name, format_number(f.s1),
                       format_number(f.st), format_number(f.s1_ci), format_number(f.st_ci)});
    }
  }
  return out;
}

std::string sobol_json(const sensitivity::SobolResult& r) {
  Json factors = Json::array();
  for (const auto& f : r.design.factors) {
    factors.push_back({{"name", f.name},
                       {"target", f.target},
                       {"transform", transform_name(f.transform)},
                       {"lower", f.lower},
                       {"upper", f.upper}});
  }
  Json points = Json::array();
  for (const auto& p : r.points) {
    Json idx = Json::object();
    for (std::size_t i = 0; i < r.design.factors.size(); ++i) {
      const auto& f = p.indices.factors[i];
      idx[r.design.factors[i].name] = {{"s1", number_or_null(f.s1)},
                                       {"st", number_or_null(f.st)},
                                       {"s1_ci", number_or_null(f.s1_ci)},
                                       {"st_ci", number_or_null(f.st_ci)}};
    }
    points.push_back({{"time", p.time}, {"degenerate", p.indices.degenerate}, {"indices", idx}});
  }
  Json doc;
  doc["design"] = {{"n", r.design.n},
                   {"seed", r.design.seed},
                   {"sampler", r.design.sampler == sensitivity::Sampler::sobol ? "sobol" : "uniform"},
                   {"bootstrap", r.design.bootstrap},
                   {"output", r.design.output},
                   {"output_days", r.design.output_times},
                   {"failure_budget", r.design.failure_budget},
                   {"factors", factors}};
  doc["evaluations"] = r.evaluations;
  doc["n_effective"] = r.n_effective;
  doc["failed_rows"] = r.failed_rows;
  doc["points"] = points;
  return dump(doc);
}

std::string grid_csv(const scenario::VulnerabilityGrid& g) {
  std::string out = csv_line({"exchange_rate", "depth_offset", "warming", "index", "status"});
  for (const auto& c : g.cells) {
    out += csv_line({format_number(c.exchange_rate), format_number(c.depth_offset),
                     format_number(c.warming), c.index ? format_number(*c.index) : "NA", c.status});
  }
  return out;
}

std::string grid_json(const scenario::VulnerabilityGrid& g, const std::string& base_hash) {
  const auto& s = g.settings;
  Json matrices = Json::array();
  for (std::size_t w = 0; w < s.warming_levels.size(); ++w) {
    Json rows = Json::array();
    for (std::size_t d = 0; d < s.depth_offsets.size(); ++d) {
      Json row = Json::array();
      for (std::size_t e = 0; e < s.exchange_rates.size(); ++e) {
        const auto& c = g.at(w, d, e);
        row.push_back(c.index ? Json(*c.index) : Json(nullptr));
      }
      rows.push_back(row);
    }
    matrices.push_back({{"warming", s.warming_levels[w]}, {"indices", rows}});
  }
  Json doc;
  doc["base"] = s.base == scenario::GridBase::paired ? "paired" : "lake_default";
  doc["base_hash"] = base_hash;
  doc["exchange_rates"] = s.exchange_rates;
  doc["depth_offsets"] = s.depth_offsets;
  doc["warming_levels"] = s.warming_levels;
  doc["matrices"] = matrices;
  return dump(doc);
}

std::string sweep_csv(const std::vector<scenario::SweepItem>& items) {
  std::string out = csv_line({"label", "time", "variable", "value"});
  for (const auto& it : items) {
    if (!it.trajectory) continue;
    const auto& t = *it.trajectory;
    for (const auto& name : sim::observable_names()) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        out += csv_line({it.spec.label, format_number(t.times[i]), name,
                         format_number(sim::observable_value(t.states[i], name))});
      }
    }
  }
  return out;
}

std::string sweep_metrics_csv(const std::vector<scenario::SweepItem>& items) {
  std::string out = csv_line({"label", "status", "peak_cyano", "peak_cyano_day", "peak_mclr",
                              "peak_mclr_day", "min_oxygen", "min_oxygen_day"});
  for (const auto& it : items) {
    if (!it.metrics) {
      out += csv_line({it.spec.label, "failed: " + it.error, "NA", "NA", "NA", "NA", "NA", "NA"});
      continue;
    }
    const auto& m = *it.metrics;
    const auto& c = m.at("cyano");
    const auto& x = m.at("mclr");
    out += csv_line({it.spec.label, "ok", format_number(c.peak), format_number(c.peak_day),
                     format_number(x.peak), format_number(x.peak_day), format_number(m.min_oxygen),
                     format_number(m.min_oxygen_day)});
  }
  return out;
}

}  // namespace lakebloom::io
