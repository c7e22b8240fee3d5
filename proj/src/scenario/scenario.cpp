#include "lakebloom/scenario/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "lakebloom/common/calendar.hpp"
#include "lakebloom/common/error.hpp"
#include "lakebloom/common/parallel.hpp"

namespace lakebloom::scenario {

namespace {

void check_finite(const std::optional<double>& v, const std::string& key) {
  if (v && !std::isfinite(*v)) throw ValidationError(key, "must be finite");
}

void check_non_negative(const std::optional<double>& v, const std::string& key) {
  if (v && !(*v >= 0.0 && std::isfinite(*v))) throw ValidationError(key, "must be a non-negative number");
}

double max_mclr(const sim::Trajectory& t) {
  if (t.empty()) throw ValidationError("trajectory", "is empty");
  double m = t.states.front().mclr;
  for (const auto& s : t.states) m = std::max(m, s.mclr);
  return m;
}

}  // namespace

void validate(const ScenarioSpec& s) {
  const std::string p = s.label.empty() ? "scenario" : "scenario '" + s.label + "'";
  check_finite(s.warm_season_offset, p + ".warm_season_offset");
  check_finite(s.temperature_offset, p + ".temperature_offset");
  check_finite(s.depth_offset, p + ".depth_offset");
  check_non_negative(s.initial_phosphorus, p + ".initial_phosphorus");
  check_non_negative(s.p_in, p + ".p_in");
  check_non_negative(s.exchange_rate, p + ".exchange_rate");
}

sim::LakeSetup apply_scenario(const sim::LakeSetup& base, const ScenarioSpec& spec) {
  validate(spec);
  sim::LakeSetup out = base;
  for (auto& x : out.forcing.samples) {
    if (spec.temperature_offset) x.temperature += *spec.temperature_offset;
    if (spec.warm_season_offset && in_warm_season(x.time)) x.temperature += *spec.warm_season_offset;
    if (spec.depth_offset) {
      x.depth += *spec.depth_offset;
      if (!(x.depth > 0.0)) {
        throw ValidationError("depth_offset", "leaves a non-positive epilimnion depth at day " +
                                                  std::to_string(x.time));
      }
    }
    if (spec.p_in && x.p_in) x.p_in = *spec.p_in;
  }
  if (spec.p_in) out.params.background.p_in = *spec.p_in;
  if (spec.exchange_rate) out.params.background.exchange_rate = *spec.exchange_rate;
  if (spec.initial_phosphorus) out.initial.phosphorus = *spec.initial_phosphorus;
  return out;
}

std::optional<double> vulnerability_index(const sim::Trajectory& base,
                                          const sim::Trajectory& scenario) {
  const double b = max_mclr(base);
  const double s = max_mclr(scenario);
  if (b < kMclrEpsilon) return std::nullopt;
  return s / b;
}

void validate(const GridSettings& g) {
  auto check = [](const std::vector<double>& v, const std::string& key) {
    if (v.empty()) throw ValidationError(key, "must not be empty");
    for (double x : v) {
      if (!std::isfinite(x)) throw ValidationError(key, "must be finite");
    }
  };
  check(g.exchange_rates, "vulnerability.exchange_rates");
  check(g.depth_offsets, "vulnerability.depth_offsets");
  check(g.warming_levels, "vulnerability.warming_levels");
  for (double x : g.exchange_rates) {
    if (x < 0.0) throw ValidationError("vulnerability.exchange_rates", "must be non-negative");
  }
}

const GridCell& VulnerabilityGrid::at(std::size_t w, std::size_t d, std::size_t e) const {
  const std::size_t nd = settings.depth_offsets.size();
  const std::size_t ne = settings.exchange_rates.size();
  return cells.at((w * nd + d) * ne + e);
}

VulnerabilityGrid vulnerability_grid(const sim::LakeSetup& base, const GridSettings& settings,
                                     int workers) {
  validate(settings);
  const std::size_t nw = settings.warming_levels.size();
  const std::size_t nd = settings.depth_offsets.size();
  const std::size_t ne = settings.exchange_rates.size();

  // Runs 0 .. nd*ne-1 are the bases (paired) and the rest are scenarios.
  const std::size_t n_base = settings.base == GridBase::paired ? nd * ne : 1;
  std::vector<ScenarioSpec> specs;
  for (std::size_t d = 0; d < nd && settings.base == GridBase::paired; ++d) {
    for (std::size_t e = 0; e < ne; ++e) {
      ScenarioSpec s;
      s.exchange_rate = settings.exchange_rates[e];
      s.depth_offset = settings.depth_offsets[d];
      specs.push_back(s);
    }
  }
  if (settings.base == GridBase::lake_default) specs.emplace_back();
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t d = 0; d < nd; ++d) {
      for (std::size_t e = 0; e < ne; ++e) {
        ScenarioSpec s;
        s.exchange_rate = settings.exchange_rates[e];
        s.depth_offset = settings.depth_offsets[d];
        s.warm_season_offset = settings.warming_levels[w];
        specs.push_back(s);
      }
    }
  }

  std::vector<std::optional<double>> peaks(specs.size());
  std::vector<std::string> errors(specs.size());
  parallel_for(specs.size(), static_cast<std::size_t>(workers), [&](std::size_t i) {
    try {
      peaks[i] = max_mclr(sim::simulate(apply_scenario(base, specs[i])));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  VulnerabilityGrid grid;
  grid.settings = settings;
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t d = 0; d < nd; ++d) {
      for (std::size_t e = 0; e < ne; ++e) {
        const std::size_t ib = settings.base == GridBase::paired ? d * ne + e : 0;
        const std::size_t is = n_base + (w * nd + d) * ne + e;
        GridCell c{settings.exchange_rates[e], settings.depth_offsets[d],
                   settings.warming_levels[w], std::nullopt, "ok"};
        if (!peaks[ib]) {
          c.status = "failed: base run: " + errors[ib];
        } else if (!peaks[is]) {
          c.status = "failed: " + errors[is];
        } else if (*peaks[ib] < kMclrEpsilon) {
          c.status = "undefined";
        } else {
          c.index = *peaks[is] / *peaks[ib];
        }
        grid.cells.push_back(std::move(c));
      }
    }
  }
  return grid;
}

std::vector<SweepItem> sweep(const sim::LakeSetup& base, const std::vector<ScenarioSpec>& specs,
                             int workers) {
  std::vector<SweepItem> items(specs.size());
  parallel_for(specs.size(), static_cast<std::size_t>(workers), [&](std::size_t i) {
    items[i].spec = specs[i];
    try {
      auto traj = sim::simulate(apply_scenario(base, specs[i]));
      items[i].metrics = sim::seasonal_metrics(traj);
      items[i].trajectory = std::move(traj);
    } catch (const std::exception& e) {
      items[i].error = e.what();
    }
  });
  return items;
}

}  // namespace lakebloom::scenario
