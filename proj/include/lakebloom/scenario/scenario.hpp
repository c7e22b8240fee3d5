#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lakebloom/sim/metrics.hpp"
#include "lakebloom/sim/setup.hpp"

namespace lakebloom::scenario {

/// Base MC-LR maxima below this (ug/L) leave the vulnerability index undefined.
inline constexpr double kMclrEpsilon = 1e-6;

/// Declarative change to a lake setup. Unset fields leave the base untouched.
struct ScenarioSpec {
  std::string label;
  std::optional<double> warm_season_offset;  // deg C, day-of-year 121-273 only
  std::optional<double> temperature_offset;  // deg C, every sample
  std::optional<double> initial_phosphorus;  // mgP/L
  std::optional<double> p_in;                // mgP/L, parameter and forcing column
  std::optional<double> exchange_rate;       // m/day
  std::optional<double> depth_offset;        // m, every sample
};

/// Throws ValidationError for negative overrides or non-finite offsets.
void validate(const ScenarioSpec& spec);

/// Pure transform of the base setup. Throws ValidationError when the depth
/// offset leaves a non-positive epilimnion depth anywhere.
sim::LakeSetup apply_scenario(const sim::LakeSetup& base, const ScenarioSpec& spec);

/// max MC-LR of `scenario` over max MC-LR of `base`, or nothing when the base
/// maximum is below kMclrEpsilon. Throws ValidationError on an empty trajectory.
std::optional<double> vulnerability_index(const sim::Trajectory& base,
                                          const sim::Trajectory& scenario);

enum class GridBase {
  paired,        // base run shares the cell's exchange rate and depth offset
  lake_default,  // base run is the unmodified lake
};

struct GridSettings {
  std::vector<double> exchange_rates{0.02, 0.04, 0.06, 0.08, 0.10, 0.12};
  std::vector<double> depth_offsets{0.0, 0.9, 1.8, 2.7};
  std::vector<double> warming_levels{0.5, 1.5, 3.5};
  GridBase base = GridBase::paired;
};

void validate(const GridSettings& settings);

struct GridCell {
  double exchange_rate = 0.0;
  double depth_offset = 0.0;
  double warming = 0.0;
  std::optional<double> index;
  std::string status;  // "ok", "undefined" (base below epsilon) or "failed: <reason>"
};

struct VulnerabilityGrid {
  GridSettings settings;
  std::vector<GridCell> cells;  // warming-major, then depth offset, then exchange rate

  const GridCell& at(std::size_t warming, std::size_t depth, std::size_t exchange) const;
};

/// Every (exchange rate, depth offset, warming) cell; the scenario run adds the
/// warming as a warm-season offset. A failed cell is marked and the grid completes.
VulnerabilityGrid vulnerability_grid(const sim::LakeSetup& base, const GridSettings& settings,
                                     int workers = 0);

struct SweepItem {
  ScenarioSpec spec;
  std::optional<sim::Trajectory> trajectory;
  std::optional<sim::SeasonalMetrics> metrics;
  std::string error;  // empty on success
};

/// Independent runs, one per spec, in input order. Failures are reported per item.
std::vector<SweepItem> sweep(const sim::LakeSetup& base, const std::vector<ScenarioSpec>& specs,
                             int workers = 0);

}  // namespace lakebloom::scenario
