#pragma once

#include <string>
#include <vector>

#include "lakebloom/calibrate/de.hpp"
#include "lakebloom/scenario/scenario.hpp"
#include "lakebloom/sensitivity/sobol.hpp"
#include "lakebloom/sim/metrics.hpp"
#include "lakebloom/sim/simulate.hpp"

// Text serializations of every result type. CSV numbers use %.17g; JSON
// numbers use the shortest representation that reads back to the same double.
namespace lakebloom::io {

/// Wide CSV: time, every state component, then the three body burdens.
std::string trajectory_csv(const sim::Trajectory& trajectory);

/// Cumulative phosphorus and toxin ledger terms at every stored time.
std::string diagnostics_csv(const sim::Trajectory& trajectory);

std::string metrics_json(const sim::SeasonalMetrics& metrics);

std::string fit_json(const calibrate::FitResult& result);

/// Long format: time, factor, s1, st, s1_ci, st_ci ("NA" when undefined).
std::string sobol_csv(const sensitivity::SobolResult& result);
std::string sobol_json(const sensitivity::SobolResult& result);

/// exchange_rate, depth_offset, warming, index, status.
std::string grid_csv(const scenario::VulnerabilityGrid& grid);
std::string grid_json(const scenario::VulnerabilityGrid& grid, const std::string& base_hash);

/// Long format: label, time, variable, value for every successful item.
std::string sweep_csv(const std::vector<scenario::SweepItem>& items);

/// One row per item: label, status, peaks and peak days of cyano and mclr, minimum oxygen.
std::string sweep_metrics_csv(const std::vector<scenario::SweepItem>& items);

}  // namespace lakebloom::io
