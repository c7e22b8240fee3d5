#include "lakebloom/sim/metrics.hpp"

#include "lakebloom/common/calendar.hpp"
#include "lakebloom/common/error.hpp"

namespace lakebloom::sim {

const VariableMetrics& SeasonalMetrics::at(std::string_view name) const {
  for (const auto& v : variables) {
    if (v.name == name) return v;
  }
  throw ValidationError(std::string(name), "no metrics for this variable");
}

VariableMetrics series_metrics(std::string name, const std::vector<double>& times,
                               const std::vector<double>& values) {
  if (times.empty() || times.size() != values.size()) {
    throw ValidationError(name, "metrics need a non-empty series with matching times");
  }
  VariableMetrics m;
  m.name = std::move(name);
  m.peak = values[0];
  m.peak_day = times[0];
  double warm_sum = 0.0;
  std::size_t warm_n = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > m.peak) {
      m.peak = values[i];
      m.peak_day = times[i];
    }
    if (in_warm_season(times[i])) {
      warm_sum += values[i];
      ++warm_n;
    }
  }
  if (warm_n > 0) m.warm_mean = warm_sum / static_cast<double>(warm_n);
  return m;
}

SeasonalMetrics seasonal_metrics(const Trajectory& traj) {
  if (traj.empty()) throw ValidationError("trajectory", "is empty");
  SeasonalMetrics out;
  std::vector<double> values(traj.size());
  for (const auto& name : observable_names()) {
    for (std::size_t i = 0; i < traj.size(); ++i) values[i] = observable_value(traj.states[i], name);
    out.variables.push_back(series_metrics(name, traj.times, values));
  }
  out.min_oxygen = traj.states[0].oxygen;
  out.min_oxygen_day = traj.times[0];
  for (std::size_t i = 1; i < traj.size(); ++i) {
    if (traj.states[i].oxygen < out.min_oxygen) {
      out.min_oxygen = traj.states[i].oxygen;
      out.min_oxygen_day = traj.times[i];
    }
  }
  return out;
}

}  // namespace lakebloom::sim
