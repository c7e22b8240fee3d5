#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lakebloom/sim/simulate.hpp"

namespace lakebloom::sim {

struct VariableMetrics {
  std::string name;
  double peak = 0.0;
  double peak_day = 0.0;               // first stored time attaining the peak
  std::optional<double> warm_mean;     // empty when no stored time is in May 1 - Sep 30
};

struct SeasonalMetrics {
  std::vector<VariableMetrics> variables;  // in observable_names() order
  double min_oxygen = 0.0;
  double min_oxygen_day = 0.0;

  /// Throws ValidationError for an unknown name.
  const VariableMetrics& at(std::string_view name) const;
};

/// Peaks, warm-season means and minimum oxygen over the stored states.
/// Throws ValidationError on an empty trajectory.
SeasonalMetrics seasonal_metrics(const Trajectory& trajectory);

/// Peak and warm-season mean of a single series (used by seasonal_metrics).
VariableMetrics series_metrics(std::string name, const std::vector<double>& times,
                               const std::vector<double>& values);

}  // namespace lakebloom::sim
