#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lakebloom/model/params.hpp"
#include "lakebloom/model/rhs.hpp"

namespace lakebloom::io {

struct ForcingSample {
  double time = 0.0;                 // day index
  double temperature = 0.0;          // deg C
  double depth = 0.0;                // epilimnion depth, m
  std::optional<double> light;       // umol photons/m2/s
  std::optional<double> p_in;        // mgP/L

  friend bool operator==(const ForcingSample&, const ForcingSample&) = default;
};

/// Dated forcing record, piecewise-linear between samples and clamped at the ends.
///
/// Optional columns are all-or-nothing: either every sample has a light value
/// or none does (same for p_in).
struct ForcingSeries {
  std::vector<ForcingSample> samples;
  std::optional<int> base_year;  // calendar year whose Jan 1 is day 1, when read from dates

  bool has_light() const { return !samples.empty() && samples.front().light.has_value(); }
  bool has_p_in() const { return !samples.empty() && samples.front().p_in.has_value(); }
  double first_time() const { return samples.front().time; }
  double last_time() const { return samples.back().time; }

  friend bool operator==(const ForcingSeries&, const ForcingSeries&) = default;
};

/// Throws ValidationError unless times increase strictly, depths are positive,
/// there are at least two samples and optional columns are consistent.
void validate(const ForcingSeries& series);

/// Forcing at day t. Times outside the record clamp to the end sample and set
/// ForcingAt::clamped. Light comes from the series when present, else from the cycle.
model::ForcingAt interpolate_forcing(const ForcingSeries& series, double t,
                                     const model::LightCycle& cycle = {});

/// Smooth synthetic season resembling a large eutrophic dimictic lake, one sample per day.
ForcingSeries synthetic_forcing(double t_first, double t_last);

}  // namespace lakebloom::io
