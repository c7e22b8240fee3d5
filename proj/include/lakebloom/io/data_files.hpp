#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lakebloom/calibrate/objective.hpp"
#include "lakebloom/io/forcing.hpp"

namespace lakebloom::io {

/// A calendar date on the model's 365-day calendar.
struct DayStamp {
  int year = 0;
  double day_of_year = 0.0;  // 1..365; Feb 29 maps to 59.5
};

/// Strict YYYY-MM-DD. Returns nothing for anything else or an invalid date.
std::optional<DayStamp> parse_iso_date(std::string_view text);

/// Model day for a date column value: an ISO date becomes
/// day_of_year + 365 * (year - base_year), where base_year defaults to the year
/// of the first date seen; a plain number is taken as the day itself.
class DayParser {
 public:
  explicit DayParser(std::optional<int> base_year = std::nullopt) : base_year_(base_year) {}
  double operator()(std::string_view field, const std::string& source, std::size_t line);
  std::optional<int> base_year() const { return base_year_; }

 private:
  std::optional<int> base_year_;
};

/// Header `date,temperature_c,epilimnion_m[,light_umol_m2_s][,p_in_mgP_L]`.
/// Throws ParseError naming the line on schema, value or ordering problems.
ForcingSeries load_forcing(const std::filesystem::path& path);

/// Writes the forcing schema with numeric days in the date column (exact round trip).
std::string forcing_csv(const ForcingSeries& series);

/// Multiplier converting `unit` to the canonical unit of `variable`, or
/// nothing when the unit is not accepted for that variable.
std::optional<double> unit_factor(std::string_view variable, std::string_view unit);

/// Canonical unit of an observable, e.g. "ug/L" for mclr.
std::string_view canonical_unit(std::string_view variable);

/// Header `date,variable,value,unit[,weight]`. Values are converted to model
/// units and sorted by time (stable). ISO dates are counted from `base_year`
/// (normally the forcing's) or, when absent, from the first date in the file.
calibrate::ObservationSet load_observations(const std::filesystem::path& path,
                                            std::optional<int> base_year = std::nullopt);

/// Writes observations in canonical units with numeric days.
std::string observations_csv(const calibrate::ObservationSet& observations);

}  // namespace lakebloom::io
