#pragma once

#include <cmath>

namespace lakebloom {

// Model time is a day index: day 1 is Jan 1 of the first simulated year and
// every year has 365 days.
inline constexpr double kDaysPerYear = 365.0;

// May 1 .. Sep 30 inclusive, as day-of-year.
inline constexpr int kWarmSeasonFirstDay = 121;
inline constexpr int kWarmSeasonLastDay = 273;

/// Day-of-year in [1, 366) for a day index.
inline double day_of_year(double t) {
  double doy = std::fmod(t - 1.0, kDaysPerYear);
  if (doy < 0.0) doy += kDaysPerYear;
  return doy + 1.0;
}

/// True when t falls on a warm-season day (whole days 121 through 273).
inline bool in_warm_season(double t) {
  const double doy = day_of_year(t);
  return doy >= kWarmSeasonFirstDay && doy < kWarmSeasonLastDay + 1;
}

}  // namespace lakebloom
