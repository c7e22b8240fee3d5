#pragma once

#include <span>
#include <string>
#include <vector>

#include "lakebloom/sim/simulate.hpp"

namespace lakebloom::calibrate {

struct Observation {
  double time = 0.0;     // day
  std::string variable;  // an observable name, see sim::observable_names()
  double value = 0.0;    // canonical model units
  double weight = 1.0;
};

using ObservationSet = std::vector<Observation>;

/// Throws ValidationError on non-finite values, non-positive weights or
/// variables that are not observable.
void validate(const ObservationSet& observations);

/// One observation paired with its model prediction.
struct Residual {
  std::string variable;
  double prediction = 0.0;
  double value = 0.0;
  double weight = 1.0;
};

/// Weighted mean of squared residuals. With `normalize`, each residual is
/// divided by the observation variance of its variable, so the result does not
/// depend on the units a variable is expressed in. A variable whose observations
/// have zero variance is normalized by their mean square instead (or by 1 when
/// that is zero too).
double mse(std::span<const Residual> residuals, bool normalize = true);

/// Pairs every observation with the trajectory interpolated at its time.
/// Throws CoverageError when an observation lies outside the trajectory.
std::vector<Residual> residuals(const sim::Trajectory& trajectory,
                                const ObservationSet& observations);

double mse_objective(const sim::Trajectory& trajectory, const ObservationSet& observations,
                     bool normalize = true);

}  // namespace lakebloom::calibrate
