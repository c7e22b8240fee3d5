#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lakebloom::calibrate {

/// Default value returned for candidates whose simulation failed.
inline constexpr double kDefaultPenalty = 1e12;

struct Bound {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
};

using ParameterBounds = std::vector<Bound>;

/// Throws ValidationError on empty bounds, duplicate names or lower >= upper.
/// Does not check that names resolve; see validate_fit_names().
void validate(const ParameterBounds& bounds);

struct FitSettings {
  int population_size = 0;   // 0 selects 15 x dimension
  int max_generations = 200;
  double F = 0.7;
  double CR = 0.9;
  std::uint64_t seed = 42;
  double penalty = kDefaultPenalty;
  // Stop once the best objective improved by less than tolerance (relative)
  // over `patience` consecutive generations. patience = 0 disables the test.
  double tolerance = 1e-10;
  int patience = 0;
  int workers = 0;           // 0 selects default_worker_count(); never affects results
};

void validate(const FitSettings& settings);

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> best;
  double best_objective = 0.0;
  std::vector<double> history;  // best-so-far after initialization and each generation
  long evaluations = 0;
  long failures = 0;            // evaluations that returned the penalty or worse
  std::uint64_t seed = 0;
  FitSettings settings;         // with population_size resolved
};

/// Must not throw. Non-finite values are treated as the penalty.
using Objective = std::function<double(std::span<const double>)>;

/// DE/rand/1/bin with reflection into the box and greedy selection.
///
/// All random draws happen on one stream in a fixed candidate order and the
/// trial vectors of a generation are then evaluated in parallel, so the result
/// depends only on the seed and not on the worker count.
FitResult differential_evolution(const Objective& objective, const ParameterBounds& bounds,
                                 const FitSettings& settings);

/// Folds x back into [lo, hi] by mirror reflection at the bounds.
double reflect_into(double x, double lo, double hi);

}  // namespace lakebloom::calibrate
