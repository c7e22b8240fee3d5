#include "lakebloom/calibrate/de.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lakebloom/common/error.hpp"
#include "lakebloom/common/parallel.hpp"
#include "lakebloom/common/random.hpp"

namespace lakebloom::calibrate {

void validate(const ParameterBounds& bounds) {
  if (bounds.empty()) throw ValidationError("fit.bounds", "at least one parameter is required");
  std::set<std::string> seen;
  for (const auto& b : bounds) {
    if (!seen.insert(b.name).second) throw ValidationError(b.name, "appears twice in the bounds");
    if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || !(b.lower < b.upper)) {
      throw ValidationError(b.name, "bounds need finite lower < upper");
    }
  }
}

void validate(const FitSettings& s) {
  if (s.population_size != 0 && s.population_size < 4) {
    throw ValidationError("fit.population_size", "must be at least 4");
  }
  if (s.max_generations < 0) throw ValidationError("fit.max_generations", "must be non-negative");
  if (!(s.F > 0.0 && s.F <= 2.0)) throw ValidationError("fit.F", "must lie in (0, 2]");
  if (!(s.CR >= 0.0 && s.CR <= 1.0)) throw ValidationError("fit.CR", "must lie in [0, 1]");
  if (!(s.penalty > 0.0) || !std::isfinite(s.penalty)) {
    throw ValidationError("fit.penalty", "must be positive and finite");
  }
  if (!(s.tolerance >= 0.0)) throw ValidationError("fit.tolerance", "must be non-negative");
  if (s.patience < 0) throw ValidationError("fit.patience", "must be non-negative");
  if (s.workers < 0) throw ValidationError("workers", "must be non-negative");
}

double reflect_into(double x, double lo, double hi) {
  if (x >= lo && x <= hi) return x;
  const double w = hi - lo;
  double y = std::fmod(x - lo, 2.0 * w);
  if (y < 0.0) y += 2.0 * w;
  if (y > w) y = 2.0 * w - y;
  return std::clamp(lo + y, lo, hi);
}

FitResult differential_evolution(const Objective& objective, const ParameterBounds& bounds,
                                 const FitSettings& settings) {
  validate(bounds);
  validate(settings);

  const std::size_t dim = bounds.size();
  FitResult result;
  result.settings = settings;
  if (result.settings.population_size == 0) {
    result.settings.population_size = static_cast<int>(std::max<std::size_t>(15 * dim, 4));
  }
  result.seed = settings.seed;
  for (const auto& b : bounds) result.names.push_back(b.name);

  const auto np = static_cast<std::size_t>(result.settings.population_size);
  const auto workers = static_cast<std::size_t>(settings.workers);
  Rng rng(settings.seed);

  auto evaluate_all = [&](const std::vector<std::vector<double>>& xs, std::vector<double>& fs) {
    parallel_for(xs.size(), workers, [&](std::size_t i) {
      const double f = objective(xs[i]);
      fs[i] = std::isfinite(f) ? f : settings.penalty;
    });
    result.evaluations += static_cast<long>(xs.size());
    for (double f : fs) {
      if (f >= settings.penalty) ++result.failures;
    }
  };

  std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
  for (auto& x : pop) {
    for (std::size_t j = 0; j < dim; ++j) x[j] = rng.uniform(bounds[j].lower, bounds[j].upper);
  }
  std::vector<double> fit(np);
  evaluate_all(pop, fit);

  auto best_index = [&] {
    return static_cast<std::size_t>(std::min_element(fit.begin(), fit.end()) - fit.begin());
  };
  std::size_t ib = best_index();
  result.best = pop[ib];
  result.best_objective = fit[ib];
  result.history.push_back(result.best_objective);

  std::vector<std::vector<double>> trial(np, std::vector<double>(dim));
  std::vector<double> trial_fit(np);
  int stalled = 0;
  for (int gen = 0; gen < settings.max_generations; ++gen) {
    for (std::size_t i = 0; i < np; ++i) {
      std::size_t r1, r2, r3;
      do r1 = rng.below(np); while (r1 == i);
      do r2 = rng.below(np); while (r2 == i || r2 == r1);
      do r3 = rng.below(np); while (r3 == i || r3 == r1 || r3 == r2);
      const std::size_t forced = rng.below(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        const double u = rng.uniform();
        if (u < settings.CR || j == forced) {
          const double v = pop[r1][j] + settings.F * (pop[r2][j] - pop[r3][j]);
          trial[i][j] = reflect_into(v, bounds[j].lower, bounds[j].upper);
        } else {
          trial[i][j] = pop[i][j];
        }
      }
    }
    evaluate_all(trial, trial_fit);
    for (std::size_t i = 0; i < np; ++i) {
      if (trial_fit[i] <= fit[i]) {
        pop[i].swap(trial[i]);
        fit[i] = trial_fit[i];
      }
    }

    const double previous = result.best_objective;
    ib = best_index();
    if (fit[ib] < result.best_objective) {
      result.best = pop[ib];
      result.best_objective = fit[ib];
    }
    result.history.push_back(result.best_objective);

    if (settings.patience > 0) {
      const double gain = previous - result.best_objective;
      stalled = gain <= settings.tolerance * std::max(1.0, std::abs(previous)) ? stalled + 1 : 0;
      if (stalled >= settings.patience) break;
    }
  }
  return result;
}

}  // namespace lakebloom::calibrate
