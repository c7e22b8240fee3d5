#pragma once

#include <atomic>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lakebloom/calibrate/de.hpp"
#include "lakebloom/calibrate/objective.hpp"
#include "lakebloom/io/forcing.hpp"
#include "lakebloom/model/lake_state.hpp"
#include "lakebloom/model/params.hpp"
#include "lakebloom/sim/simulate.hpp"

namespace lakebloom::calibrate {

/// Prefix addressing an initial-state component in bounds, e.g. "init.phosphorus".
inline constexpr std::string_view kInitialStatePrefix = "init.";

/// Everything a candidate evaluation needs besides the candidate itself.
struct FitProblem {
  model::ModelParams base_params;
  model::LakeState base_state;
  io::ForcingSeries forcing;
  sim::SimulationSettings simulation;
  ObservationSet observations;
  ParameterBounds bounds;
  bool normalize = true;
};

/// Throws ValidationError naming the first bound that is neither a parameter
/// nor an "init.<state>" component.
void validate_fit_names(const ParameterBounds& bounds);

/// Writes a named value into the parameters or the initial state.
void apply_named_value(model::ModelParams& params, model::LakeState& state,
                       std::string_view name, double value);
double read_named_value(const model::ModelParams& params, const model::LakeState& state,
                        std::string_view name);

/// Patches the base inputs with the candidate, simulates and scores it.
///
/// Never throws: any failure (invalid parameter combination, stiffness,
/// divergence, coverage) yields `penalty` and increments `failures` if given.
double evaluate_candidate(std::span<const double> candidate, const FitProblem& problem,
                          double penalty = kDefaultPenalty,
                          std::atomic<long>* failures = nullptr);

/// Differential evolution over evaluate_candidate.
FitResult fit(const FitProblem& problem, const FitSettings& settings);

struct Curvature {
  std::string name;
  double value = 0.0;     // parameter value the scan was centred on
  double relative = 0.0;  // d2f/d(ln x)2 estimated by central differences
};

/// One-at-a-time objective curvature around `center` with relative step `step`.
/// Parameters with negligible curvature are poorly identified by the data.
std::vector<Curvature> curvature_scan(const FitProblem& problem, std::span<const double> center,
                                      double step = 0.1, int workers = 0);

enum class TrophicState { oligotrophic, mesotrophic, eutrophic };

/// Total phosphorus in ug/L: below 10 oligotrophic, 10 to 35 mesotrophic,
/// above 35 eutrophic. Throws DomainError for negative or non-finite input.
TrophicState classify_trophic(double total_p_ug_per_l);
std::string_view to_string(TrophicState state);

}  // namespace lakebloom::calibrate
