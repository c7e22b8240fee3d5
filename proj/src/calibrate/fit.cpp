#include "lakebloom/calibrate/fit.hpp"

#include <cmath>

#include "lakebloom/common/error.hpp"
#include "lakebloom/common/parallel.hpp"

namespace lakebloom::calibrate {

namespace {

std::optional<std::size_t> state_component(std::string_view name) {
  if (!name.starts_with(kInitialStatePrefix)) return std::nullopt;
  return model::state_index(name.substr(kInitialStatePrefix.size()));
}

}  // namespace

void validate_fit_names(const ParameterBounds& bounds) {
  for (const auto& b : bounds) {
    if (!model::find_param(b.name) && !state_component(b.name)) {
      throw ValidationError(b.name, "is neither a model parameter nor an init.<state> component");
    }
  }
}

void apply_named_value(model::ModelParams& params, model::LakeState& state,
                       std::string_view name, double value) {
  if (auto i = state_component(name)) {
    auto a = state.to_array();
    a[*i] = value;
    state = model::LakeState::from_array(a);
    return;
  }
  model::set_param(params, name, value);
}

double read_named_value(const model::ModelParams& params, const model::LakeState& state,
                        std::string_view name) {
  if (auto i = state_component(name)) return state.to_array()[*i];
  return model::get_param(params, name);
}

double evaluate_candidate(std::span<const double> candidate, const FitProblem& problem,
                          double penalty, std::atomic<long>* failures) {
  try {
    if (candidate.size() != problem.bounds.size()) {
      throw ValidationError("fit.bounds", "candidate length does not match the bounds");
    }
    model::ModelParams params = problem.base_params;
    model::LakeState state = problem.base_state;
    for (std::size_t j = 0; j < candidate.size(); ++j) {
      apply_named_value(params, state, problem.bounds[j].name, candidate[j]);
    }
    const auto traj = sim::simulate(params, problem.forcing, state, problem.simulation);
    const double f = mse_objective(traj, problem.observations, problem.normalize);
    if (std::isfinite(f)) return f;
  } catch (...) {
  }
  if (failures) failures->fetch_add(1, std::memory_order_relaxed);
  return penalty;
}

FitResult fit(const FitProblem& problem, const FitSettings& settings) {
  validate(problem.bounds);
  validate_fit_names(problem.bounds);
  validate(problem.observations);
  const Objective objective = [&](std::span<const double> x) {
    return evaluate_candidate(x, problem, settings.penalty);
  };
  return differential_evolution(objective, problem.bounds, settings);
}

std::vector<Curvature> curvature_scan(const FitProblem& problem, std::span<const double> center,
                                      double step, int workers) {
  if (center.size() != problem.bounds.size()) {
    throw ValidationError("fit.bounds", "scan centre length does not match the bounds");
  }
  if (!(step > 0.0 && step < 1.0)) throw ValidationError("step", "must lie in (0, 1)");

  const std::size_t k = center.size();
  // Point 0 is the centre, then (down, up) for each parameter.
  std::vector<std::vector<double>> points(1 + 2 * k, std::vector<double>(center.begin(), center.end()));
  for (std::size_t j = 0; j < k; ++j) {
    points[1 + 2 * j][j] = center[j] * std::exp(-step);
    points[2 + 2 * j][j] = center[j] * std::exp(step);
  }
  std::vector<double> f(points.size());
  parallel_for(points.size(), static_cast<std::size_t>(workers),
               [&](std::size_t i) { f[i] = evaluate_candidate(points[i], problem); });

  std::vector<Curvature> out;
  for (std::size_t j = 0; j < k; ++j) {
    const double c = (f[1 + 2 * j] - 2.0 * f[0] + f[2 + 2 * j]) / (step * step);
    out.push_back({problem.bounds[j].name, center[j], c});
  }
  return out;
}

TrophicState classify_trophic(double total_p) {
  if (!std::isfinite(total_p) || total_p < 0.0) {
    throw DomainError("total phosphorus must be a non-negative concentration");
  }
  if (total_p < 10.0) return TrophicState::oligotrophic;
  if (total_p <= 35.0) return TrophicState::mesotrophic;
  return TrophicState::eutrophic;
}

std::string_view to_string(TrophicState state) {
  switch (state) {
    case TrophicState::oligotrophic: return "oligotrophic";
    case TrophicState::mesotrophic: return "mesotrophic";
    case TrophicState::eutrophic: return "eutrophic";
  }
  return "unknown";
}

}  // namespace lakebloom::calibrate
