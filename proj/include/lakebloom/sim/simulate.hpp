#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lakebloom/io/forcing.hpp"
#include "lakebloom/model/lake_state.hpp"
#include "lakebloom/model/params.hpp"
#include "lakebloom/model/rhs.hpp"

namespace lakebloom::sim {

/// Values closer to zero than this are treated as roundoff and clamped to zero.
inline constexpr double kClampTolerance = 1e-8;

/// Maximum number of substeps a step is split into after a negativity failure.
inline constexpr int kMaxSubsteps = 8;

struct SimulationSettings {
  double t0 = 91.0;
  double t1 = 305.0;
  double dt = 1.0 / 3.0;
  bool clamp_negative = true;
  int store_stride = 3;
};

void validate(const SimulationSettings& settings);

/// Cumulative ledger terms since t0.
struct Diagnostics {
  double p_inflow = 0.0;       // mgP/L
  double p_outflow = 0.0;
  double p_sinking = 0.0;
  double p_clamp = 0.0;        // P added by quota/negativity clamping
  double tox_production = 0.0; // ug/L
  double tox_decay = 0.0;
  double tox_outflow = 0.0;
  double tox_sediment = 0.0;
  double tox_clamp = 0.0;      // toxin added by negativity clamping
};

struct Trajectory {
  std::vector<double> times;
  std::vector<model::LakeState> states;
  std::vector<Diagnostics> diagnostics;
  std::vector<model::ForcingAt> forcing;
  std::vector<std::string> warnings;  // non-fatal events such as substepped steps
  double dt = 0.0;

  bool empty() const { return times.empty(); }
  std::size_t size() const { return times.size(); }
};

using ForcingProvider = std::function<model::ForcingAt(double)>;

struct StepOutcome {
  model::LakeState state;
  model::FluxTerms integrated;  // time-integrated fluxes over the step
  double p_clamp = 0.0;
  double tox_clamp = 0.0;
};

/// One RK4 step with optional clamping. Throws DivergenceError on a
/// non-finite result and StiffnessError on negativity beyond kClampTolerance.
StepOutcome step_rk4_detailed(const model::LakeState& state, double t, double dt,
                              const model::ModelParams& params, const ForcingProvider& forcing,
                              bool clamp_negative = true);

model::LakeState step_rk4(const model::LakeState& state, double t, double dt,
                          const model::ModelParams& params, const ForcingProvider& forcing,
                          bool clamp_negative = true);

/// Integrates from settings.t0 to settings.t1. Deterministic.
///
/// Throws CoverageError when the forcing does not span [t0, t1], ValidationError
/// for invalid inputs, and ModelError subclasses carrying the failing time.
Trajectory simulate(const model::ModelParams& params, const io::ForcingSeries& forcing,
                    const model::LakeState& initial, const SimulationSettings& settings);

// --- observables --------------------------------------------------------------

/// State fields plus burden_daphnia, burden_perch, burden_walleye (ug/mgC).
const std::vector<std::string>& observable_names();
bool is_observable(std::string_view name);

/// Throws ValidationError for an unknown name.
double observable_value(const model::LakeState& state, std::string_view name);

/// Linear interpolation of an observable between stored states.
/// Throws CoverageError when t is outside the trajectory.
double observable_at(const Trajectory& trajectory, std::string_view name, double t);

}  // namespace lakebloom::sim
