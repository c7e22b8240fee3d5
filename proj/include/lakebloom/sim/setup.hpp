#pragma once

#include "lakebloom/io/forcing.hpp"
#include "lakebloom/model/lake_state.hpp"
#include "lakebloom/model/params.hpp"
#include "lakebloom/sim/simulate.hpp"

namespace lakebloom::sim {

/// The complete input of one simulation run.
struct LakeSetup {
  model::ModelParams params;
  io::ForcingSeries forcing;
  model::LakeState initial;
  SimulationSettings settings;
};

inline Trajectory simulate(const LakeSetup& s) {
  return simulate(s.params, s.forcing, s.initial, s.settings);
}

}  // namespace lakebloom::sim
