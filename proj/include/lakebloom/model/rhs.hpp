#pragma once

#include <optional>

#include "lakebloom/model/lake_state.hpp"
#include "lakebloom/model/params.hpp"

namespace lakebloom::model {

/// Physical forcing at one instant.
struct ForcingAt {
  double temperature = 20.0;       // deg C
  double depth = 5.0;              // epilimnion depth, m
  double light = 0.0;              // surface light, umol photons/m2/s
  std::optional<double> p_in;      // overrides background.p_in when set, mgP/L
  bool clamped = false;            // requested time was outside the forcing record
};

/// Ledger-relevant fluxes, all per litre of lake water per day.
struct FluxTerms {
  // phosphorus, mgP/L/day
  double p_inflow = 0.0;
  double p_outflow = 0.0;    // dissolved and phytoplankton-bound P flushed out
  double p_sinking = 0.0;    // algal P lost to sinking
  double p_uptake = 0.0;
  double p_recycled = 0.0;

  // toxin, ug/L/day
  double tox_production = 0.0;  // released from cyanobacteria into dissolved and animal pools
  double tox_decay = 0.0;
  double tox_outflow = 0.0;
  double tox_sediment = 0.0;    // carried down by dead animals

  // oxygen, mg/L/day
  double o2_photosynthesis = 0.0;
  double o2_respiration = 0.0;
  double o2_bod = 0.0;
  double o2_reaeration = 0.0;
  double o2_exchange = 0.0;
};

struct Derivatives {
  LakeState d;
  FluxTerms flux;
};

/// Right-hand side of the lake ODE system.
///
/// Ingestion is temperature-scaled at the consumer, and the same scaled flux
/// leaves the prey pool, so phosphorus and toxin balances close exactly.
/// Throws NonFiniteDerivativeError naming the component when a derivative is
/// NaN or infinite, and ValidationError for a non-positive depth.
Derivatives rhs(double t, const LakeState& state, const ModelParams& params, const ForcingAt& forcing);

/// Total phosphorus held by the system, mgP/L.
double total_phosphorus(const LakeState& s, const ModelParams& p);

/// Toxin held in the dissolved pool and all animals, ug/L.
double toxin_holdings(const LakeState& s);

/// Derived body burdens (ug/mgC).
struct Burdens {
  double daphnia = 0.0;
  double perch = 0.0;
  double walleye = 0.0;
};
Burdens burdens(const LakeState& s);

/// Default initial state for a season starting at the given water temperature.
LakeState default_initial_state(double temperature);

}  // namespace lakebloom::model
