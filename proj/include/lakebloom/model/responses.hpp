#pragma once

#include "lakebloom/model/params.hpp"

namespace lakebloom::model {

/// Guard in body_burden, mgC/L.
inline constexpr double kBiomassEpsilon = 1e-9;

/// Below this optical depth (k_total * z) the light average uses its no-attenuation limit.
inline constexpr double kOpticalDepthFloor = 1e-12;

/// Rosso cardinal temperature model with inflexion.
///
/// Zero at or outside [t_min, t_max], exactly one at t_opt. Throws
/// ValidationError when the cardinals are out of order.
double cardinal_temperature(double t, double t_min, double t_opt, double t_max);
double cardinal_temperature(double t, const CardinalTemperatures& c);

/// Depth average over [0, z] of the Monod factor I/(h + I) with
/// I(s) = i_in * exp(-k_total * s).
double depth_averaged_light_factor(double i_in, double h_light, double k_total, double z);

/// Droop-limited phosphorus uptake, mgP/mgC/day.
double phosphorus_uptake(double p, double q, const Phytoplankton& g);

/// Droop growth mu_max * temp * (1 - q_min/q) * light, 1/day.
double droop_growth_rate(double q, double light_factor, double temp_factor, const Phytoplankton& g);

struct GrazingRates {
  double on_cyano = 0.0;  // 1/day
  double on_algae = 0.0;  // 1/day
};

/// Per-capita daphnia ingestion of each prey (multi-prey saturating response).
GrazingRates grazing_rates(double cyano, double algae, const Daphnia& d);

/// Hill-type hypoxic mortality, 1/day.
double hypoxia_mortality(double o, double m_hyp, double o_crit, double hill_n);

/// Freshwater oxygen saturation, mg/L (empirical cubic in temperature).
/// Throws DomainError outside [-1, 45] deg C.
double oxygen_saturation(double t);

/// Toxin per unit carbon, ug/mgC.
double body_burden(double tox_pool, double biomass);

/// Surface light from the annual sinusoid at day index t.
double surface_light(const LightCycle& cycle, double t);

/// Converts a burden from ug/mgC to the mg MC-LR/mgC used in reporting.
inline constexpr double burden_to_mg_per_mgc(double ug_per_mgc) { return ug_per_mgc * 1e-3; }

}  // namespace lakebloom::model
