#include "lakebloom/model/responses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lakebloom/common/error.hpp"

namespace lakebloom::model {

double cardinal_temperature(double t, double t_min, double t_opt, double t_max) {
  validate_cardinals({t_min, t_opt, t_max}, "cardinal_temperature");
  if (t <= t_min || t >= t_max) return 0.0;
  if (t == t_opt) return 1.0;
  const double num = (t - t_max) * (t - t_min) * (t - t_min);
  const double den =
      (t_opt - t_min) * ((t_opt - t_min) * (t - t_opt) - (t_opt - t_max) * (t_opt + t_min - 2.0 * t));
  return std::clamp(num / den, 0.0, 1.0);
}

double cardinal_temperature(double t, const CardinalTemperatures& c) {
  return cardinal_temperature(t, c.t_min, c.t_opt, c.t_max);
}

double depth_averaged_light_factor(double i_in, double h_light, double k_total, double z) {
  if (i_in <= 0.0) return 0.0;
  const double x = k_total * z;
  const double surface = i_in / (h_light + i_in);
  if (x < kOpticalDepthFloor) return surface;
  // ln((h + I) / (h + I e^-x)) = -log1p(-I (1 - e^-x) / (h + I))
  const double absorbed = -std::expm1(-x);
  return -std::log1p(-surface * absorbed) / x;
}

double phosphorus_uptake(double p, double q, const Phytoplankton& g) {
  if (p <= 0.0) return 0.0;
  const double room = std::clamp((g.q_max - q) / (g.q_max - g.q_min), 0.0, 1.0);
  return g.rho_max * room * (p / (g.k_p + p));
}

double droop_growth_rate(double q, double light_factor, double temp_factor, const Phytoplankton& g) {
  const double q_eff = std::max(q, g.q_min);
  return g.mu_max * temp_factor * (1.0 - g.q_min / q_eff) * light_factor;
}

GrazingRates grazing_rates(double cyano, double algae, const Daphnia& d) {
  const double wc = d.pref_c * std::max(cyano, 0.0);
  const double wa = d.pref_a * std::max(algae, 0.0);
  const double den = d.h + wc + wa;
  return {d.p_max * wc / den, d.p_max * wa / den};
}

double hypoxia_mortality(double o, double m_hyp, double o_crit, double hill_n) {
  const double oc = std::pow(o_crit, hill_n);
  const double on = std::pow(std::max(o, 0.0), hill_n);
  return m_hyp * oc / (oc + on);
}

double oxygen_saturation(double t) {
  if (!(t >= -1.0 && t <= 45.0)) {
    throw DomainError("oxygen_saturation: temperature " + std::to_string(t) +
                      " degC outside [-1, 45]");
  }
  return 14.652 - 0.41022 * t + 0.0079910 * t * t - 0.000077774 * t * t * t;
}

double body_burden(double tox_pool, double biomass) {
  if (tox_pool == 0.0) return 0.0;
  return tox_pool / std::max(biomass, kBiomassEpsilon);
}

double surface_light(const LightCycle& cycle, double t) {
  const double phase = 2.0 * std::numbers::pi * (t - cycle.peak_day) / 365.0;
  return std::max(0.0, cycle.mean + cycle.amplitude * std::cos(phase));
}

}  // namespace lakebloom::model
