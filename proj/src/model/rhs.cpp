#include "lakebloom/model/rhs.hpp"

#include <algorithm>
#include <cmath>

#include "lakebloom/common/error.hpp"
#include "lakebloom/model/responses.hpp"

namespace lakebloom::model {

namespace {

struct ConsumerRates {
  double hypoxia = 0.0;  // 1/day
  double burden = 0.0;   // ug/mgC
  double loss = 0.0;     // total per-capita mortality, 1/day
};

ConsumerRates consumer_rates(const Consumer& c, double biomass, double tox, double oxygen) {
  ConsumerRates r;
  r.hypoxia = hypoxia_mortality(oxygen, c.m_hyp, c.o_crit, c.hill_n);
  r.burden = body_burden(tox, biomass);
  r.loss = c.m + r.hypoxia + c.d_tox * r.burden;
  return r;
}

}  // namespace

Derivatives rhs(double /*t*/, const LakeState& s, const ModelParams& p, const ForcingAt& f) {
  if (!(f.depth > 0.0)) throw ValidationError("epilimnion_depth", "must be positive");

  const auto& bg = p.background;
  const auto& cy = p.cyano;
  const auto& al = p.algae;
  const auto& da = p.daphnia;
  const auto& pe = p.perch;
  const auto& wa = p.walleye;
  const auto& tx = p.toxin;
  const auto& ox = p.oxygen;

  const double z = f.depth;
  const double dilution = bg.exchange_rate / z;
  const double p_in = f.p_in.value_or(bg.p_in);
  const double temp = f.temperature;

  const double phi_c = cardinal_temperature(temp, cy.temp);
  const double phi_a = cardinal_temperature(temp, al.temp);
  const double phi_d = cardinal_temperature(temp, da.temp);
  const double phi_y = cardinal_temperature(temp, pe.temp);
  const double phi_w = cardinal_temperature(temp, wa.temp);

  // light, shared attenuation
  const double k_total = bg.k_bg + cy.k_shade * s.cyano + al.k_shade * s.algae;
  const double light_c = depth_averaged_light_factor(f.light, cy.h_light, k_total, z);
  const double light_a = depth_averaged_light_factor(f.light, al.h_light, k_total, z);

  // phytoplankton
  const double mu_c = droop_growth_rate(s.cyano_quota, light_c, phi_c, cy);
  const double mu_a = droop_growth_rate(s.algae_quota, light_a, phi_a, al) /
                      (1.0 + al.gamma_inhib * s.mclr);
  const double up_c = phosphorus_uptake(s.phosphorus, s.cyano_quota, cy);
  const double up_a = phosphorus_uptake(s.phosphorus, s.algae_quota, al);

  // daphnia grazing (temperature-scaled intake)
  const GrazingRates g = grazing_rates(s.cyano, s.algae, da);
  const double g_c = phi_d * g.on_cyano;
  const double g_a = phi_d * g.on_algae;
  const double ingest_c = (g_c + g_a) * s.daphnia;
  const double ingest_p = (g_c * s.cyano_quota + g_a * s.algae_quota) * s.daphnia;
  const double q_food = (g_c + g_a) > 0.0
                            ? (g_c * s.cyano_quota + g_a * s.algae_quota) / (g_c + g_a)
                            : da.theta;
  const double daphnia_growth = da.e * std::min(1.0, q_food / da.theta) * ingest_c;

  const ConsumerRates rd = consumer_rates(da, s.daphnia, s.tox_daphnia, s.oxygen);
  const ConsumerRates ry = consumer_rates(pe, s.perch, s.tox_perch, s.oxygen);
  const ConsumerRates rw = consumer_rates(wa, s.walleye, s.tox_walleye, s.oxygen);

  // fish functional responses (per predator, temperature-scaled)
  const double f_y = phi_y * pe.p_max * s.daphnia / (pe.h + s.daphnia);
  const double f_w = phi_w * wa.p_max * s.perch / (wa.h + s.perch);
  const double pred_d = f_y * s.perch;    // daphnia carbon eaten by perch
  const double pred_y = f_w * s.walleye;  // perch carbon eaten by walleye

  Derivatives out;
  LakeState& d = out.d;
  FluxTerms& fl = out.flux;

  d.cyano = mu_c * s.cyano - cy.m * s.cyano - dilution * s.cyano - g_c * s.daphnia;
  d.algae = mu_a * s.algae - al.m * s.algae - (al.sink_rate / z) * s.algae - dilution * s.algae -
            g_a * s.daphnia;
  // a quota is undefined without cells
  d.cyano_quota = s.cyano > 0.0 ? up_c - mu_c * s.cyano_quota : 0.0;
  d.algae_quota = s.algae > 0.0 ? up_a - mu_a * s.algae_quota : 0.0;

  d.daphnia = daphnia_growth - rd.loss * s.daphnia - pred_d;
  d.perch = pe.e * f_y * s.perch - ry.loss * s.perch - pred_y;
  d.walleye = wa.e * f_w * s.walleye - rw.loss * s.walleye;

  // phosphorus: every loss of organic matter returns its P to the dissolved pool
  const double recycled = cy.m * s.cyano * s.cyano_quota + al.m * s.algae * s.algae_quota +
                          (ingest_p - da.theta * daphnia_growth) +
                          da.theta * rd.loss * s.daphnia +
                          (da.theta * pred_d - pe.theta * pe.e * f_y * s.perch) +
                          pe.theta * ry.loss * s.perch +
                          (pe.theta * pred_y - wa.theta * wa.e * f_w * s.walleye) +
                          wa.theta * rw.loss * s.walleye;
  const double uptake = up_c * s.cyano + up_a * s.algae;
  d.phosphorus = dilution * (p_in - s.phosphorus) - uptake + recycled;

  fl.p_inflow = dilution * p_in;
  fl.p_outflow = dilution * (s.phosphorus + s.cyano_quota * s.cyano + s.algae_quota * s.algae);
  fl.p_sinking = (al.sink_rate / z) * s.algae * s.algae_quota;
  fl.p_uptake = uptake;
  fl.p_recycled = recycled;

  // toxin
  const double release = (tx.leak + cy.m) * tx.q_tox * s.cyano;
  const double grazed_tox = g_c * s.daphnia * tx.q_tox;
  const double via_perch = pred_d * rd.burden;    // daphnia toxin eaten by perch
  const double via_walleye = pred_y * ry.burden;  // perch toxin eaten by walleye
  const double aq_d = da.a_aq * s.mclr * s.daphnia;
  const double aq_y = pe.a_aq * s.mclr * s.perch;
  const double aq_w = wa.a_aq * s.mclr * s.walleye;
  const double dep_d = da.k_dep * s.tox_daphnia;
  const double dep_y = pe.k_dep * s.tox_perch;
  const double dep_w = wa.k_dep * s.tox_walleye;
  const double dead_d = rd.loss * s.tox_daphnia;
  const double dead_y = ry.loss * s.tox_perch;
  const double dead_w = rw.loss * s.tox_walleye;

  d.mclr = release + (1.0 - da.beta) * grazed_tox + (1.0 - pe.beta) * via_perch +
           (1.0 - wa.beta) * via_walleye - tx.delta_m * s.mclr - dilution * s.mclr -
           (aq_d + aq_y + aq_w) + dep_d + dep_y + dep_w;
  d.tox_daphnia = da.beta * grazed_tox + aq_d - dep_d - dead_d - via_perch;
  d.tox_perch = pe.beta * via_perch + aq_y - dep_y - dead_y - via_walleye;
  d.tox_walleye = wa.beta * via_walleye + aq_w - dep_w - dead_w;

  fl.tox_production = release + grazed_tox;
  fl.tox_decay = tx.delta_m * s.mclr;
  fl.tox_outflow = dilution * s.mclr;
  fl.tox_sediment = dead_d + dead_y + dead_w;

  // oxygen
  fl.o2_photosynthesis = ox.alpha_photo * (mu_c * s.cyano + mu_a * s.algae);
  fl.o2_respiration = ox.alpha_resp_cyano * s.cyano + ox.alpha_resp_algae * s.algae +
                      ox.alpha_resp_daphnia * s.daphnia + ox.alpha_resp_perch * s.perch +
                      ox.alpha_resp_walleye * s.walleye;
  fl.o2_bod = ox.alpha_bod * cy.m * s.cyano;
  fl.o2_reaeration = (ox.k_re / z) * (oxygen_saturation(temp) - s.oxygen);
  fl.o2_exchange = dilution * (bg.o_in - s.oxygen);
  d.oxygen = fl.o2_photosynthesis - fl.o2_respiration - fl.o2_bod + fl.o2_reaeration + fl.o2_exchange;

  const auto values = d.to_array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw NonFiniteDerivativeError(std::string(kStateNames[i]));
  }
  return out;
}

double total_phosphorus(const LakeState& s, const ModelParams& p) {
  return s.phosphorus + s.cyano_quota * s.cyano + s.algae_quota * s.algae +
         p.daphnia.theta * s.daphnia + p.perch.theta * s.perch + p.walleye.theta * s.walleye;
}

double toxin_holdings(const LakeState& s) {
  return s.mclr + s.tox_daphnia + s.tox_perch + s.tox_walleye;
}

Burdens burdens(const LakeState& s) {
  return {body_burden(s.tox_daphnia, s.daphnia), body_burden(s.tox_perch, s.perch),
          body_burden(s.tox_walleye, s.walleye)};
}

}  // namespace lakebloom::model
