// Shipped default parameter set. Values are drawn from literature ranges for
// north-temperate eutrophic lakes; none of them is a fitted value.

#include "lakebloom/model/params.hpp"
#include "lakebloom/model/responses.hpp"
#include "lakebloom/model/rhs.hpp"

namespace lakebloom::model {

ModelParams default_params() {
  ModelParams p;

  p.cyano.mu_max = 1.1;
  p.cyano.q_min = 0.0065;
  p.cyano.q_max = 0.04;
  p.cyano.rho_max = 0.02;
  p.cyano.k_p = 0.01;
  p.cyano.h_light = 77.0;
  p.cyano.k_shade = 0.55;
  p.cyano.m = 0.025;
  p.cyano.temp = {0.0, 29.3, 40.0};

  p.algae.mu_max = 1.25;
  p.algae.q_min = 0.006;
  p.algae.q_max = 0.05;
  p.algae.rho_max = 0.05;
  p.algae.k_p = 0.01;
  p.algae.h_light = 49.0;
  p.algae.k_shade = 0.38;
  p.algae.m = 0.1;
  p.algae.temp = {0.0, 22.4, 28.0};
  p.algae.sink_rate = 0.032;
  p.algae.gamma_inhib = 0.05;

  p.background.k_bg = 1.22;
  p.background.light = {250.0, 150.0, 172.0};
  p.background.exchange_rate = 0.054;
  p.background.p_in = 0.085;
  p.background.o_in = 10.0;

  p.daphnia.p_max = 0.34;
  p.daphnia.h = 1.0;
  p.daphnia.e = 0.4;
  p.daphnia.theta = 0.03;
  p.daphnia.m = 0.05;
  p.daphnia.temp = {2.0, 18.0, 28.0};
  p.daphnia.m_hyp = 0.5;
  p.daphnia.o_crit = 2.0;
  p.daphnia.hill_n = 4.0;
  p.daphnia.d_tox = 0.01;
  p.daphnia.a_aq = 0.01;
  p.daphnia.beta = 0.5;
  p.daphnia.k_dep = 0.3;
  p.daphnia.pref_c = 1.0;
  p.daphnia.pref_a = 1.0;

  p.perch.p_max = 0.1;
  p.perch.h = 0.3;
  p.perch.e = 0.3;
  p.perch.theta = 0.05;
  p.perch.m = 0.004;
  p.perch.temp = {4.0, 23.0, 32.0};
  p.perch.m_hyp = 0.3;
  p.perch.o_crit = 3.0;
  p.perch.hill_n = 4.0;
  p.perch.d_tox = 0.002;
  p.perch.a_aq = 0.001;
  p.perch.beta = 0.3;
  p.perch.k_dep = 0.4;

  p.walleye.p_max = 0.03;
  p.walleye.h = 0.05;
  p.walleye.e = 0.1;
  p.walleye.theta = 0.05;
  p.walleye.m = 0.002;
  p.walleye.temp = {6.0, 22.0, 30.0};
  p.walleye.m_hyp = 0.3;
  p.walleye.o_crit = 3.5;
  p.walleye.hill_n = 4.0;
  p.walleye.d_tox = 0.001;
  p.walleye.a_aq = 0.001;
  p.walleye.beta = 0.8;
  p.walleye.k_dep = 0.0;

  p.toxin.q_tox = 1.0;
  p.toxin.leak = 0.01;
  p.toxin.delta_m = 0.05;

  p.oxygen.alpha_photo = 2.67;
  p.oxygen.alpha_bod = 2.67;
  p.oxygen.k_re = 1.0;
  p.oxygen.alpha_resp_cyano = 0.1;
  p.oxygen.alpha_resp_algae = 0.1;
  p.oxygen.alpha_resp_daphnia = 0.3;
  p.oxygen.alpha_resp_perch = 0.05;
  p.oxygen.alpha_resp_walleye = 0.05;
  return p;
}

LakeState default_initial_state(double temperature) {
  LakeState s;
  s.cyano = 0.02;
  s.cyano_quota = 0.01;
  s.algae = 0.1;
  s.algae_quota = 0.015;
  s.phosphorus = 0.05;
  s.daphnia = 0.05;
  s.perch = 0.1;
  s.walleye = 0.02;
  s.oxygen = oxygen_saturation(temperature);
  return s;
}

}  // namespace lakebloom::model
