#include "lakebloom/model/params.hpp"

#include <cmath>
#include <string>

#include "lakebloom/common/error.hpp"

namespace lakebloom::model {

namespace {

void require(bool ok, const std::string& key, const char* what) {
  if (!ok) throw ValidationError(key, what);
}

void require_rate(double v, const std::string& key) {
  require(std::isfinite(v) && v >= 0.0, key, "must be a finite non-negative rate");
}

void require_positive(double v, const std::string& key) {
  require(std::isfinite(v) && v > 0.0, key, "must be finite and positive");
}

void require_fraction(double v, const std::string& key) {
  require(std::isfinite(v) && v >= 0.0 && v <= 1.0, key, "must lie in [0, 1]");
}

void validate_phyto(const Phytoplankton& p, const std::string& g) {
  require_rate(p.mu_max, g + ".mu_max");
  require_positive(p.q_min, g + ".q_min");
  require(std::isfinite(p.q_max) && p.q_min < p.q_max, g + ".q_max", "must exceed q_min");
  require_rate(p.rho_max, g + ".rho_max");
  require_positive(p.k_p, g + ".k_p");
  require_positive(p.h_light, g + ".h_light");
  require_rate(p.k_shade, g + ".k_shade");
  require_rate(p.m, g + ".m");
  validate_cardinals(p.temp, g);
}

void validate_consumer(const Consumer& c, const std::string& g) {
  require_rate(c.p_max, g + ".p_max");
  require_positive(c.h, g + ".h");
  require_fraction(c.e, g + ".e");
  require_positive(c.theta, g + ".theta");
  require_rate(c.m, g + ".m");
  validate_cardinals(c.temp, g);
  require_rate(c.m_hyp, g + ".m_hyp");
  require_positive(c.o_crit, g + ".o_crit");
  require_positive(c.hill_n, g + ".hill_n");
  require_rate(c.d_tox, g + ".d_tox");
  require_rate(c.a_aq, g + ".a_aq");
  require_fraction(c.beta, g + ".beta");
  require_rate(c.k_dep, g + ".k_dep");
}

}  // namespace

void validate_cardinals(const CardinalTemperatures& c, std::string_view owner) {
  const std::string g(owner);
  require(std::isfinite(c.t_min) && std::isfinite(c.t_opt) && std::isfinite(c.t_max), g + ".t_opt",
          "cardinal temperatures must be finite");
  require(c.t_min < c.t_opt && c.t_opt < c.t_max, g + ".t_opt", "requires t_min < t_opt < t_max");
  require(2.0 * c.t_opt > c.t_min + c.t_max, g + ".t_opt",
          "must lie above the midpoint of [t_min, t_max]");
}

void validate(const ModelParams& p) {
  validate_phyto(p.cyano, "cyano");
  validate_phyto(p.algae, "algae");
  require_rate(p.algae.sink_rate, "algae.sink_rate");
  require_rate(p.algae.gamma_inhib, "algae.gamma_inhib");

  const auto& bg = p.background;
  require_rate(bg.k_bg, "background.k_bg");
  require_rate(bg.light.amplitude, "background.light_amplitude");
  require(std::isfinite(bg.light.mean) && bg.light.mean >= bg.light.amplitude,
          "background.light_mean", "must be at least the amplitude so light stays non-negative");
  require(std::isfinite(bg.light.peak_day), "background.light_peak_day", "must be finite");
  require_rate(bg.exchange_rate, "background.exchange_rate");
  require_rate(bg.p_in, "background.p_in");
  require_rate(bg.o_in, "background.o_in");

  validate_consumer(p.daphnia, "daphnia");
  require_fraction(p.daphnia.pref_c, "daphnia.pref_c");
  require_fraction(p.daphnia.pref_a, "daphnia.pref_a");
  validate_consumer(p.perch, "perch");
  validate_consumer(p.walleye, "walleye");
  require(p.walleye.k_dep == 0.0, "walleye.k_dep", "walleye do not depurate; must be 0");

  require_rate(p.toxin.q_tox, "toxin.q_tox");
  require_rate(p.toxin.leak, "toxin.leak");
  require_rate(p.toxin.delta_m, "toxin.delta_m");

  const auto& o = p.oxygen;
  require_rate(o.alpha_photo, "oxygen.alpha_photo");
  require_rate(o.alpha_bod, "oxygen.alpha_bod");
  require_rate(o.k_re, "oxygen.k_re");
  require_rate(o.alpha_resp_cyano, "oxygen.alpha_resp_cyano");
  require_rate(o.alpha_resp_algae, "oxygen.alpha_resp_algae");
  require_rate(o.alpha_resp_daphnia, "oxygen.alpha_resp_daphnia");
  require_rate(o.alpha_resp_perch, "oxygen.alpha_resp_perch");
  require_rate(o.alpha_resp_walleye, "oxygen.alpha_resp_walleye");
}

#define LB_PARAM(NAME, UNIT, FIELD) \
  ParamInfo { NAME, UNIT, [](ModelParams& p) -> double& { return p.FIELD; } }

#define LB_PHYTO(G)                                                 \
  LB_PARAM(#G ".mu_max", "1/day", G.mu_max),                        \
      LB_PARAM(#G ".q_min", "mgP/mgC", G.q_min),                    \
      LB_PARAM(#G ".q_max", "mgP/mgC", G.q_max),                    \
      LB_PARAM(#G ".rho_max", "mgP/mgC/day", G.rho_max),            \
      LB_PARAM(#G ".k_p", "mgP/L", G.k_p),                          \
      LB_PARAM(#G ".h_light", "umol/m2/s", G.h_light),              \
      LB_PARAM(#G ".k_shade", "L/mgC/m", G.k_shade),                \
      LB_PARAM(#G ".m", "1/day", G.m),                              \
      LB_PARAM(#G ".t_min", "degC", G.temp.t_min),                  \
      LB_PARAM(#G ".t_opt", "degC", G.temp.t_opt),                  \
      LB_PARAM(#G ".t_max", "degC", G.temp.t_max)

#define LB_CONSUMER(G)                                              \
  LB_PARAM(#G ".p_max", "1/day", G.p_max),                          \
      LB_PARAM(#G ".h", "mgC/L", G.h),                              \
      LB_PARAM(#G ".e", "1", G.e),                                  \
      LB_PARAM(#G ".theta", "mgP/mgC", G.theta),                    \
      LB_PARAM(#G ".m", "1/day", G.m),                              \
      LB_PARAM(#G ".t_min", "degC", G.temp.t_min),                  \
      LB_PARAM(#G ".t_opt", "degC", G.temp.t_opt),                  \
      LB_PARAM(#G ".t_max", "degC", G.temp.t_max),                  \
      LB_PARAM(#G ".m_hyp", "1/day", G.m_hyp),                      \
      LB_PARAM(#G ".o_crit", "mg/L", G.o_crit),                     \
      LB_PARAM(#G ".hill_n", "1", G.hill_n),                        \
      LB_PARAM(#G ".d_tox", "mgC/ug/day", G.d_tox),                 \
      LB_PARAM(#G ".a_aq", "L/mgC/day", G.a_aq),                    \
      LB_PARAM(#G ".beta", "1", G.beta),                            \
      LB_PARAM(#G ".k_dep", "1/day", G.k_dep)

const std::vector<ParamInfo>& param_table() {
  static const std::vector<ParamInfo> table = {
      LB_PHYTO(cyano),
      LB_PHYTO(algae),
      LB_PARAM("algae.sink_rate", "m/day", algae.sink_rate),
      LB_PARAM("algae.gamma_inhib", "L/ug", algae.gamma_inhib),
      LB_PARAM("background.k_bg", "1/m", background.k_bg),
      LB_PARAM("background.light_mean", "umol/m2/s", background.light.mean),
      LB_PARAM("background.light_amplitude", "umol/m2/s", background.light.amplitude),
      LB_PARAM("background.light_peak_day", "day", background.light.peak_day),
      LB_PARAM("background.exchange_rate", "m/day", background.exchange_rate),
      LB_PARAM("background.p_in", "mgP/L", background.p_in),
      LB_PARAM("background.o_in", "mg/L", background.o_in),
      LB_CONSUMER(daphnia),
      LB_PARAM("daphnia.pref_c", "1", daphnia.pref_c),
      LB_PARAM("daphnia.pref_a", "1", daphnia.pref_a),
      LB_CONSUMER(perch),
      LB_CONSUMER(walleye),
      LB_PARAM("toxin.q_tox", "ug/mgC", toxin.q_tox),
      LB_PARAM("toxin.leak", "1/day", toxin.leak),
      LB_PARAM("toxin.delta_m", "1/day", toxin.delta_m),
      LB_PARAM("oxygen.alpha_photo", "mgO2/mgC", oxygen.alpha_photo),
      LB_PARAM("oxygen.alpha_bod", "mgO2/mgC", oxygen.alpha_bod),
      LB_PARAM("oxygen.k_re", "m/day", oxygen.k_re),
      LB_PARAM("oxygen.alpha_resp_cyano", "mgO2/mgC/day", oxygen.alpha_resp_cyano),
      LB_PARAM("oxygen.alpha_resp_algae", "mgO2/mgC/day", oxygen.alpha_resp_algae),
      LB_PARAM("oxygen.alpha_resp_daphnia", "mgO2/mgC/day", oxygen.alpha_resp_daphnia),
      LB_PARAM("oxygen.alpha_resp_perch", "mgO2/mgC/day", oxygen.alpha_resp_perch),
      LB_PARAM("oxygen.alpha_resp_walleye", "mgO2/mgC/day", oxygen.alpha_resp_walleye),
  };
  return table;
}

#undef LB_CONSUMER
#undef LB_PHYTO
#undef LB_PARAM

const ParamInfo* find_param(std::string_view name) {
  for (const auto& info : param_table()) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

double get_param(const ModelParams& params, std::string_view name) {
  const ParamInfo* info = find_param(name);
  if (!info) throw ValidationError(std::string(name), "unknown parameter");
  // ref only reads through the reference here
  return info->ref(const_cast<ModelParams&>(params));
}

void set_param(ModelParams& params, std::string_view name, double value) {
  const ParamInfo* info = find_param(name);
  if (!info) throw ValidationError(std::string(name), "unknown parameter");
  info->ref(params) = value;
}

}  // namespace lakebloom::model
