#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lakebloom::model {

/// Minimum, optimum and maximum temperature (deg C) of a cardinal temperature response.
struct CardinalTemperatures {
  double t_min = 0.0;
  double t_opt = 20.0;
  double t_max = 30.0;
};

/// One phytoplankton group with Droop quota kinetics.
struct Phytoplankton {
  double mu_max = 1.0;    // 1/day
  double q_min = 0.004;   // mgP/mgC
  double q_max = 0.04;    // mgP/mgC
  double rho_max = 0.05;  // mgP/mgC/day
  double k_p = 0.005;     // mgP/L
  double h_light = 100;   // umol photons/m2/s
  double k_shade = 0.3;   // L/mgC/m
  double m = 0.1;         // 1/day
  CardinalTemperatures temp;
};

struct Algae : Phytoplankton {
  double sink_rate = 0.1;     // m/day
  double gamma_inhib = 0.02;  // L/ug
};

/// Annual sinusoid for surface light when the forcing carries no light column.
struct LightCycle {
  double mean = 250.0;       // umol photons/m2/s
  double amplitude = 150.0;  // umol photons/m2/s
  double peak_day = 172.0;   // day-of-year of the maximum
};

struct Background {
  double k_bg = 0.5;            // 1/m
  LightCycle light;
  double exchange_rate = 0.05;  // m/day
  double p_in = 0.05;           // mgP/L
  double o_in = 10.0;           // mg/L
};

/// Consumer-resource parameters shared by daphnia and both fish.
struct Consumer {
  double p_max = 0.5;  // 1/day
  double h = 0.5;      // mgC/L
  double e = 0.5;      // assimilation efficiency
  double theta = 0.03; // mgP/mgC
  double m = 0.01;     // 1/day
  CardinalTemperatures temp;
  double m_hyp = 0.3;  // 1/day
  double o_crit = 2.0; // mg/L
  double hill_n = 4.0;
  double d_tox = 0.0;  // mgC/ug/day
  double a_aq = 0.0;   // L/mgC/day
  double beta = 0.5;   // dietary toxin absorption efficiency
  double k_dep = 0.0;  // 1/day
};

struct Daphnia : Consumer {
  double pref_c = 1.0;
  double pref_a = 1.0;
};

struct Toxin {
  double q_tox = 1.0;     // ug/mgC
  double leak = 0.01;     // 1/day
  double delta_m = 0.05;  // 1/day
};

struct Oxygen {
  double alpha_photo = 2.67;  // mgO2/mgC
  double alpha_bod = 2.67;    // mgO2/mgC
  double k_re = 1.0;          // m/day
  // respiration, mgO2/mgC/day
  double alpha_resp_cyano = 0.0;
  double alpha_resp_algae = 0.0;
  double alpha_resp_daphnia = 0.3;
  double alpha_resp_perch = 0.05;
  double alpha_resp_walleye = 0.05;
};

struct ModelParams {
  Phytoplankton cyano;
  Algae algae;
  Background background;
  Daphnia daphnia;
  Consumer perch;
  Consumer walleye;
  Toxin toxin;
  Oxygen oxygen;
};

/// Throws ValidationError naming the first offending parameter.
void validate(const ModelParams& params);

/// Throws ValidationError unless t_min < t_opt < t_max and t_opt lies above the
/// midpoint of [t_min, t_max] (the domain where the response stays in [0, 1]).
void validate_cardinals(const CardinalTemperatures& c, std::string_view owner);

/// Shipped default parameter set (literature-range values, see README).
ModelParams default_params();

// --- named access -----------------------------------------------------------

struct ParamInfo {
  std::string name;  // dotted, e.g. "cyano.mu_max"
  std::string unit;  // canonical unit
  double& (*ref)(ModelParams&);
};

/// Every addressable parameter, in a fixed order.
const std::vector<ParamInfo>& param_table();

const ParamInfo* find_param(std::string_view name);

/// Throws ValidationError for unknown names.
double get_param(const ModelParams& params, std::string_view name);
void set_param(ModelParams& params, std::string_view name, double value);

}  // namespace lakebloom::model
