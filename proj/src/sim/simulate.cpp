#include "lakebloom/sim/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "lakebloom/common/error.hpp"
#include "lakebloom/model/responses.hpp"

namespace lakebloom::sim {

using model::Derivatives;
using model::FluxTerms;
using model::LakeState;

namespace {

LakeState::Array axpy(const LakeState::Array& y, double s, const LakeState::Array& k) {
  LakeState::Array r{};
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = y[i] + s * k[i];
  return r;
}

// Weighted RK4 combination of the four stage fluxes, times dt.
FluxTerms integrate_fluxes(const Derivatives* k, double dt) {
  auto comb = [&](double FluxTerms::*m) {
    return dt / 6.0 * (k[0].flux.*m + 2.0 * k[1].flux.*m + 2.0 * k[2].flux.*m + k[3].flux.*m);
  };
  FluxTerms f;
  for (double FluxTerms::*m :
       {&FluxTerms::p_inflow, &FluxTerms::p_outflow, &FluxTerms::p_sinking, &FluxTerms::p_uptake,
        &FluxTerms::p_recycled, &FluxTerms::tox_production, &FluxTerms::tox_decay,
        &FluxTerms::tox_outflow, &FluxTerms::tox_sediment, &FluxTerms::o2_photosynthesis,
        &FluxTerms::o2_respiration, &FluxTerms::o2_bod, &FluxTerms::o2_reaeration,
        &FluxTerms::o2_exchange}) {
    f.*m = comb(m);
  }
  return f;
}

bool is_toxin_index(std::size_t i) { return i >= 8 && i <= 11; }

}  // namespace

void validate(const SimulationSettings& s) {
  if (!std::isfinite(s.t0) || !std::isfinite(s.t1)) {
    throw ValidationError("simulation.t0", "start and end times must be finite");
  }
  if (s.t1 < s.t0) throw ValidationError("simulation.t1", "must not precede t0");
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw ValidationError("simulation.dt", "must be positive");
  if (s.store_stride < 1) throw ValidationError("simulation.store_stride", "must be at least 1");
}

StepOutcome step_rk4_detailed(const LakeState& state, double t, double dt,
                              const model::ModelParams& params, const ForcingProvider& forcing,
                              bool clamp_negative) {
  // Stages combine cell phosphorus (quota x biomass) rather than quotas, so
  // total phosphorus is linear in the integrated variables and RK4 conserves it.
  const LakeState::Array x0 = state.to_array();
  auto to_cell = [](LakeState::Array a) {
    a[1] *= a[0];
    a[3] *= a[2];
    return a;
  };
  auto from_cell = [&](LakeState::Array y) {
    y[1] = y[0] != 0.0 ? y[1] / y[0] : x0[1];
    y[3] = y[2] != 0.0 ? y[3] / y[2] : x0[3];
    return y;
  };
  auto cell_rate = [](const LakeState::Array& x, LakeState::Array d) {
    d[1] = x[1] * d[0] + x[0] * d[1];
    d[3] = x[3] * d[2] + x[2] * d[3];
    return d;
  };

  const LakeState::Array y = to_cell(x0);
  Derivatives k[4];
  LakeState::Array dy[4];
  k[0] = model::rhs(t, state, params, forcing(t));
  dy[0] = cell_rate(x0, k[0].d.to_array());
  const auto x2 = from_cell(axpy(y, 0.5 * dt, dy[0]));
  k[1] = model::rhs(t + 0.5 * dt, LakeState::from_array(x2), params, forcing(t + 0.5 * dt));
  dy[1] = cell_rate(x2, k[1].d.to_array());
  const auto x3 = from_cell(axpy(y, 0.5 * dt, dy[1]));
  k[2] = model::rhs(t + 0.5 * dt, LakeState::from_array(x3), params, forcing(t + 0.5 * dt));
  dy[2] = cell_rate(x3, k[2].d.to_array());
  const auto x4 = from_cell(axpy(y, dt, dy[2]));
  k[3] = model::rhs(t + dt, LakeState::from_array(x4), params, forcing(t + dt));
  dy[3] = cell_rate(x4, k[3].d.to_array());

  LakeState::Array cell{};
  for (std::size_t i = 0; i < cell.size(); ++i) {
    cell[i] = y[i] + dt / 6.0 * (dy[0][i] + 2.0 * dy[1][i] + 2.0 * dy[2][i] + dy[3][i]);
    if (!std::isfinite(cell[i])) {
      throw DivergenceError(t, "component '" + std::string(model::kStateNames[i]) + "' is not finite");
    }
  }
  LakeState::Array next = from_cell(cell);

  StepOutcome out;
  out.integrated = integrate_fluxes(k, dt);
  // Cell phosphorus stranded on a group that died out exactly.
  if (cell[0] == 0.0) out.p_clamp -= cell[1];
  if (cell[2] == 0.0) out.p_clamp -= cell[3];

  if (clamp_negative) {
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (model::is_quota_index(i) || next[i] >= 0.0) continue;
      if (next[i] <= -kClampTolerance) throw StiffnessError(t + dt, std::string(model::kStateNames[i]));
      if (is_toxin_index(i)) out.tox_clamp -= next[i];
      if (i == 4) out.p_clamp -= next[i];
      if (i == 0) out.p_clamp -= next[i] * next[1];
      if (i == 2) out.p_clamp -= next[i] * next[3];
      next[i] = 0.0;
    }
    auto clamp_quota = [&](std::size_t bio, std::size_t quota, const model::Phytoplankton& g) {
      if (next[bio] <= 0.0) return;
      const double q = std::clamp(next[quota], g.q_min, g.q_max);
      out.p_clamp += (q - next[quota]) * next[bio];
      next[quota] = q;
    };
    clamp_quota(0, 1, params.cyano);
    clamp_quota(2, 3, params.algae);
  }
  out.state = LakeState::from_array(next);
  return out;
}

LakeState step_rk4(const LakeState& state, double t, double dt, const model::ModelParams& params,
                   const ForcingProvider& forcing, bool clamp_negative) {
  return step_rk4_detailed(state, t, dt, params, forcing, clamp_negative).state;
}

namespace {

void accumulate(Diagnostics& d, const StepOutcome& s) {
  d.p_inflow += s.integrated.p_inflow;
  d.p_outflow += s.integrated.p_outflow;
  d.p_sinking += s.integrated.p_sinking;
  d.p_clamp += s.p_clamp;
  d.tox_production += s.integrated.tox_production;
  d.tox_decay += s.integrated.tox_decay;
  d.tox_outflow += s.integrated.tox_outflow;
  d.tox_sediment += s.integrated.tox_sediment;
  d.tox_clamp += s.tox_clamp;
}

// Advances one step, splitting it into 2, 4, then 8 substeps on negativity
// failures. Returns the number of substeps used.
int advance(LakeState& state, Diagnostics& diag, double t, double dt,
             const model::ModelParams& params, const ForcingProvider& forcing, bool clamp) {
  for (int parts = 1;; parts *= 2) {
    try {
      LakeState s = state;
      Diagnostics d = diag;
      const double h = dt / parts;
      for (int j = 0; j < parts; ++j) {
        const StepOutcome o = step_rk4_detailed(s, t + j * h, h, params, forcing, clamp);
        s = o.state;
        accumulate(d, o);
      }
      state = s;
      diag = d;
      return parts;
    } catch (const StiffnessError&) {
      if (parts >= kMaxSubsteps) throw;
    }
  }
}

void validate_state(const LakeState& s, const model::ModelParams& p) {
  const auto a = s.to_array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || a[i] < 0.0) {
      throw ValidationError("initial_state." + std::string(model::kStateNames[i]),
                            "must be finite and non-negative");
    }
  }
  if (s.cyano > 0.0 && (s.cyano_quota < p.cyano.q_min || s.cyano_quota > p.cyano.q_max)) {
    throw ValidationError("initial_state.cyano_quota", "must lie in [cyano.q_min, cyano.q_max]");
  }
  if (s.algae > 0.0 && (s.algae_quota < p.algae.q_min || s.algae_quota > p.algae.q_max)) {
    throw ValidationError("initial_state.algae_quota", "must lie in [algae.q_min, algae.q_max]");
  }
}

}  // namespace

Trajectory simulate(const model::ModelParams& params, const io::ForcingSeries& forcing,
                    const LakeState& initial, const SimulationSettings& settings) {
  model::validate(params);
  validate(settings);
  io::validate(forcing);
  validate_state(initial, params);
  if (forcing.first_time() > settings.t0 || forcing.last_time() < settings.t1) {
    throw CoverageError("forcing covers [" + std::to_string(forcing.first_time()) + ", " +
                        std::to_string(forcing.last_time()) + "] but the run needs [" +
                        std::to_string(settings.t0) + ", " + std::to_string(settings.t1) + "]");
  }

  const ForcingProvider provider = [&](double t) {
    return io::interpolate_forcing(forcing, t, params.background.light);
  };

  Trajectory traj;
  traj.dt = settings.dt;
  LakeState state = initial;
  Diagnostics diag;

  auto store = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(state);
    traj.diagnostics.push_back(diag);
    traj.forcing.push_back(provider(t));
  };

  long split_steps = 0;
  double first_split = 0.0;
  const double span = settings.t1 - settings.t0;
  const auto n_steps = static_cast<long>(std::ceil(span / settings.dt - 1e-9));
  store(settings.t0);
  for (long k = 0; k < n_steps; ++k) {
    const double t = settings.t0 + static_cast<double>(k) * settings.dt;
    const double t_next =
        k + 1 == n_steps ? settings.t1 : settings.t0 + static_cast<double>(k + 1) * settings.dt;
    try {
      if (advance(state, diag, t, t_next - t, params, provider, settings.clamp_negative) > 1 &&
          split_steps++ == 0) {
        first_split = t;
      }
    } catch (const NonFiniteDerivativeError& e) {
      throw DivergenceError(t, e.what());
    }
    if ((k + 1) % settings.store_stride == 0 || k + 1 == n_steps) store(t_next);
  }
  if (split_steps > 0) {
    traj.warnings.push_back(std::to_string(split_steps) + " steps were split into substeps to stay " +
                            "non-negative, the first at t=" + std::to_string(first_split));
  }
  return traj;
}

// --- observables --------------------------------------------------------------

const std::vector<std::string>& observable_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n(model::kStateNames.begin(), model::kStateNames.end());
    n.emplace_back("burden_daphnia");
    n.emplace_back("burden_perch");
    n.emplace_back("burden_walleye");
    return n;
  }();
  return names;
}

bool is_observable(std::string_view name) {
  const auto& n = observable_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

double observable_value(const LakeState& s, std::string_view name) {
  if (auto i = model::state_index(name)) return s.to_array()[*i];
  if (name == "burden_daphnia") return model::body_burden(s.tox_daphnia, s.daphnia);
  if (name == "burden_perch") return model::body_burden(s.tox_perch, s.perch);
  if (name == "burden_walleye") return model::body_burden(s.tox_walleye, s.walleye);
  throw ValidationError(std::string(name), "unknown observable");
}

double observable_at(const Trajectory& traj, std::string_view name, double t) {
  if (traj.empty() || t < traj.times.front() || t > traj.times.back()) {
    throw CoverageError("time " + std::to_string(t) + " outside the simulated interval");
  }
  const auto hi = std::lower_bound(traj.times.begin(), traj.times.end(), t);
  const auto j = static_cast<std::size_t>(hi - traj.times.begin());
  const double v1 = observable_value(traj.states[j], name);
  if (traj.times[j] == t || j == 0) return v1;
  const double v0 = observable_value(traj.states[j - 1], name);
  const double w = (t - traj.times[j - 1]) / (traj.times[j] - traj.times[j - 1]);
  return v0 + w * (v1 - v0);
}

}  // namespace lakebloom::sim
