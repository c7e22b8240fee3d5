#include "lakebloom/sensitivity/sobol.hpp"

#include <boost/random/sobol.hpp>
#include <cmath>
#include <limits>
#include <set>

#include "lakebloom/common/calendar.hpp"
#include "lakebloom/common/error.hpp"
#include "lakebloom/common/parallel.hpp"
#include "lakebloom/common/random.hpp"

namespace lakebloom::sensitivity {

namespace {

bool is_forcing_target(const std::string& t) {
  return t == "epilimnion_depth" || t == "temperature" || t == "warm_season_temperature";
}

double transform(double quantity, Transform t, double v) {
  switch (t) {
    case Transform::offset: return quantity + v;
    case Transform::scale: return quantity * v;
    case Transform::set: return v;
  }
  return quantity;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void validate(const SobolDesign& d) {
  if (d.factors.empty()) throw ValidationError("sobol.factors", "at least one factor is required");
  std::set<std::string> names;
  for (const auto& f : d.factors) {
    if (!names.insert(f.name).second) throw ValidationError("sobol.factors", "duplicate factor '" + f.name + "'");
    if (!std::isfinite(f.lower) || !std::isfinite(f.upper) || f.lower > f.upper) {
      throw ValidationError("sobol.factors." + f.name, "bounds need finite lower <= upper");
    }
  }
  if (d.n < 64 || (d.n & (d.n - 1)) != 0) {
    throw ValidationError("sobol.n", "must be a power of two and at least 64");
  }
  if (d.output_times.empty()) throw ValidationError("sobol.output_days", "must not be empty");
  for (double t : d.output_times) {
    if (!std::isfinite(t)) throw ValidationError("sobol.output_days", "must be finite");
  }
  if (!sim::is_observable(d.output)) {
    throw ValidationError("sobol.output", "'" + d.output + "' is not observable");
  }
  if (d.bootstrap < 0) throw ValidationError("sobol.bootstrap", "must be non-negative");
  if (!(d.failure_budget >= 0.0 && d.failure_budget < 1.0)) {
    throw ValidationError("sobol.failure_budget", "must lie in [0, 1)");
  }
}

void validate_targets(const SobolDesign& d) {
  for (const auto& f : d.factors) {
    if (!is_forcing_target(f.target) && !model::find_param(f.target)) {
      throw ValidationError("sobol.factors." + f.name, "unknown target '" + f.target + "'");
    }
  }
}

SobolDesign default_design() {
  SobolDesign d;
  d.factors = {
      {"epilimnion_depth", "epilimnion_depth", 0.0, 2.7, Transform::offset},
      {"exchange_rate", "background.exchange_rate", 0.02, 0.12, Transform::set},
      {"turbidity", "background.k_bg", 0.7, 1.3, Transform::scale},
      {"phosphorus_input", "background.p_in", 0.7, 1.3, Transform::scale},
      {"temperature", "temperature", 0.0, 3.5, Transform::offset},
  };
  return d;
}

SaltelliSample saltelli_sample(const SobolDesign& design) {
  validate(design);
  const std::size_t n = design.n;
  const std::size_t k = design.factors.size();

  // Unit-cube coordinates of A (first k) and B (last k) for each base row.
  std::vector<std::vector<double>> u(n, std::vector<double>(2 * k));
  Rng rng(design.seed);
  if (design.sampler == Sampler::sobol) {
    std::vector<double> shift(2 * k);
    for (double& s : shift) s = rng.uniform();
    boost::random::sobol gen(static_cast<unsigned>(2 * k));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t d = 0; d < 2 * k; ++d) {
        const double x = static_cast<double>(gen() >> 11) * 0x1.0p-53 + shift[d];
        u[j][d] = x >= 1.0 ? x - 1.0 : x;
      }
    }
  } else {
    for (auto& row : u) {
      for (double& x : row) x = rng.uniform();
    }
  }

  auto value = [&](std::size_t i, double unit) {
    const auto& f = design.factors[i];
    return f.lower + unit * (f.upper - f.lower);
  };

  SaltelliSample s;
  s.n = n;
  s.k = k;
  s.rows.assign(n * (k + 2), std::vector<double>(k));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      s.rows[s.a_row(j)][i] = value(i, u[j][i]);
      s.rows[s.b_row(j)][i] = value(i, u[j][k + i]);
    }
    for (std::size_t i = 0; i < k; ++i) {
      auto& row = s.rows[s.ab_row(i, j)];
      row = s.rows[s.a_row(j)];
      row[i] = s.rows[s.b_row(j)][i];
    }
  }
  return s;
}

IndexSet sobol_indices(std::span<const double> f_a, std::span<const double> f_b,
                       const std::vector<std::vector<double>>& f_ab) {
  const std::size_t n = f_a.size();
  if (n == 0 || f_b.size() != n) throw ValidationError("sobol", "A and B outputs need equal, non-zero length");
  for (const auto& v : f_ab) {
    if (v.size() != n) throw ValidationError("sobol", "A_B outputs need the same length as A");
  }

  double mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) mean += f_a[j] + f_b[j];
  mean /= static_cast<double>(2 * n);
  double var = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    var += (f_a[j] - mean) * (f_a[j] - mean) + (f_b[j] - mean) * (f_b[j] - mean);
  }
  var /= static_cast<double>(2 * n);

  IndexSet out;
  out.factors.resize(f_ab.size());
  // Zero up to roundoff relative to the output level.
  if (!std::isfinite(var) || !(var > 0.0 && var > 1e-12 * mean * mean)) {
    out.degenerate = true;
    for (auto& f : out.factors) f = {kNaN, kNaN, kNaN, kNaN};
    return out;
  }
  for (std::size_t i = 0; i < f_ab.size(); ++i) {
    double v1 = 0.0;
    double vt = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      v1 += (f_b[j] - mean) * (f_ab[i][j] - f_a[j]);
      vt += (f_a[j] - f_ab[i][j]) * (f_a[j] - f_ab[i][j]);
    }
    out.factors[i].s1 = v1 / static_cast<double>(n) / var;
    out.factors[i].st = vt / static_cast<double>(2 * n) / var;
  }
  return out;
}

void bootstrap_intervals(IndexSet& indices, std::span<const double> f_a,
                         std::span<const double> f_b,
                         const std::vector<std::vector<double>>& f_ab, int replicates,
                         std::uint64_t seed) {
  if (indices.degenerate || replicates < 2) return;
  const std::size_t n = f_a.size();
  const std::size_t k = f_ab.size();
  Rng rng(seed);
  std::vector<double> ra(n), rb(n);
  std::vector<std::vector<double>> rab(k, std::vector<double>(n));
  std::vector<double> s1_sum(k), s1_sq(k), st_sum(k), st_sq(k);
  int used = 0;
  for (int r = 0; r < replicates; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto pick = static_cast<std::size_t>(rng.below(n));
      ra[j] = f_a[pick];
      rb[j] = f_b[pick];
      for (std::size_t i = 0; i < k; ++i) rab[i][j] = f_ab[i][pick];
    }
    const IndexSet rep = sobol_indices(ra, rb, rab);
    if (rep.degenerate) continue;
    ++used;
    for (std::size_t i = 0; i < k; ++i) {
      s1_sum[i] += rep.factors[i].s1;
      s1_sq[i] += rep.factors[i].s1 * rep.factors[i].s1;
      st_sum[i] += rep.factors[i].st;
      st_sq[i] += rep.factors[i].st * rep.factors[i].st;
    }
  }
  if (used < 2) return;
  auto sd = [&](double sum, double sq) {
    const double m = sum / used;
    return std::sqrt(std::max(0.0, (sq - used * m * m) / (used - 1)));
  };
  for (std::size_t i = 0; i < k; ++i) {
    indices.factors[i].s1_ci = 1.96 * sd(s1_sum[i], s1_sq[i]);
    indices.factors[i].st_ci = 1.96 * sd(st_sum[i], st_sq[i]);
  }
}

SobolResult run_sobol(const SobolDesign& design,
                      const std::function<std::vector<double>(std::span<const double>)>& model,
                      std::size_t outputs, int workers) {
  const SaltelliSample sample = saltelli_sample(design);
  const std::size_t n = sample.n;
  const std::size_t k = sample.k;

  std::vector<std::vector<double>> y(sample.rows.size());
  std::vector<char> failed(sample.rows.size(), 0);
  parallel_for(sample.rows.size(), static_cast<std::size_t>(workers), [&](std::size_t r) {
    try {
      auto v = model(sample.rows[r]);
      bool ok = v.size() == outputs;
      for (double x : v) ok = ok && std::isfinite(x);
      if (ok) {
        y[r] = std::move(v);
        return;
      }
    } catch (...) {
    }
    failed[r] = 1;
  });

  SobolResult result;
  result.design = design;
  result.evaluations = static_cast<long>(sample.rows.size());
  for (std::size_t r = 0; r < failed.size(); ++r) {
    if (failed[r]) result.failed_rows.push_back(r);
  }
  const double budget = design.failure_budget * static_cast<double>(sample.rows.size());
  if (static_cast<double>(result.failed_rows.size()) > budget) {
    std::string list;
    for (std::size_t i = 0; i < result.failed_rows.size() && i < 20; ++i) {
      list += (i ? ", " : "") + std::to_string(result.failed_rows[i]);
    }
    if (result.failed_rows.size() > 20) list += ", ...";
    throw Error("sensitivity analysis aborted: " + std::to_string(result.failed_rows.size()) +
                " of " + std::to_string(sample.rows.size()) +
                " design rows failed, above the failure budget (rows " + list + ")");
  }

  // Drop every base row whose A, B or any A_B^(i) evaluation failed.
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j) {
    bool ok = !failed[sample.a_row(j)] && !failed[sample.b_row(j)];
    for (std::size_t i = 0; i < k; ++i) ok = ok && !failed[sample.ab_row(i, j)];
    if (ok) keep.push_back(j);
  }
  result.n_effective = keep.size();
  if (keep.size() < 2) throw Error("sensitivity analysis aborted: fewer than two usable base rows");

  const std::size_t m = keep.size();
  std::vector<double> fa(m), fb(m);
  std::vector<std::vector<double>> fab(k, std::vector<double>(m));
  for (std::size_t o = 0; o < outputs; ++o) {
    for (std::size_t jj = 0; jj < m; ++jj) {
      const std::size_t j = keep[jj];
      fa[jj] = y[sample.a_row(j)][o];
      fb[jj] = y[sample.b_row(j)][o];
      for (std::size_t i = 0; i < k; ++i) fab[i][jj] = y[sample.ab_row(i, j)][o];
    }
    SobolTimePoint p;
    p.indices = sobol_indices(fa, fb, fab);
    // One resampling stream per output, derived from the design seed.
    bootstrap_intervals(p.indices, fa, fb, fab, design.bootstrap,
                        design.seed ^ (0x9E3779B97F4A7C15ULL * (o + 1)));
    result.points.push_back(std::move(p));
  }
  return result;
}

sim::LakeSetup apply_factors(const sim::LakeSetup& base, const std::vector<Factor>& factors,
                             std::span<const double> values) {
  if (values.size() != factors.size()) throw ValidationError("sobol", "row length does not match the factors");
  sim::LakeSetup s = base;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    const double v = values[i];
    if (f.target == "epilimnion_depth") {
      for (auto& x : s.forcing.samples) x.depth = transform(x.depth, f.transform, v);
    } else if (f.target == "temperature") {
      for (auto& x : s.forcing.samples) x.temperature = transform(x.temperature, f.transform, v);
    } else if (f.target == "warm_season_temperature") {
      for (auto& x : s.forcing.samples) {
        if (in_warm_season(x.time)) x.temperature = transform(x.temperature, f.transform, v);
      }
    } else {
      model::set_param(s.params, f.target,
                       transform(model::get_param(s.params, f.target), f.transform, v));
      // A p_in column in the forcing overrides the parameter, so transform it too.
      if (f.target == "background.p_in") {
        for (auto& x : s.forcing.samples) {
          if (x.p_in) x.p_in = transform(*x.p_in, f.transform, v);
        }
      }
    }
  }
  return s;
}

SobolResult time_dependent_sobol(const sim::LakeSetup& base, const SobolDesign& design,
                                 int workers) {
  validate(design);
  validate_targets(design);
  const auto model = [&](std::span<const double> row) {
    const auto setup = apply_factors(base, design.factors, row);
    const auto traj = sim::simulate(setup);
    std::vector<double> out;
    out.reserve(design.output_times.size());
    for (double t : design.output_times) out.push_back(sim::observable_at(traj, design.output, t));
    return out;
  };
  SobolResult r = run_sobol(design, model, design.output_times.size(), workers);
  for (std::size_t i = 0; i < r.points.size(); ++i) r.points[i].time = design.output_times[i];
  return r;
}

}  // namespace lakebloom::sensitivity
