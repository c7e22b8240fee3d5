#include "lakebloom/io/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lakebloom/common/error.hpp"
#include "lakebloom/model/responses.hpp"

namespace lakebloom::io {

void validate(const ForcingSeries& series) {
  const auto& s = series.samples;
  if (s.size() < 2) throw ValidationError("forcing", "needs at least two samples");
  const bool light = s.front().light.has_value();
  const bool p_in = s.front().p_in.has_value();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string where = "forcing[" + std::to_string(i) + "]";
    if (!std::isfinite(s[i].time) || !std::isfinite(s[i].temperature)) {
      throw ValidationError(where, "non-finite time or temperature");
    }
    if (i > 0 && !(s[i].time > s[i - 1].time)) {
      throw ValidationError(where, "times must increase strictly");
    }
    if (!(s[i].depth > 0.0) || !std::isfinite(s[i].depth)) {
      throw ValidationError(where, "epilimnion depth must be positive");
    }
    if (s[i].light.has_value() != light || s[i].p_in.has_value() != p_in) {
      throw ValidationError(where, "optional columns must be present on every sample or none");
    }
    if (light && !(*s[i].light >= 0.0)) throw ValidationError(where, "light must be non-negative");
    if (p_in && !(*s[i].p_in >= 0.0)) throw ValidationError(where, "p_in must be non-negative");
  }
}

model::ForcingAt interpolate_forcing(const ForcingSeries& series, double t,
                                     const model::LightCycle& cycle) {
  const auto& s = series.samples;
  model::ForcingAt out;

  auto from_sample = [&](const ForcingSample& x) {
    out.temperature = x.temperature;
    out.depth = x.depth;
    out.light = x.light.value_or(model::surface_light(cycle, t));
    out.p_in = x.p_in;
  };

  if (t <= s.front().time) {
    from_sample(s.front());
    out.clamped = t < s.front().time;
    return out;
  }
  if (t >= s.back().time) {
    from_sample(s.back());
    out.clamped = t > s.back().time;
    return out;
  }

  const auto hi = std::upper_bound(s.begin(), s.end(), t,
                                   [](double v, const ForcingSample& x) { return v < x.time; });
  const auto lo = hi - 1;
  if (lo->time == t) {
    from_sample(*lo);
    return out;
  }
  const double w = (t - lo->time) / (hi->time - lo->time);
  auto lerp = [w](double a, double b) { return a + w * (b - a); };
  out.temperature = lerp(lo->temperature, hi->temperature);
  out.depth = lerp(lo->depth, hi->depth);
  out.light = lo->light ? lerp(*lo->light, *hi->light) : model::surface_light(cycle, t);
  if (lo->p_in) out.p_in = lerp(*lo->p_in, *hi->p_in);
  return out;
}

ForcingSeries synthetic_forcing(double t_first, double t_last) {
  ForcingSeries series;
  for (double t = t_first; t <= t_last + 1e-9; t += 1.0) {
    const double season = std::sin(2.0 * std::numbers::pi * (t - 125.0) / 365.0);
    ForcingSample x;
    x.time = t;
    x.temperature = 14.0 + 11.5 * season;
    x.depth = 7.5 - 2.0 * season;
    series.samples.push_back(x);
  }
  return series;
}

}  // namespace lakebloom::io
