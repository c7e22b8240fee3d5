#include "lakebloom/calibrate/objective.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "lakebloom/common/error.hpp"

namespace lakebloom::calibrate {

void validate(const ObservationSet& observations) {
  for (const auto& o : observations) {
    if (!sim::is_observable(o.variable)) {
      throw ValidationError("observations.variable", "'" + o.variable + "' is not observable");
    }
    if (!std::isfinite(o.time) || !std::isfinite(o.value)) {
      throw ValidationError("observations.value", "time and value must be finite");
    }
    if (!(o.weight > 0.0) || !std::isfinite(o.weight)) {
      throw ValidationError("observations.weight", "must be positive");
    }
  }
}

namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
};

}  // namespace

double mse(std::span<const Residual> input, bool normalize) {
  if (input.empty()) throw ValidationError("observations", "no observations to fit");

  // Summing in a canonical order makes the result independent of input order.
  std::vector<Residual> residuals(input.begin(), input.end());
  std::sort(residuals.begin(), residuals.end(), [](const Residual& a, const Residual& b) {
    return std::tie(a.variable, a.value, a.prediction, a.weight) <
           std::tie(b.variable, b.value, b.prediction, b.weight);
  });

  std::map<std::string, double> scale;
  if (normalize) {
    std::map<std::string, Moments> moments;
    for (const auto& r : residuals) {
      auto& m = moments[r.variable];
      m.sum += r.value;
      ++m.n;
    }
    for (const auto& r : residuals) {
      auto& m = moments[r.variable];
      const double d = r.value - m.sum / static_cast<double>(m.n);
      m.sum_sq += d * d;
    }
    for (const auto& [name, m] : moments) {
      double s = m.sum_sq / static_cast<double>(m.n);
      if (!(s > 0.0)) {
        const double mean = m.sum / static_cast<double>(m.n);
        s = mean * mean > 0.0 ? mean * mean : 1.0;
      }
      scale[name] = s;
    }
  }

  double num = 0.0;
  double den = 0.0;
  for (const auto& r : residuals) {
    const double d = r.prediction - r.value;
    const double s = normalize ? scale[r.variable] : 1.0;
    num += r.weight * d * d / s;
    den += r.weight;
  }
  return num / den;
}

std::vector<Residual> residuals(const sim::Trajectory& trajectory,
                                const ObservationSet& observations) {
  std::vector<Residual> out;
  out.reserve(observations.size());
  for (const auto& o : observations) {
    out.push_back({o.variable, sim::observable_at(trajectory, o.variable, o.time), o.value, o.weight});
  }
  return out;
}

double mse_objective(const sim::Trajectory& trajectory, const ObservationSet& observations,
                     bool normalize) {
  const auto r = residuals(trajectory, observations);
  return mse(r, normalize);
}

}  // namespace lakebloom::calibrate
