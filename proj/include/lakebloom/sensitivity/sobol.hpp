#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lakebloom/sim/setup.hpp"

namespace lakebloom::sensitivity {

enum class Transform {
  offset,  // quantity + value
  scale,   // quantity * value
  set,     // quantity = value
};

/// One uncertain input. `target` is "epilimnion_depth", "temperature",
/// "warm_season_temperature" or a parameter name such as "background.k_bg".
struct Factor {
  std::string name;
  std::string target;
  double lower = 0.0;
  double upper = 1.0;
  Transform transform = Transform::offset;
};

enum class Sampler {
  sobol,    // Sobol sequence with a seeded random shift
  uniform,  // plain seeded uniform draws
};

struct SobolDesign {
  std::vector<Factor> factors;
  std::size_t n = 512;  // base sample count, a power of two >= 64
  std::uint64_t seed = 42;
  Sampler sampler = Sampler::sobol;
  std::vector<double> output_times{121, 152, 182, 213, 244, 274};
  std::string output = "cyano";
  int bootstrap = 200;
  double failure_budget = 0.01;  // fraction of rows allowed to fail
};

/// Throws ValidationError on an invalid design. Targets are not resolved here,
/// since run_sobol accepts designs over arbitrary model functions.
void validate(const SobolDesign& design);

/// Throws ValidationError naming the first factor whose target is neither a
/// forcing target nor a parameter name.
void validate_targets(const SobolDesign& design);

/// Depth offset, exchange rate, turbidity, inflow P and temperature over the
/// scenario ranges used for the vulnerability grid.
SobolDesign default_design();

/// Rows A (n), then B (n), then A_B^(i) for each factor i (n each), in factor units.
struct SaltelliSample {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::vector<double>> rows;

  std::size_t a_row(std::size_t j) const { return j; }
  std::size_t b_row(std::size_t j) const { return n + j; }
  std::size_t ab_row(std::size_t i, std::size_t j) const { return (2 + i) * n + j; }
};

SaltelliSample saltelli_sample(const SobolDesign& design);

struct FactorIndices {
  double s1 = 0.0;
  double st = 0.0;
  double s1_ci = 0.0;  // bootstrap 95% half-widths
  double st_ci = 0.0;
};

/// Indices for one output. `degenerate` is set (and every index is NaN) when
/// the pooled output variance is zero to working precision.
struct IndexSet {
  bool degenerate = false;
  std::vector<FactorIndices> factors;
};

/// Saltelli (2010) first-order estimator, centred on the pooled mean, and the
/// Jansen total-order estimator, both normalized by
/// the variance of the pooled A and B outputs. f_ab[i] holds the outputs of A_B^(i).
IndexSet sobol_indices(std::span<const double> f_a, std::span<const double> f_b,
                       const std::vector<std::vector<double>>& f_ab);

/// Adds bootstrap half-widths (1.96 standard deviations over `replicates`
/// resamplings of the base rows) to `indices`.
void bootstrap_intervals(IndexSet& indices, std::span<const double> f_a,
                         std::span<const double> f_b,
                         const std::vector<std::vector<double>>& f_ab, int replicates,
                         std::uint64_t seed);

struct SobolTimePoint {
  double time = 0.0;
  IndexSet indices;
};

struct SobolResult {
  SobolDesign design;
  std::vector<SobolTimePoint> points;
  long evaluations = 0;            // n * (k + 2), failed rows included
  std::size_t n_effective = 0;     // base rows left after excluding failures
  std::vector<std::size_t> failed_rows;
};

/// Evaluates `model` on every design row and computes indices for each of its
/// outputs. `model` returns one value per output (or throws to mark the row
/// failed). Rows are evaluated in parallel; results do not depend on `workers`.
///
/// Throws Error listing the failing rows when more than the design's failure
/// budget fails. Otherwise every base row touched by a failure is dropped.
SobolResult run_sobol(const SobolDesign& design,
                      const std::function<std::vector<double>(std::span<const double>)>& model,
                      std::size_t outputs, int workers = 0);

/// Applies one design row to a copy of the base setup.
sim::LakeSetup apply_factors(const sim::LakeSetup& base, const std::vector<Factor>& factors,
                             std::span<const double> values);

/// Sobol indices of design.output (default cyanobacterial biomass) at each
/// output time, simulating every design row over the base season.
SobolResult time_dependent_sobol(const sim::LakeSetup& base, const SobolDesign& design,
                                 int workers = 0);

}  // namespace lakebloom::sensitivity
