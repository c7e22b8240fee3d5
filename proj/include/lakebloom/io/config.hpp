#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lakebloom/calibrate/fit.hpp"
#include "lakebloom/scenario/scenario.hpp"
#include "lakebloom/sensitivity/sobol.hpp"
#include "lakebloom/sim/setup.hpp"

namespace lakebloom::io {

/// Fallback seed when neither the command line nor the config sets one.
inline constexpr std::uint64_t kDefaultSeed = 42;

/// A parsed and validated run configuration with its data files loaded.
struct RunConfig {
  std::string lake = "lake";
  std::optional<std::uint64_t> seed;
  std::filesystem::path forcing_path;
  sim::LakeSetup setup;  // defaults, parameter and initial-state overrides applied

  std::optional<std::filesystem::path> observations_path;
  calibrate::ObservationSet observations;
  calibrate::ParameterBounds bounds;
  calibrate::FitSettings fit;
  bool normalize = true;

  sensitivity::SobolDesign sobol = sensitivity::default_design();
  std::vector<scenario::ScenarioSpec> scenarios;
  scenario::GridSettings grid;
};

/// Parses JSON text. Relative file references resolve against `base_dir`.
///
/// Every object is checked against its schema: an unknown key, a wrong type or
/// a unit that does not match the parameter's canonical unit raises
/// ValidationError naming the key. Malformed JSON raises ParseError with the line.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                       const std::string& source);

RunConfig load_config(const std::filesystem::path& path);

}  // namespace lakebloom::io
