#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace lakebloom::model {

inline constexpr std::size_t kStateSize = 13;

/// Instantaneous state of the epilimnion ecosystem.
///
/// Biomasses are carbon (mgC/L), quotas mgP/mgC, dissolved phosphorus mgP/L,
/// toxin pools ug MC-LR/L, oxygen mg/L. The tox_* fields are the total toxin
/// held by each animal pool per litre of lake water, not a per-biomass burden.
struct LakeState {
  double cyano = 0.0;
  double cyano_quota = 0.0;
  double algae = 0.0;
  double algae_quota = 0.0;
  double phosphorus = 0.0;
  double daphnia = 0.0;
  double perch = 0.0;
  double walleye = 0.0;
  double mclr = 0.0;
  double tox_daphnia = 0.0;
  double tox_perch = 0.0;
  double tox_walleye = 0.0;
  double oxygen = 0.0;

  using Array = std::array<double, kStateSize>;

  Array to_array() const;
  static LakeState from_array(const Array& a);

  friend bool operator==(const LakeState&, const LakeState&) = default;
};

/// Field names in storage order; also the column names of trajectory output.
inline constexpr std::array<std::string_view, kStateSize> kStateNames = {
    "cyano",  "cyano_quota", "algae",       "algae_quota", "phosphorus",
    "daphnia", "perch",      "walleye",     "mclr",        "tox_daphnia",
    "tox_perch", "tox_walleye", "oxygen"};

/// Index of a state field by name.
std::optional<std::size_t> state_index(std::string_view name);

inline constexpr bool is_quota_index(std::size_t i) { return i == 1 || i == 3; }

}  // namespace lakebloom::model
