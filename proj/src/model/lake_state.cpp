#include "lakebloom/model/lake_state.hpp"

namespace lakebloom::model {

LakeState::Array LakeState::to_array() const {
  return {cyano,   cyano_quota, algae,       algae_quota, phosphorus, daphnia,  perch,
          walleye, mclr,        tox_daphnia, tox_perch,   tox_walleye, oxygen};
}

LakeState LakeState::from_array(const Array& a) {
  LakeState s;
  s.cyano = a[0];
  s.cyano_quota = a[1];
  s.algae = a[2];
  s.algae_quota = a[3];
  s.phosphorus = a[4];
  s.daphnia = a[5];
  s.perch = a[6];
  s.walleye = a[7];
  s.mclr = a[8];
  s.tox_daphnia = a[9];
  s.tox_perch = a[10];
  s.tox_walleye = a[11];
  s.oxygen = a[12];
  return s;
}

std::optional<std::size_t> state_index(std::string_view name) {
  for (std::size_t i = 0; i < kStateNames.size(); ++i) {
    if (kStateNames[i] == name) return i;
  }
  return std::nullopt;
}

}  // namespace lakebloom::model
