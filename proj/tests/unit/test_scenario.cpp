#include <algorithm>
#include <array>
#include <cmath>

#include "doctest.h"
#include "lakebloom/common/error.hpp"
#include "lakebloom/model/rhs.hpp"
#include "lakebloom/scenario/scenario.hpp"

using namespace lakebloom;
using namespace lakebloom::scenario;

namespace {

sim::LakeSetup lake() {
  sim::LakeSetup s;
  s.params = model::default_params();
  s.forcing = io::synthetic_forcing(1.0, 365.0);
  s.initial = model::default_initial_state(io::interpolate_forcing(s.forcing, s.settings.t0).temperature);
  return s;
}

double peak_mclr(const sim::Trajectory& t) {
  double m = 0.0;
  for (const auto& s : t.states) m = std::max(m, s.mclr);
  return m;
}

sim::Trajectory one_state(double mclr) {
  sim::Trajectory t;
  model::LakeState s;
  s.mclr = mclr;
  t.times.push_back(100.0);
  t.states.push_back(s);
  return t;
}

}  // namespace

TEST_CASE("empty spec is the identity") {
  const auto base = lake();
  const auto s = apply_scenario(base, ScenarioSpec{"baseline"});
  CHECK(s.forcing == base.forcing);
  CHECK(s.initial == base.initial);
  CHECK(s.params.background.p_in == base.params.background.p_in);
  CHECK(s.params.background.exchange_rate == base.params.background.exchange_rate);
}

TEST_CASE("warm-season offset touches only the warm season") {
  const auto base = lake();
  ScenarioSpec spec;
  spec.warm_season_offset = 3.5;
  const auto s = apply_scenario(base, spec);
  for (std::size_t i = 0; i < base.forcing.samples.size(); ++i) {
    const auto& a = base.forcing.samples[i];
    const auto& b = s.forcing.samples[i];
    if (a.time == 200.0) CHECK(b.temperature == doctest::Approx(a.temperature + 3.5));
    if (a.time == 60.0) CHECK(b.temperature == a.temperature);
  }
  CHECK(io::interpolate_forcing(s.forcing, 200.0).temperature ==
        doctest::Approx(io::interpolate_forcing(base.forcing, 200.0).temperature + 3.5));
  CHECK(io::interpolate_forcing(s.forcing, 60.0).temperature ==
        io::interpolate_forcing(base.forcing, 60.0).temperature);
}

TEST_CASE("overrides") {
  const auto base = lake();
  ScenarioSpec spec;
  spec.initial_phosphorus = 0.2;
  spec.exchange_rate = 0.05;
  spec.temperature_offset = 1.0;
  spec.depth_offset = 0.9;
  const auto s = apply_scenario(base, spec);
  CHECK(s.initial.phosphorus == 0.2);
  CHECK(s.params.background.exchange_rate == 0.05);
  CHECK(s.forcing.samples[10].temperature == doctest::Approx(base.forcing.samples[10].temperature + 1.0));
  CHECK(s.forcing.samples[10].depth == doctest::Approx(base.forcing.samples[10].depth + 0.9));
  CHECK(base.initial.phosphorus != 0.2);
}

TEST_CASE("invalid scenarios") {
  const auto base = lake();
  ScenarioSpec spec;
  spec.depth_offset = -100.0;
  CHECK_THROWS_AS(apply_scenario(base, spec), ValidationError);
  spec = {};
  spec.initial_phosphorus = -0.1;
  CHECK_THROWS_AS(apply_scenario(base, spec), ValidationError);
  spec = {};
  spec.warm_season_offset = std::nan("");
  CHECK_THROWS_AS(apply_scenario(base, spec), ValidationError);
}

TEST_CASE("vulnerability index") {
  CHECK(vulnerability_index(one_state(1.7), one_state(1.7)) == 1.0);
  CHECK(*vulnerability_index(one_state(1.2), one_state(2.4)) == doctest::Approx(2.0));
  CHECK(!vulnerability_index(one_state(1e-9), one_state(2.4)));
  CHECK_THROWS_AS(vulnerability_index(sim::Trajectory{}, one_state(1.0)), ValidationError);
}

TEST_CASE("zero warming gives unit indices") {
  GridSettings g;
  g.exchange_rates = {0.02, 0.1};
  g.depth_offsets = {0.0, 1.8};
  g.warming_levels = {0.0};
  const auto grid = vulnerability_grid(lake(), g, 2);
  REQUIRE(grid.cells.size() == 4);
  for (const auto& c : grid.cells) {
    REQUIRE(c.index);
    CHECK(*c.index == 1.0);
  }
}

TEST_CASE("default grid") {
  const auto base = lake();
  const GridSettings g;
  const auto grid = vulnerability_grid(base, g, 8);
  REQUIRE(grid.cells.size() == 72);

  for (const auto& c : grid.cells) {
    REQUIRE(c.status == "ok");
    CHECK(*c.index > 0.0);
  }

  SUBCASE("cells follow warming, depth, exchange order") {
    std::size_t k = 0;
    for (std::size_t w = 0; w < 3; ++w) {
      for (std::size_t d = 0; d < 4; ++d) {
        for (std::size_t e = 0; e < 6; ++e, ++k) {
          CHECK(&grid.at(w, d, e) == &grid.cells[k]);
          CHECK(grid.cells[k].warming == g.warming_levels[w]);
          CHECK(grid.cells[k].depth_offset == g.depth_offsets[d]);
          CHECK(grid.cells[k].exchange_rate == g.exchange_rates[e]);
        }
      }
    }
  }

  SUBCASE("a cell equals its composition from single runs") {
    for (auto [w, d, e] : {std::array<std::size_t, 3>{2, 3, 5}, {0, 0, 0}, {1, 2, 3}}) {
      ScenarioSpec paired;
      paired.exchange_rate = g.exchange_rates[e];
      paired.depth_offset = g.depth_offsets[d];
      ScenarioSpec warm = paired;
      warm.warm_season_offset = g.warming_levels[w];
      const double expect = peak_mclr(sim::simulate(apply_scenario(base, warm))) /
                            peak_mclr(sim::simulate(apply_scenario(base, paired)));
      CHECK(*grid.at(w, d, e).index == expect);
    }
  }

  SUBCASE("a one-cell grid reproduces the full-grid cell") {
    GridSettings one;
    one.exchange_rates = {g.exchange_rates[4]};
    one.depth_offsets = {g.depth_offsets[1]};
    one.warming_levels = {g.warming_levels[2]};
    const auto single = vulnerability_grid(base, one, 1);
    CHECK(*single.cells[0].index == *grid.at(2, 1, 4).index);
  }
}

TEST_CASE("lake-default base uses one shared reference run") {
  const auto base = lake();
  GridSettings g;
  g.exchange_rates = {0.04};
  g.depth_offsets = {0.0, 2.7};
  g.warming_levels = {1.5};
  g.base = GridBase::lake_default;
  const auto grid = vulnerability_grid(base, g, 2);
  const double ref = peak_mclr(sim::simulate(base));
  for (std::size_t d = 0; d < 2; ++d) {
    ScenarioSpec s;
    s.exchange_rate = 0.04;
    s.depth_offset = g.depth_offsets[d];
    s.warm_season_offset = 1.5;
    CHECK(*grid.at(0, d, 0).index == peak_mclr(sim::simulate(apply_scenario(base, s))) / ref);
  }
}

TEST_CASE("grid validation") {
  GridSettings g;
  g.warming_levels = {};
  CHECK_THROWS_AS(vulnerability_grid(lake(), g, 1), ValidationError);
  g = {};
  g.exchange_rates = {-0.1};
  CHECK_THROWS_AS(vulnerability_grid(lake(), g, 1), ValidationError);
}

TEST_CASE("failed cells are marked and the grid completes") {
  GridSettings g;
  g.exchange_rates = {0.04};
  g.depth_offsets = {0.0, -100.0};
  g.warming_levels = {1.0};
  const auto grid = vulnerability_grid(lake(), g, 2);
  REQUIRE(grid.cells.size() == 2);
  CHECK(grid.cells[0].status == "ok");
  CHECK(grid.cells[1].status.rfind("failed", 0) == 0);
  CHECK(!grid.cells[1].index);
}

TEST_CASE("scenario sweep") {
  const auto base = lake();
  CHECK(sweep(base, {}, 2).empty());

  std::vector<ScenarioSpec> specs(3);
  specs[0].label = "warm";
  specs[0].warm_season_offset = 2.0;
  specs[1].label = "broken";
  specs[1].depth_offset = -100.0;
  specs[2].label = "baseline";
  const auto items = sweep(base, specs, 3);
  REQUIRE(items.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(items[i].spec.label == specs[i].label);
  CHECK(items[0].error.empty());
  CHECK(items[0].trajectory);
  CHECK(items[0].metrics);
  CHECK(!items[1].error.empty());
  CHECK(!items[1].trajectory);
  REQUIRE(items[2].trajectory);
  CHECK(items[2].trajectory->states == sim::simulate(base).states);
}
