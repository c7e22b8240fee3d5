#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "lakebloom/common/error.hpp"
#include "lakebloom/io/config.hpp"
#include "lakebloom/io/csv.hpp"
#include "lakebloom/io/data_files.hpp"
#include "lakebloom/io/output.hpp"
#include "lakebloom/io/results.hpp"
#include "lakebloom/model/rhs.hpp"

using namespace lakebloom;
using namespace lakebloom::io;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("lakebloom_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  fs::path file(const std::string& name, const std::string& text) const {
    const auto p = path / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t parse_error_line(auto&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

sim::LakeSetup lake() {
  sim::LakeSetup s;
  s.params = model::default_params();
  s.forcing = synthetic_forcing(1.0, 365.0);
  s.initial = model::default_initial_state(interpolate_forcing(s.forcing, s.settings.t0).temperature);
  return s;
}

const std::string kForcing = "date,temperature_c,epilimnion_m\n1,4.0,9.0\n2,5.0,8.0\n";

}  // namespace

TEST_CASE("CSV parsing follows RFC 4180") {
  const auto t = parse_csv("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\n\"two\nlines\",3", "t.csv");
  REQUIRE(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].fields[0] == "x,1");
  CHECK(t.rows[0].fields[1] == "say \"hi\"");
  CHECK(t.rows[1].fields[0] == "two\nlines");
  CHECK(t.rows[1].line == 3);

  CHECK(parse_error_line([] { parse_csv("a,b\n1,2\n3\n", "t.csv"); }) == 3);
  CHECK(parse_error_line([] { parse_csv("a,b\n\"open,2\n", "t.csv"); }) == 2);
  CHECK(parse_error_line([] { parse_csv("a,b\n1\"x,2\n", "t.csv"); }) == 2);
  CHECK_THROWS_AS(read_csv("/nonexistent/file.csv"), ParseError);
}

TEST_CASE("CSV writing round-trips through the parser") {
  const std::vector<std::string> fields{"plain", "with,comma", "quote\"d", "line\nbreak", ""};
  const auto t = parse_csv(csv_line({"a", "b", "c", "d", "e"}) + csv_line(fields), "t.csv");
  CHECK(t.rows[0].fields == fields);
  CHECK(csv_field("plain") == "plain");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-300, 0.0}) {
    CHECK(parse_number(format_number(v), "x", 1, "c") == v);
  }
  CHECK(format_number(std::nan("")) == "NA");
  CHECK_THROWS_AS(parse_number("1.5x", "x", 1, "c"), ParseError);
  CHECK_THROWS_AS(parse_number("inf", "x", 1, "c"), ParseError);
  CHECK_THROWS_AS(parse_number("", "x", 1, "c"), ParseError);
}

TEST_CASE("forcing files") {
  TempDir dir;
  SUBCASE("a three-line file loads") {
    const auto f = load_forcing(dir.file("f.csv", kForcing));
    REQUIRE(f.samples.size() == 2);
    CHECK(f.samples[1].temperature == 5.0);
    CHECK(!f.has_light());
  }
  SUBCASE("a duplicate date names its line") {
    const auto p = dir.file("f.csv", "date,temperature_c,epilimnion_m\n2018-05-01,4,9\n2018-05-02,5,8\n2018-05-02,6,8\n");
    CHECK(parse_error_line([&] { load_forcing(p); }) == 4);
  }
  SUBCASE("bad values name their line") {
    CHECK(parse_error_line([&] { load_forcing(dir.file("f.csv", kForcing + "3,5.0,0\n")); }) == 4);
    CHECK(parse_error_line([&] { load_forcing(dir.file("f.csv", kForcing + "2018-02-30,5,5\n")); }) == 4);
    CHECK(parse_error_line([&] { load_forcing(dir.file("f.csv", "date,temp,epilimnion_m\n1,4,9\n2,4,9\n")); }) == 1);
    CHECK(parse_error_line([&] { load_forcing(dir.file("f.csv", "date,temperature_c,epilimnion_m\n1,4,9\n")); }) == 2);
  }
  SUBCASE("dates count from the first year") {
    const auto f = load_forcing(dir.file("f.csv", "date,temperature_c,epilimnion_m\n2018-12-31,4,9\n2019-01-01,5,8\n"));
    CHECK(f.samples[0].time == 365.0);
    CHECK(f.samples[1].time == 366.0);
    CHECK(f.base_year == 2018);
  }
  SUBCASE("exact round trip") {
    auto f = synthetic_forcing(1.0, 30.0);
    for (auto& s : f.samples) {
      s.light = s.time * 10.0 + 0.1;
      s.p_in = 0.02 + s.time * 1e-5;
    }
    f.base_year.reset();
    auto back = load_forcing(dir.file("f.csv", forcing_csv(f)));
    back.base_year.reset();
    CHECK(back == f);
  }
  SUBCASE("the shipped forcing covers the season") {
    const auto f = load_forcing(fs::path(LAKEBLOOM_DATA_DIR) / "mendota_2018_forcing.csv");
    CHECK(f.first_time() <= 91.0);
    CHECK(f.last_time() >= 305.0);
  }
}

TEST_CASE("dates") {
  CHECK(parse_iso_date("2018-03-01")->day_of_year == 60.0);
  CHECK(parse_iso_date("2020-02-29")->day_of_year == 59.5);
  CHECK(parse_iso_date("2020-12-31")->day_of_year == 365.0);
  CHECK(!parse_iso_date("2019-02-29"));
  CHECK(!parse_iso_date("2018-3-01"));
  CHECK(!parse_iso_date("2018-13-01"));
}

TEST_CASE("observation units") {
  TempDir dir;
  CHECK(unit_factor("mclr", "ppb") == 1.0);
  CHECK(unit_factor("mclr", "ng/L") == 1e-3);
  CHECK(!unit_factor("mclr", "mol/L"));
  CHECK(canonical_unit("mclr") == "ug/L");

  const auto obs = load_observations(dir.file("o.csv",
      "date,variable,value,unit\n12,mclr,1.5,ppb\n10,mclr,800,ng/L\n12,cyano,0.4,mgC/L\n"));
  REQUIRE(obs.size() == 3);
  CHECK(obs[0].time == 10.0);
  CHECK(obs[0].value == doctest::Approx(0.8));
  CHECK(obs[1].variable == "mclr");
  CHECK(obs[1].value == 1.5);

  CHECK(parse_error_line([&] {
          load_observations(dir.file("o.csv", "date,variable,value,unit\n1,mclr,1,ug/L\n2,mclr,1,mol/L\n"));
        }) == 3);
  CHECK(parse_error_line([&] {
          load_observations(dir.file("o.csv", "date,variable,value,unit\n1,nitrate,1,mg/L\n"));
        }) == 2);
  CHECK(parse_error_line([&] {
          load_observations(dir.file("o.csv", "date,variable,value,unit,weight\n1,mclr,1,ug/L,0\n"));
        }) == 2);

  const auto back = load_observations(dir.file("o2.csv", observations_csv(obs)));
  REQUIRE(back.size() == obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    CHECK(back[i].time == obs[i].time);
    CHECK(back[i].variable == obs[i].variable);
    CHECK(back[i].value == obs[i].value);
    CHECK(back[i].weight == obs[i].weight);
  }
}

TEST_CASE("forcing interpolation") {
  ForcingSeries f;
  f.samples = {{10.0, 4.0, 8.0, 100.0, std::nullopt}, {20.0, 14.0, 6.0, 300.0, std::nullopt}};
  auto at = interpolate_forcing(f, 15.0);
  CHECK(at.temperature == 9.0);
  CHECK(at.depth == 7.0);
  CHECK(at.light == 200.0);
  CHECK(!at.clamped);
  at = interpolate_forcing(f, 12.5);
  CHECK(at.temperature == doctest::Approx(6.5));
  at = interpolate_forcing(f, 25.0);
  CHECK(at.temperature == 14.0);
  CHECK(at.clamped);
  at = interpolate_forcing(f, 5.0);
  CHECK(at.depth == 8.0);
  CHECK(at.clamped);
}

TEST_CASE("config parsing") {
  TempDir dir;
  dir.file("forcing.csv", kForcing);
  const auto parse = [&](const std::string& text) { return parse_config(text, dir.path, "c.json"); };

  SUBCASE("minimal config") {
    const auto c = parse(R"({"forcing": "forcing.csv"})");
    CHECK(!c.seed);
    CHECK(c.setup.forcing.samples.size() == 2);
    CHECK(c.setup.params.cyano.mu_max == model::default_params().cyano.mu_max);
  }
  SUBCASE("parameter overrides with and without units") {
    const auto c = parse(R"({"forcing": "forcing.csv", "seed": 7,
      "parameters": {"cyano.mu_max": 1.1, "cyano.m": {"value": 0.02, "unit": "1/day"}}})");
    CHECK(c.seed == 7u);
    CHECK(c.setup.params.cyano.mu_max == 1.1);
    CHECK(c.setup.params.cyano.m == 0.02);
  }
  SUBCASE("unknown keys are named") {
    try {
      parse(R"({"forcing": "forcing.csv", "simulation": {"dtt": 0.5}})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("dtt") != std::string::npos);
    }
    CHECK_THROWS_AS(parse(R"({"forcing": "forcing.csv", "parameters": {"cyano.nope": 1}})"), ValidationError);
  }
  SUBCASE("unit mismatch") {
    try {
      parse(R"({"forcing": "forcing.csv", "parameters": {"cyano.mu_max": {"value": 1, "unit": "1/hour"}}})");
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.key().find("cyano.mu_max") != std::string::npos);
    }
  }
  SUBCASE("wrong types") {
    CHECK_THROWS_AS(parse(R"({"forcing": "forcing.csv", "seed": "x"})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({"forcing": 3})"), ValidationError);
    CHECK_THROWS_AS(parse(R"({})"), ValidationError);
  }
  SUBCASE("malformed JSON reports the line") {
    CHECK(parse_error_line([&] { parse("{\n  \"forcing\": \"forcing.csv\",\n  oops\n}"); }) == 3);
  }
  SUBCASE("scenario labels must be unique") {
    CHECK_THROWS_AS(parse(R"({"forcing": "forcing.csv", "scenarios": [{"label": "a"}, {"label": "a"}]})"),
                    ValidationError);
  }
  SUBCASE("the shipped config loads") {
    const auto c = load_config(fs::path(LAKEBLOOM_DATA_DIR) / "lake_mendota.json");
    CHECK(c.lake == "mendota-like");
    CHECK(c.seed == 42u);
    CHECK(c.bounds.size() == 3);
    CHECK(!c.observations.empty());
    CHECK(c.scenarios.size() == 6);
    CHECK(c.setup.settings.t0 == 91.0);
  }
}

TEST_CASE("output directory") {
  TempDir dir;
  const auto out = dir.path / "run";
  SUBCASE("manifest is sorted and stable") {
    std::string first;
    for (int round = 0; round < 2; ++round) {
      OutputDirectory o(out);
      o.write("zeta.csv", "z\n");
      o.write("alpha.json", "{}\n");
      o.write("mid/beta.csv", "b\n");
      o.write_manifest();
      o.commit();
      const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
      REQUIRE(m["files"].size() == 3);
      CHECK(m["files"][0]["path"] == "alpha.json");
      CHECK(m["files"][1]["path"] == "mid/beta.csv");
      CHECK(m["files"][2]["path"] == "zeta.csv");
      CHECK(m["files"][0]["sha256"] == sha256_hex("{}\n"));
      CHECK(m["files"][0]["bytes"] == 3);
      if (round == 0) first = slurp(out / "manifest.json");
      else CHECK(slurp(out / "manifest.json") == first);
    }
  }
  SUBCASE("uncommitted files are removed") {
    {
      OutputDirectory o(out);
      o.write("a.csv", "a\n");
      CHECK(fs::exists(out / "a.csv"));
    }
    CHECK(!fs::exists(out / "a.csv"));
  }
  SUBCASE("names may not escape") {
    OutputDirectory o(out);
    CHECK_THROWS_AS(o.write("../x.csv", "x"), Error);
    CHECK_THROWS_AS(o.write("/tmp/x.csv", "x"), Error);
    CHECK_THROWS_AS(o.write("", "x"), Error);
  }
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("emitted tables parse strictly") {
  auto s = lake();
  s.settings.t1 = 130.0;
  const auto traj = sim::simulate(s);

  const auto tc = parse_csv(trajectory_csv(traj), "trajectory.csv");
  CHECK(tc.rows.size() == traj.size());
  CHECK(tc.header.front() == "time");
  CHECK(tc.header.size() == 1 + model::kStateSize + 3);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(parse_number(tc.rows[i].fields[0], "t", 0, "time") == traj.times[i]);
    CHECK(parse_number(tc.rows[i].fields[1], "t", 0, "c") == traj.states[i].cyano);
  }
  CHECK(parse_csv(diagnostics_csv(traj), "d.csv").rows.size() == traj.size());

  const auto m = nlohmann::json::parse(metrics_json(sim::seasonal_metrics(traj)));
  CHECK(m.is_object());

  std::vector<scenario::ScenarioSpec> specs(2);
  specs[0].label = "a,b";
  specs[1].label = "bad";
  specs[1].depth_offset = -100.0;
  const auto items = scenario::sweep(s, specs, 1);
  const auto sm = parse_csv(sweep_metrics_csv(items), "m.csv");
  REQUIRE(sm.rows.size() == 2);
  CHECK(sm.rows[0].fields[0] == "a,b");
  CHECK(parse_csv(sweep_csv(items), "c.csv").rows.size() == traj.size() * sim::observable_names().size());
  CHECK(parse_csv(sweep_csv({}), "c.csv").rows.empty());
  CHECK(parse_csv(sweep_metrics_csv({}), "m.csv").rows.empty());
}
