#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lakebloom/common/error.hpp"
#include "lakebloom/model/rhs.hpp"
#include "lakebloom/sensitivity/sobol.hpp"

using namespace lakebloom;
using namespace lakebloom::sensitivity;

namespace {

SobolDesign unit_design(std::size_t k, std::size_t n, Sampler sampler = Sampler::sobol) {
  SobolDesign d;
  d.n = n;
  d.sampler = sampler;
  d.bootstrap = 100;
  for (std::size_t i = 0; i < k; ++i) d.factors.push_back({"x" + std::to_string(i + 1), "none", 0.0, 1.0});
  return d;
}

SobolDesign ishigami_design(std::size_t n, Sampler sampler = Sampler::sobol) {
  SobolDesign d = unit_design(3, n, sampler);
  for (auto& f : d.factors) {
    f.lower = -std::numbers::pi;
    f.upper = std::numbers::pi;
  }
  return d;
}

std::vector<double> ishigami(std::span<const double> x) {
  return {std::sin(x[0]) + 7.0 * std::pow(std::sin(x[1]), 2) +
          0.1 * std::pow(x[2], 4) * std::sin(x[0])};
}

// Analytic Ishigami decomposition for a = 7, b = 0.1.
struct IshigamiTruth {
  double s1[3];
  double st[3];
  IshigamiTruth() {
    const double a = 7.0, b = 0.1, pi = std::numbers::pi;
    const double v1 = 0.5 * std::pow(1.0 + b * std::pow(pi, 4) / 5.0, 2);
    const double v2 = a * a / 8.0;
    const double v13 = b * b * std::pow(pi, 8) * (1.0 / 18.0 - 1.0 / 50.0);
    const double v = v1 + v2 + v13;
    s1[0] = v1 / v;
    s1[1] = v2 / v;
    s1[2] = 0.0;
    st[0] = (v1 + v13) / v;
    st[1] = v2 / v;
    st[2] = v13 / v;
  }
};

sim::LakeSetup lake() {
  sim::LakeSetup s;
  s.params = model::default_params();
  s.forcing = io::synthetic_forcing(1.0, 365.0);
  s.initial = model::default_initial_state(io::interpolate_forcing(s.forcing, s.settings.t0).temperature);
  return s;
}

}  // namespace

TEST_CASE("analytic Ishigami indices match the published values") {
  const IshigamiTruth t;
  CHECK(t.s1[0] == doctest::Approx(0.3139).epsilon(1e-3));
  CHECK(t.s1[1] == doctest::Approx(0.4424).epsilon(1e-3));
  CHECK(t.st[0] == doctest::Approx(0.5576).epsilon(1e-3));
  CHECK(t.st[2] == doctest::Approx(0.2437).epsilon(1e-3));
}

TEST_CASE("Saltelli sample layout") {
  const auto d = unit_design(1, 64);
  const auto s = saltelli_sample(d);
  CHECK(s.rows.size() == 192);
  const auto d3 = unit_design(3, 128);
  const auto s3 = saltelli_sample(d3);
  REQUIRE(s3.rows.size() == 128 * 5);
  for (std::size_t j = 0; j < s3.n; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t c = 0; c < 3; ++c) {
        const double expect = c == i ? s3.rows[s3.b_row(j)][c] : s3.rows[s3.a_row(j)][c];
        REQUIRE(s3.rows[s3.ab_row(i, j)][c] == expect);
      }
    }
  }
}

TEST_CASE("Saltelli sample is stratified and in bounds") {
  for (auto sampler : {Sampler::sobol, Sampler::uniform}) {
    auto d = unit_design(4, 256, sampler);
    d.factors[2].lower = -3.0;
    d.factors[2].upper = 5.0;
    const auto s = saltelli_sample(d);
    for (std::size_t c = 0; c < 4; ++c) {
      const auto& f = d.factors[c];
      double mean = 0.0;
      for (std::size_t j = 0; j < 2 * s.n; ++j) {
        const double v = s.rows[j][c];
        REQUIRE(v >= f.lower);
        REQUIRE(v <= f.upper);
        mean += v;
      }
      mean /= static_cast<double>(2 * s.n);
      const double mid = 0.5 * (f.lower + f.upper);
      CHECK(std::abs(mean - mid) / (f.upper - f.lower) < 3.0 / std::sqrt(static_cast<double>(s.n)));
    }
  }
}

TEST_CASE("narrow bounds give near-identical rows") {
  auto d = unit_design(2, 64);
  for (auto& f : d.factors) {
    f.lower = 1.0;
    f.upper = 1.0 + 1e-12;
  }
  for (const auto& r : saltelli_sample(d).rows) {
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("Ishigami indices at N = 2^14") {
  const IshigamiTruth t;
  for (auto sampler : {Sampler::sobol, Sampler::uniform}) {
    CAPTURE(static_cast<int>(sampler));
    const auto r = run_sobol(ishigami_design(1 << 14, sampler), ishigami, 1, 4);
    REQUIRE(r.points.size() == 1);
    const auto& ix = r.points[0].indices;
    REQUIRE(!ix.degenerate);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(ix.factors[i].s1 - t.s1[i]) < 0.05);
      CHECK(std::abs(ix.factors[i].st - t.st[i]) < 0.05);
      CHECK(ix.factors[i].s1_ci >= 0.0);
      CHECK(ix.factors[i].st_ci >= 0.0);
      sum += ix.factors[i].s1;
    }
    CHECK(sum <= 1.05);
    CHECK(r.evaluations == (1 << 14) * 5);
  }
}

TEST_CASE("additive symmetric model splits variance evenly") {
  const auto r = run_sobol(unit_design(2, 4096),
                           [](std::span<const double> x) { return std::vector<double>{x[0] + x[1]}; }, 1, 2);
  const auto& f = r.points[0].indices.factors;
  for (int i = 0; i < 2; ++i) {
    CHECK(f[i].s1 == doctest::Approx(0.5).epsilon(0.05));
    CHECK(f[i].st == doctest::Approx(0.5).epsilon(0.05));
  }
}

TEST_CASE("constant model is flagged degenerate") {
  const auto r = run_sobol(unit_design(2, 64), [](std::span<const double>) { return std::vector<double>{3.0}; }, 1, 1);
  CHECK(r.points[0].indices.degenerate);
  CHECK(std::isnan(r.points[0].indices.factors[0].s1));
}

TEST_CASE("failure budget") {
  SUBCASE("a few failing rows are excluded pairwise") {
    const auto d = unit_design(2, 1024);
    long calls = 0;
    const auto r = run_sobol(
        d,
        [&](std::span<const double> x) {
          if (x[0] > 0.999) throw ModelError("boom");
          return std::vector<double>{x[0] + 2.0 * x[1]};
        },
        1, 1);
    (void)calls;
    CHECK(!r.failed_rows.empty());
    CHECK(r.n_effective < d.n);
    CHECK(r.n_effective + 10 > d.n);
  }
  SUBCASE("too many failures abort and name the rows") {
    const auto d = unit_design(2, 64);
    try {
      run_sobol(
          d,
          [](std::span<const double> x) {
            if (x[0] > 0.5) throw ModelError("boom");
            return std::vector<double>{x[0]};
          },
          1, 1);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("row") != std::string::npos);
    }
  }
}

TEST_CASE("design validation") {
  auto d = default_design();
  CHECK_NOTHROW(validate(d));
  d.n = 100;
  CHECK_THROWS_AS(validate(d), ValidationError);
  d = default_design();
  d.n = 32;
  CHECK_THROWS_AS(validate(d), ValidationError);
  d = default_design();
  d.factors[1].name = d.factors[0].name;
  CHECK_THROWS_AS(validate(d), ValidationError);
  d = default_design();
  d.factors[0].lower = d.factors[0].upper + 1.0;
  CHECK_THROWS_AS(validate(d), ValidationError);
  d = default_design();
  d.factors[0].target = "cyano.nonexistent";
  CHECK_THROWS_AS(validate_targets(d), ValidationError);
}

TEST_CASE("default design factors") {
  const auto d = default_design();
  REQUIRE(d.factors.size() == 5);
  CHECK(d.output == "cyano");
  CHECK(d.output_times == std::vector<double>{121, 152, 182, 213, 244, 274});
  CHECK(d.factors[0].upper == 2.7);
  CHECK(d.factors[1].lower == 0.02);
  CHECK(d.factors[1].upper == 0.12);
  CHECK(d.factors[4].upper == 3.5);
}

TEST_CASE("factor application") {
  const auto base = lake();
  const auto d = default_design();
  const std::vector<double> v{1.0, 0.07, 1.2, 0.8, 2.0};
  const auto s = apply_factors(base, d.factors, v);
  CHECK(s.forcing.samples[150].depth == doctest::Approx(base.forcing.samples[150].depth + 1.0));
  CHECK(s.params.background.exchange_rate == 0.07);
  CHECK(s.params.background.k_bg == doctest::Approx(1.2 * base.params.background.k_bg));
  CHECK(s.params.background.p_in == doctest::Approx(0.8 * base.params.background.p_in));
  CHECK(s.forcing.samples[20].temperature == doctest::Approx(base.forcing.samples[20].temperature + 2.0));
  CHECK(base.params.background.exchange_rate != 0.07);
}

TEST_CASE("lake Sobol run: dummy factor, collapsed factor, ST >= S1 and worker independence") {
  auto d = default_design();
  d.n = 64;
  d.bootstrap = 100;
  // Walleye depuration is fixed at zero, so scaling it changes nothing.
  d.factors.push_back({"dummy", "walleye.k_dep", 0.5, 2.0, Transform::scale});
  d.factors.push_back({"collapsed", "cyano.mu_max", 1.0, 1.0 + 1e-13, Transform::scale});
  const auto base = lake();
  const auto a = time_dependent_sobol(base, d, 1);
  const auto b = time_dependent_sobol(base, d, 8);
  REQUIRE(a.points.size() == d.output_times.size());
  CHECK(a.evaluations == static_cast<long>(d.n * (d.factors.size() + 2)));
  for (std::size_t p = 0; p < a.points.size(); ++p) {
    const auto& ia = a.points[p].indices;
    const auto& ib = b.points[p].indices;
    REQUIRE(!ia.degenerate);
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      CHECK(ia.factors[i].s1 == ib.factors[i].s1);
      CHECK(ia.factors[i].st == ib.factors[i].st);
      CHECK(ia.factors[i].s1_ci == ib.factors[i].s1_ci);
      const auto& f = ia.factors[i];
      CHECK(f.st >= f.s1 - (f.s1_ci + f.st_ci));
    }
    const auto& dummy = ia.factors[5];
    const auto& collapsed = ia.factors[6];
    CHECK(std::abs(dummy.st) <= dummy.st_ci + 1e-9);
    CHECK(std::abs(dummy.s1) <= dummy.s1_ci + 1e-9);
    CHECK(std::abs(collapsed.st) <= collapsed.st_ci + 1e-9);
  }
}
