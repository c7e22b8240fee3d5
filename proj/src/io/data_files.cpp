#include "lakebloom/io/data_files.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <charconv>
#include <map>

#include "lakebloom/common/error.hpp"
#include "lakebloom/io/csv.hpp"
#include "lakebloom/sim/simulate.hpp"

namespace lakebloom::io {

namespace {

constexpr std::array<int, 12> kMonthStart{0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};

bool parse_int(std::string_view s, int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::size_t column(const CsvTable& t, std::string_view name) {
  const auto it = std::find(t.header.begin(), t.header.end(), name);
  return static_cast<std::size_t>(it - t.header.begin());
}

void expect_header(const CsvTable& t, const std::vector<std::string>& required,
                   const std::vector<std::string>& optional) {
  if (t.header.size() < required.size()) {
    throw ParseError(t.source, 1, "missing column '" + required[t.header.size()] + "'");
  }
  for (std::size_t i = 0; i < required.size(); ++i) {
    if (t.header[i] != required[i]) {
      throw ParseError(t.source, 1, "column " + std::to_string(i + 1) + " must be '" + required[i] +
                                        "', found '" + t.header[i] + "'");
    }
  }
  // Optional columns may be omitted but must keep their relative order.
  std::size_t next = 0;
  for (std::size_t i = required.size(); i < t.header.size(); ++i) {
    while (next < optional.size() && optional[next] != t.header[i]) ++next;
    if (next == optional.size()) throw ParseError(t.source, 1, "unexpected column '" + t.header[i] + "'");
    ++next;
  }
}

}  // namespace

std::optional<DayStamp> parse_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), m) || !parse_int(s.substr(8, 2), d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  if (m == 2 && d == 29) return DayStamp{y, 59.5};
  return DayStamp{y, static_cast<double>(kMonthStart[m - 1] + d)};
}

double DayParser::operator()(std::string_view field, const std::string& source, std::size_t line) {
  if (auto d = parse_iso_date(field)) {
    if (!base_year_) base_year_ = d->year;
    return d->day_of_year + 365.0 * (d->year - *base_year_);
  }
  if (field.size() == 10 && field[4] == '-') throw ParseError(source, line, "invalid date '" + std::string(field) + "'");
  return parse_number(field, source, line, "date");
}

ForcingSeries load_forcing(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  expect_header(t, {"date", "temperature_c", "epilimnion_m"}, {"light_umol_m2_s", "p_in_mgP_L"});
  const std::size_t c_light = column(t, "light_umol_m2_s");
  const std::size_t c_pin = column(t, "p_in_mgP_L");

  ForcingSeries s;
  DayParser day;
  for (const auto& r : t.rows) {
    ForcingSample x;
    x.time = day(r.fields[0], t.source, r.line);
    x.temperature = parse_number(r.fields[1], t.source, r.line, "temperature_c");
    x.depth = parse_number(r.fields[2], t.source, r.line, "epilimnion_m");
    if (!(x.depth > 0.0)) throw ParseError(t.source, r.line, "epilimnion_m must be positive");
    if (c_light < t.header.size()) {
      x.light = parse_number(r.fields[c_light], t.source, r.line, "light_umol_m2_s");
      if (*x.light < 0.0) throw ParseError(t.source, r.line, "light_umol_m2_s must be non-negative");
    }
    if (c_pin < t.header.size()) {
      x.p_in = parse_number(r.fields[c_pin], t.source, r.line, "p_in_mgP_L");
      if (*x.p_in < 0.0) throw ParseError(t.source, r.line, "p_in_mgP_L must be non-negative");
    }
    if (!s.samples.empty() && !(x.time > s.samples.back().time)) {
      throw ParseError(t.source, r.line, x.time == s.samples.back().time
                                             ? "duplicated date"
                                             : "dates must increase strictly");
    }
    s.samples.push_back(x);
  }
  if (s.samples.size() < 2) throw ParseError(t.source, t.rows.empty() ? 1 : t.rows.back().line, "at least two samples are required");
  s.base_year = day.base_year();
  return s;
}

std::string forcing_csv(const ForcingSeries& series) {
  std::vector<std::string> header{"date", "temperature_c", "epilimnion_m"};
  if (series.has_light()) header.emplace_back("light_umol_m2_s");
  if (series.has_p_in()) header.emplace_back("p_in_mgP_L");
  std::string out = csv_line(header);
  for (const auto& x : series.samples) {
    std::vector<std::string> f{format_number(x.time), format_number(x.temperature), format_number(x.depth)};
    if (series.has_light()) f.push_back(format_number(x.light.value_or(0.0)));
    if (series.has_p_in()) f.push_back(format_number(x.p_in.value_or(0.0)));
    out += csv_line(f);
  }
  return out;
}

namespace {

enum class Kind { toxin, biomass, quota, phosphorus, oxygen, burden };

std::optional<Kind> kind_of(std::string_view v) {
  if (v == "mclr" || v.starts_with("tox_")) return Kind::toxin;
  if (v == "cyano" || v == "algae" || v == "daphnia" || v == "perch" || v == "walleye") return Kind::biomass;
  if (v.ends_with("_quota")) return Kind::quota;
  if (v == "phosphorus") return Kind::phosphorus;
  if (v == "oxygen") return Kind::oxygen;
  if (v.starts_with("burden_")) return Kind::burden;
  return std::nullopt;
}

const std::map<std::string, double, std::less<>>& unit_table(Kind k) {
  static const std::map<std::string, double, std::less<>> toxin{
      {"ug/L", 1.0}, {"\xC2\xB5g/L", 1.0}, {"\xCE\xBCg/L", 1.0}, {"ppb", 1.0},
      {"ng/mL", 1.0}, {"ng/L", 1e-3}, {"mg/L", 1e3}};
  static const std::map<std::string, double, std::less<>> biomass{
      {"mgC/L", 1.0}, {"gC/m3", 1.0}, {"ugC/L", 1e-3}, {"\xC2\xB5gC/L", 1e-3}};
  static const std::map<std::string, double, std::less<>> quota{{"mgP/mgC", 1.0}};
  static const std::map<std::string, double, std::less<>> phosphorus{
      {"mgP/L", 1.0}, {"mg/L", 1.0}, {"ugP/L", 1e-3}, {"ug/L", 1e-3},
      {"\xC2\xB5g/L", 1e-3}, {"\xCE\xBCg/L", 1e-3}, {"ppb", 1e-3}};
  static const std::map<std::string, double, std::less<>> oxygen{
      {"mg/L", 1.0}, {"mgO2/L", 1.0}, {"g/m3", 1.0}, {"ppm", 1.0}};
  static const std::map<std::string, double, std::less<>> burden{{"ug/mgC", 1.0}, {"mg/gC", 1.0}};
  switch (k) {
    case Kind::toxin: return toxin;
    case Kind::biomass: return biomass;
    case Kind::quota: return quota;
    case Kind::phosphorus: return phosphorus;
    case Kind::oxygen: return oxygen;
    case Kind::burden: return burden;
  }
  return toxin;
}

}  // namespace

std::optional<double> unit_factor(std::string_view variable, std::string_view unit) {
  const auto k = kind_of(variable);
  if (!k || !sim::is_observable(variable)) return std::nullopt;
  const auto& table = unit_table(*k);
  const auto it = table.find(unit);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string_view canonical_unit(std::string_view variable) {
  switch (kind_of(variable).value_or(Kind::toxin)) {
    case Kind::toxin: return "ug/L";
    case Kind::biomass: return "mgC/L";
    case Kind::quota: return "mgP/mgC";
    case Kind::phosphorus: return "mgP/L";
    case Kind::oxygen: return "mg/L";
    case Kind::burden: return "ug/mgC";
  }
  return "";
}

calibrate::ObservationSet load_observations(const std::filesystem::path& path,
                                            std::optional<int> base_year) {
  const CsvTable t = read_csv(path);
  expect_header(t, {"date", "variable", "value", "unit"}, {"weight"});
  const bool has_weight = t.header.size() == 5;

  calibrate::ObservationSet obs;
  DayParser day(base_year);
  for (const auto& r : t.rows) {
    calibrate::Observation o;
    o.time = day(r.fields[0], t.source, r.line);
    o.variable = r.fields[1];
    if (!sim::is_observable(o.variable)) {
      throw ParseError(t.source, r.line, "unknown variable '" + o.variable + "'");
    }
    const auto factor = unit_factor(o.variable, r.fields[3]);
    if (!factor) {
      throw ParseError(t.source, r.line, "unit '" + r.fields[3] + "' is not accepted for '" +
                                             o.variable + "' (expected " +
                                             std::string(canonical_unit(o.variable)) + ")");
    }
    o.value = parse_number(r.fields[2], t.source, r.line, "value") * *factor;
    if (has_weight) {
      o.weight = parse_number(r.fields[4], t.source, r.line, "weight");
      if (!(o.weight > 0.0)) throw ParseError(t.source, r.line, "weight must be positive");
    }
    obs.push_back(std::move(o));
  }
  std::stable_sort(obs.begin(), obs.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  return obs;
}

std::string observations_csv(const calibrate::ObservationSet& observations) {
  std::string out = csv_line({"date", "variable", "value", "unit", "weight"});
  for (const auto& o : observations) {
    out += csv_line({format_number(o.time), o.variable, format_number(o.value),
                     std::string(canonical_unit(o.variable)), format_number(o.weight)});
  }
  return out;
}

}  // namespace lakebloom::io
