#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lakebloom/common/error.hpp"
#include "lakebloom/common/parallel.hpp"
#include "lakebloom/io/config.hpp"
#include "lakebloom/io/csv.hpp"
#include "lakebloom/io/output.hpp"
#include "lakebloom/io/results.hpp"
#include "lakebloom/sim/metrics.hpp"

#ifndef LAKEBLOOM_VERSION
#define LAKEBLOOM_VERSION "0.0.0"
#endif

namespace lakebloom::cli {

namespace {

struct Invocation {
  std::string subcommand;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool verbose = false;
};

class Progress {
 public:
  Progress(std::ostream& err, bool verbose) : err_(err), verbose_(verbose) {}
  void info(const std::string& msg) const {
    if (verbose_) err_ << "lakebloom: " << msg << "\n";
  }
  void warn(const std::string& msg) const { err_ << "lakebloom: warning: " << msg << "\n"; }

 private:
  std::ostream& err_;
  bool verbose_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report_warnings(const sim::Trajectory& t, const Progress& p) {
  for (const auto& w : t.warnings) p.warn(w);
}

void run_simulate(const io::RunConfig& c, io::OutputDirectory& out, const Progress& p) {
  p.info("simulating " + c.lake);
  const auto traj = sim::simulate(c.setup);
  report_warnings(traj, p);
  out.write("trajectory.csv", io::trajectory_csv(traj));
  out.write("diagnostics.csv", io::diagnostics_csv(traj));
  out.write("metrics.json", io::metrics_json(sim::seasonal_metrics(traj)));
}

void run_fit(const io::RunConfig& c, int workers, io::OutputDirectory& out, const Progress& p) {
  if (c.bounds.empty()) throw ValidationError("fit.bounds", "at least one bound is required");
  if (c.observations.empty()) throw ValidationError("observations", "an observation file is required");
  calibrate::FitProblem problem{c.setup.params, c.setup.initial, c.setup.forcing,
                                c.setup.settings, c.observations, c.bounds, c.normalize};
  auto settings = c.fit;
  settings.workers = workers;
  p.info("fitting " + std::to_string(c.bounds.size()) + " parameters to " +
         std::to_string(c.observations.size()) + " observations");
  const auto result = calibrate::fit(problem, settings);
  p.info("best objective " + io::format_number(result.best_objective) + " after " +
         std::to_string(result.evaluations) + " evaluations");
  if (result.failures > 0) p.warn(std::to_string(result.failures) + " candidate evaluations failed");
  out.write("fit.json", io::fit_json(result));

  sim::LakeSetup best = c.setup;
  for (std::size_t i = 0; i < result.names.size(); ++i) {
    calibrate::apply_named_value(best.params, best.initial, result.names[i], result.best[i]);
  }
  const auto traj = sim::simulate(best);
  out.write("trajectory.csv", io::trajectory_csv(traj));
  out.write("metrics.json", io::metrics_json(sim::seasonal_metrics(traj)));
}

void run_sobol(const io::RunConfig& c, int workers, io::OutputDirectory& out, const Progress& p) {
  p.info("Sobol design with n=" + std::to_string(c.sobol.n) + " and " +
         std::to_string(c.sobol.factors.size()) + " factors");
  const auto result = sensitivity::time_dependent_sobol(c.setup, c.sobol, workers);
  if (!result.failed_rows.empty()) {
    p.warn(std::to_string(result.failed_rows.size()) + " design rows failed and were excluded");
  }
  for (const auto& pt : result.points) {
    if (pt.indices.degenerate) p.warn("output variance vanishes at day " + io::format_number(pt.time));
  }
  out.write("sobol.csv", io::sobol_csv(result));
  out.write("sobol.json", io::sobol_json(result));
}

void run_scenario(const io::RunConfig& c, int workers, io::OutputDirectory& out, const Progress& p) {
  p.info("running " + std::to_string(c.scenarios.size()) + " scenarios");
  const auto items = scenario::sweep(c.setup, c.scenarios, workers);
  for (const auto& it : items) {
    if (!it.error.empty()) p.warn("scenario '" + it.spec.label + "' failed: " + it.error);
    if (it.trajectory) report_warnings(*it.trajectory, p);
  }
  out.write("scenario_metrics.csv", io::sweep_metrics_csv(items));
  const bool any = std::any_of(items.begin(), items.end(), [](const auto& i) { return i.trajectory.has_value(); });
  if (any) out.write("scenario_curves.csv", io::sweep_csv(items));
}

void run_vulnerability(const io::RunConfig& c, const std::string& config_hash, int workers,
                       io::OutputDirectory& out, const Progress& p) {
  p.info("vulnerability grid with " +
         std::to_string(c.grid.exchange_rates.size() * c.grid.depth_offsets.size() *
                        c.grid.warming_levels.size()) +
         " cells");
  const auto grid = scenario::vulnerability_grid(c.setup, c.grid, workers);
  for (const auto& cell : grid.cells) {
    if (cell.status.rfind("failed", 0) == 0) {
      p.warn("cell (" + io::format_number(cell.exchange_rate) + ", " + io::format_number(cell.depth_offset) +
             ", " + io::format_number(cell.warming) + ") " + cell.status);
    }
  }
  out.write("grid.csv", io::grid_csv(grid));
  out.write("grid.json", io::grid_json(grid, config_hash));
}

int execute(const Invocation& inv, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  const Progress progress(err, inv.verbose);

  const std::string text = read_file(inv.config);
  const std::string config_hash = io::sha256_hex(text);
  auto config = io::parse_config(text, std::filesystem::path(inv.config).parent_path(), inv.config);
  const std::uint64_t seed = inv.seed.value_or(config.seed.value_or(io::kDefaultSeed));
  config.fit.seed = seed;
  config.sobol.seed = seed;
  const int workers = inv.workers.value_or(static_cast<int>(default_worker_count()));

  io::OutputDirectory out(inv.out);
  if (inv.subcommand == "simulate") run_simulate(config, out, progress);
  else if (inv.subcommand == "fit") run_fit(config, workers, out, progress);
  else if (inv.subcommand == "sobol") run_sobol(config, workers, out, progress);
  else if (inv.subcommand == "scenario") run_scenario(config, workers, out, progress);
  else run_vulnerability(config, config_hash, workers, out, progress);
  out.write_manifest();

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  nlohmann::ordered_json meta;
  meta["version"] = LAKEBLOOM_VERSION;
  meta["subcommand"] = inv.subcommand;
  meta["lake"] = config.lake;
  meta["seed"] = seed;
  meta["config"] = inv.config;
  meta["config_sha256"] = config_hash;
  meta["integrator"] = "RK4";
  meta["dt"] = config.setup.settings.dt;
  meta["elapsed_seconds"] = elapsed.count();
  out.write_unlisted("run_metadata.json", meta.dump(2) + "\n");
  out.commit();
  progress.info("wrote " + inv.out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& err) {
  CLI::App app{"Cyanobacterial bloom lake simulator", "lakebloom"};
  app.set_version_flag("--version", LAKEBLOOM_VERSION);
  app.require_subcommand(1);

  Invocation inv;
  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "Run one season and write the trajectory and seasonal metrics"},
      {"fit", "Calibrate parameters to observations with differential evolution"},
      {"sobol", "Time-dependent Sobol sensitivity indices"},
      {"scenario", "Run the configured climate and nutrient scenarios"},
      {"vulnerability", "Vulnerability index over exchange rate, depth and warming"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", inv.out, "Output directory")->required();
    sub->add_option("--seed", inv.seed, "Random seed (overrides the config)");
    sub->add_option("--workers", inv.workers, "Worker threads (default: $LAKEBLOOM_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("-v,--verbose", inv.verbose, "Progress messages on standard error");
    sub->callback([&inv, n = std::string(name)] { inv.subcommand = n; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cout, err) == 0 ? 0 : 1;
  }

  try {
    return execute(inv, err);
  } catch (const ValidationError& e) {
    err << "lakebloom: invalid configuration: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "lakebloom: " << e.what() << "\n";
    return 1;
  } catch (const CoverageError& e) {
    err << "lakebloom: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "lakebloom: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "lakebloom: run failed: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lakebloom::cli
