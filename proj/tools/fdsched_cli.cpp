// fdsched: run, sweep and validate full-duplex backhaul schedules.
//
// Exit codes: 0 ok, 1 usage, 2 config or input file, 3 runtime (including
// schedule violations found by `validate`).

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fdsched/config.hpp"
#include "fdsched/figures.hpp"
#include "fdsched/schedulers.hpp"
#include "fdsched/sim.hpp"
#include "fdsched/sweep.hpp"

namespace fs = std::filesystem;
using namespace fdsched;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kConfig = 2, kRuntime = 3 };

struct Common {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string schedulers;
  std::size_t jobs = 0;
  bool verbose = false;
  bool timing = false;
};

fs::path prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError(fmt::format("cannot create output directory '{}': {}", dir, ec.message()));
  return fs::path(dir);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

AppConfig resolve(const Common& c) {
  AppConfig cfg = c.config_path.empty() ? AppConfig{} : load_app_config(c.config_path);
  if (!c.schedulers.empty()) cfg.schedulers = parse_scheduler_list(c.schedulers);
  if (c.seed) {
    cfg.scenario.rng_seed = *c.seed;
    if (cfg.sweep) cfg.sweep->master_seed = *c.seed;
  }
  if (cfg.sweep) cfg.sweep->schedulers = cfg.schedulers;
  return cfg;
}

int cmd_run(const Common& c) {
  const AppConfig cfg = resolve(c);
  const fs::path out = prepare_out(c.out_dir);
  const Scenario scenario = generate_scenario(cfg.scenario);
  {
    auto f = open_out(out / "scenario.json");
    save_scenario(scenario, f);
  }

  std::vector<SweepRow> rows;
  fmt::print("{:<6} {:>9} {:>6} {:>16}\n", "sched", "completed", "flows", "throughput_gbps");
  for (SchedulerKind kind : cfg.schedulers) {
    SchedulerOptions opts;
    if (c.verbose && kind == SchedulerKind::Fdcg)
      opts.on_game_visit = [](const GameVisit& v) {
        std::cerr << fmt::format("game visit {} flow {} {} utilities a={:.6e} b={:.6e}\n", v.visit,
                                 v.player, v.accepted ? "switch" : "stay", v.utility_a, v.utility_b);
      };
    const auto t0 = std::chrono::steady_clock::now();
    const ScheduleResult result = run_scheduler(kind, scenario, opts);
    const auto t1 = std::chrono::steady_clock::now();
    const RunMetrics m = evaluate(result.schedule, scenario);
    {
      auto f = open_out(out / fmt::format("schedule_{}.csv", scheduler_name(kind)));
      write_schedule_csv(f, result.schedule);
    }
    SweepRow row;
    row.sweep_param = "none";
    row.seed = scenario.config.rng_seed;
    row.scheduler = kind;
    row.completed_flows = m.completed_count;
    row.total_flows = scenario.flows.size();
    row.throughput_gbps = m.system_throughput_bps / 1e9;
    if (c.timing) row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows.push_back(row);
    fmt::print("{:<6} {:>9} {:>6} {:>16.4f}\n", scheduler_name(kind), m.completed_count,
               scenario.flows.size(), row.throughput_gbps);
    if (c.verbose)
      std::cerr << fmt::format("{}: {} dropped (xi > M), {} admissions\n", scheduler_name(kind),
                               result.trace.dropped.size(), result.trace.admissions.size());
  }
  auto f = open_out(out / "run.csv");
  write_sweep_csv(f, rows);
  return kOk;
}

void write_sweep_outputs(const fs::path& out, const std::string& stem, const SweepSpec& spec,
                         const ScenarioConfig& base, const std::vector<SweepRow>& rows) {
  {
    auto f = open_out(out / (stem + ".csv"));
    write_sweep_csv(f, rows);
  }
  auto f = open_out(out / (stem + "_summary.json"));
  f << sweep_summary_json(spec, base, summarize(spec, rows)).dump(2) << '\n';
  for (const auto& r : rows)
    if (r.failed)
      std::cerr << fmt::format("warning: {}={} replicate {} {} failed: {}\n", r.sweep_param,
                               r.param_value, r.replicate, scheduler_name(r.scheduler), r.error);
}

void print_summary(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  for (const auto& p : summarize(spec, rows))
    fmt::print("{}={:<8} {:<6} completed={:>7.2f} throughput_gbps={:>8.3f}{}\n",
               parameter_name(spec.parameter), p.param_value, scheduler_name(p.scheduler),
               p.mean_completed, p.mean_throughput_gbps,
               p.failures ? fmt::format(" ({} failed)", p.failures) : std::string());
}

int cmd_sweep(const Common& c) {
  const AppConfig cfg = resolve(c);
  if (!cfg.sweep) throw ConfigError("sweep needs a config file with a 'sweep' section");
  const fs::path out = prepare_out(c.out_dir);
  const auto rows = run_sweep(*cfg.sweep, cfg.scenario, SweepOptions{c.jobs, c.timing});
  write_sweep_outputs(out, fmt::format("sweep_{}", parameter_name(cfg.sweep->parameter)),
                      *cfg.sweep, cfg.scenario, rows);
  if (c.verbose) print_summary(*cfg.sweep, rows);
  return kOk;
}

int cmd_reproduce(const Common& c, const std::string& figure) {
  std::vector<std::string> ids;
  if (figure == "all") {
    ids = figure_ids();
  } else {
    ids.push_back(figure);
  }
  std::vector<FigurePreset> presets;
  for (const auto& id : ids) {
    auto p = figure_preset(id, c.seed.value_or(kDefaultMasterSeed));
    if (!p) {
      std::string valid;
      for (const auto& v : figure_ids()) valid += v + " ";
      std::cerr << fmt::format("unknown figure id '{}'; valid ids: {}all\n", id, valid);
      return kUsage;
    }
    if (!c.schedulers.empty()) p->spec.schedulers = parse_scheduler_list(c.schedulers);
    presets.push_back(std::move(*p));
  }
  const fs::path out = prepare_out(c.out_dir);
  // Paired figures (completed flows / throughput) share one sweep.
  std::map<std::string, std::vector<SweepRow>> cache;
  for (const auto& p : presets) {
    const std::string key = fmt::format("{}:{}", parameter_name(p.spec.parameter), p.spec.values.size());
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, run_sweep(p.spec, p.base, SweepOptions{c.jobs, c.timing})).first;
    write_sweep_outputs(out, p.id, p.spec, p.base, it->second);
    if (c.verbose) {
      fmt::print("{}: {}\n", p.id, p.title);
      print_summary(p.spec, it->second);
    }
  }
  return kOk;
}

int cmd_validate(const std::string& schedule_path, const std::string& scenario_path, bool half_duplex) {
  std::ifstream sc(scenario_path);
  if (!sc) throw ConfigError(fmt::format("cannot open scenario '{}'", scenario_path));
  const Scenario scenario = load_scenario(sc);
  std::ifstream sh(schedule_path);
  if (!sh) throw ConfigError(fmt::format("cannot open schedule '{}'", schedule_path));
  SlotSchedule schedule;
  try {
    schedule = read_schedule_csv(sh, scenario.flows.size(), scenario.config.n_slots);
  } catch (const ScheduleError& e) {
    throw ConfigError(e.what());
  }
  auto violations =
      find_violations(schedule, scenario, half_duplex ? DuplexRule::HalfDuplex : DuplexRule::FullDuplex);
  if (violations.empty()) {
    const auto rates = find_rate_mismatches(schedule, LinkBudget(scenario), 1e-12);
    violations.insert(violations.end(), rates.begin(), rates.end());
  }
  if (violations.empty()) {
    fmt::print("ok\n");
    return kOk;
  }
  for (const auto& v : violations) fmt::print("violation: {}\n", v.message);
  return kRuntime;
}

int cmd_dump(const Common& c) {
  const AppConfig cfg = resolve(c);
  const fs::path out = prepare_out(c.out_dir);
  const Scenario scenario = generate_scenario(cfg.scenario);
  {
    auto f = open_out(out / "scenario.json");
    save_scenario(scenario, f);
  }
  auto f = open_out(out / "contention_graph.txt");
  build_graph(scenario.flows).write_edge_list(f);
  if (c.verbose)
    fmt::print("{} stations, {} flows written to {}\n", scenario.stations.size(),
               scenario.flows.size(), out.string());
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool with_config, bool with_jobs) {
  if (with_config) sub->add_option("--config", c.config_path, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--out", c.out_dir, "output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed override (scenario seed or sweep master seed)");
  sub->add_option("--schedulers", c.schedulers, "comma-separated subset of FDCG,TDMA,STDMA,SFD");
  if (with_jobs) {
    sub->add_option("--jobs", c.jobs, "worker threads (0 = all cores)")->capture_default_str();
    sub->add_flag("--timing", c.timing, "record wall-clock runtime_ms (makes CSVs non-reproducible)");
  }
  sub->add_flag("-v,--verbose", c.verbose, "extra diagnostics");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-duplex mmWave backhaul scheduling simulator"};
  app.require_subcommand(1);

  Common common;
  auto* run = app.add_subcommand("run", "run one scenario through the selected schedulers");
  add_common(run, common, true, false);
  run->add_flag("--timing", common.timing, "record wall-clock runtime_ms");

  auto* sweep = app.add_subcommand("sweep", "run the sweep described in a config file");
  add_common(sweep, common, true, true);
  sweep->get_option("--config")->required();

  std::string figure;
  auto* reproduce = app.add_subcommand("reproduce", "run a preconfigured figure sweep");
  reproduce->add_option("figure", figure, "fig7 .. fig16 or all")->required();
  add_common(reproduce, common, false, true);

  std::string schedule_path, scenario_path;
  bool half_duplex = false;
  auto* validate = app.add_subcommand("validate", "check a schedule CSV against a scenario");
  validate->add_option("schedule", schedule_path, "schedule CSV (slot,flow_id,rate_bps)")->required();
  validate->add_option("scenario", scenario_path, "scenario JSON")->required();
  validate->add_flag("--half-duplex", half_duplex, "also forbid two flows at one station");
  validate->add_flag("-v,--verbose", common.verbose, "extra diagnostics");

  auto* dump = app.add_subcommand("dump-scenario", "write a generated scenario and its contention graph");
  add_common(dump, common, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(common);
    if (*sweep) return cmd_sweep(common);
    if (*reproduce) return cmd_reproduce(common, figure);
    if (*validate) return cmd_validate(schedule_path, scenario_path, half_duplex);
    if (*dump) return cmd_dump(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
