// Acceptance gate: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Experiment criteria use the same presets
// (and master seed) as `fdsched reproduce`.
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fdsched/coalition.hpp"
#include "fdsched/contention.hpp"
#include "fdsched/figures.hpp"
#include "fdsched/link_budget.hpp"
#include "fdsched/schedulers.hpp"
#include "fdsched/sim.hpp"
#include "fdsched/sweep.hpp"
#include "test_support.hpp"

using namespace fdsched;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  fmt::print("{} {:<28} {}\n", ok ? "PASS" : "FAIL", id, detail);
  if (!ok) ++failures;
}

// Per-scheduler means at one swept value.
struct Means {
  std::map<SchedulerKind, double> completed;
  std::map<SchedulerKind, double> throughput;
};

std::map<double, Means> sweep_means(const FigurePreset& preset) {
  const auto rows = run_sweep(preset.spec, preset.base);
  std::map<double, Means> out;
  for (const auto& p : summarize(preset.spec, rows)) {
    if (p.failures > 0) throw std::runtime_error(fmt::format("{}: failed rows", preset.id));
    out[p.param_value].completed[p.scheduler] = p.mean_completed;
    out[p.param_value].throughput[p.scheduler] = p.mean_throughput_gbps;
  }
  return out;
}

// Non-increasing, allowing at most one adjacent rise of at most 2%.
bool mostly_non_increasing(const std::vector<double>& v) {
  int rises = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) continue;
    if (v[i] > v[i - 1] * 1.02) return false;
    ++rises;
  }
  return rises <= 1;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += fmt::format("{}{:.3f}", s.empty() ? "" : " ", x);
  return s;
}

FigurePreset preset(const char* id) { return *figure_preset(id); }

void experiment_criteria() {
  const auto by_flows = sweep_means(preset("fig8"));
  const Means& m30 = by_flows.at(30.0);
  const double fdcg = m30.throughput.at(SchedulerKind::Fdcg);
  const double tdma = m30.throughput.at(SchedulerKind::Tdma);
  const double stdma = m30.throughput.at(SchedulerKind::Stdma);
  const double sfd = m30.throughput.at(SchedulerKind::Sfd);
  const std::string gbps =
      fmt::format("FDCG {:.2f} SFD {:.2f} STDMA {:.2f} TDMA {:.2f} Gbps", fdcg, sfd, stdma, tdma);

  report("tdma_anchor", tdma >= 8.0 && tdma <= 16.0, fmt::format("TDMA {:.2f} Gbps in [8, 16]", tdma));
  report("fdcg_band", fdcg >= 20.0 && fdcg <= 40.0, fmt::format("FDCG {:.2f} Gbps in [20, 40]", fdcg));
  report("throughput_ordering",
         fdcg > sfd && sfd > tdma && fdcg > stdma && fdcg >= 1.8 * tdma,
         fmt::format("{}; FDCG/TDMA = {:.2f}", gbps, fdcg / tdma));

  const auto by_slots = sweep_means(preset("fig9"));
  const Means& m1500 = by_slots.at(1500.0);
  bool greatest = true;
  for (auto k : kAllSchedulers)
    if (k != SchedulerKind::Fdcg &&
        !(m1500.completed.at(SchedulerKind::Fdcg) > m1500.completed.at(k)))
      greatest = false;
  report("completed_ordering_m1500", greatest,
         fmt::format("completed FDCG {:.1f} SFD {:.1f} STDMA {:.1f} TDMA {:.1f}",
                     m1500.completed.at(SchedulerKind::Fdcg), m1500.completed.at(SchedulerKind::Sfd),
                     m1500.completed.at(SchedulerKind::Stdma), m1500.completed.at(SchedulerKind::Tdma)));

  const auto by_beta = sweep_means(preset("fig12"));
  std::vector<double> beta_tp;
  for (const auto& [x, m] : by_beta) beta_tp.push_back(m.throughput.at(SchedulerKind::Fdcg));
  report("beta_degradation", mostly_non_increasing(beta_tp),
         fmt::format("FDCG Gbps over 10^0..10^5: {}", list(beta_tp)));
  const double f5 = by_beta.at(5.0).completed.at(SchedulerKind::Fdcg);
  const double s5 = by_beta.at(5.0).completed.at(SchedulerKind::Stdma);
  report("beta_high_matches_stdma", std::fabs(f5 - s5) <= 0.25 * s5,
         fmt::format("at 10^5 FDCG {:.1f} vs STDMA {:.1f} completed ({:+.1f}%)", f5, s5,
                     100.0 * (f5 - s5) / s5));

  const auto by_rho = sweep_means(preset("fig14"));
  for (auto k : {SchedulerKind::Fdcg, SchedulerKind::Sfd, SchedulerKind::Stdma}) {
    std::vector<double> c, t;
    for (const auto& [x, m] : by_rho) {
      c.push_back(m.completed.at(k));
      t.push_back(m.throughput.at(k));
    }
    const std::string name(scheduler_name(k));
    report("rho_degradation_" + name, mostly_non_increasing(c) && mostly_non_increasing(t),
           fmt::format("completed {} | Gbps {}", list(c), list(t)));
  }
}

Scenario random_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ScenarioConfig c;
  c.rng_seed = seed;
  c.n_stations = 3 + rng() % 12;
  c.n_flows = std::min<std::size_t>(1 + rng() % 40, c.n_stations * (c.n_stations - 1));
  c.n_slots = 50 + rng() % 1000;
  c.area_m = 20.0 + static_cast<double>(rng() % 150);
  c.channel.rho = std::array{0.0, 0.05, 0.5, 1.0}[rng() % 4];
  if (rng() % 4 == 0) c.beta = Range{2e4, 4e4};
  return generate_scenario(c);
}

void property_suite() {
  // (a) every schedule passes the station validator.
  {
    std::size_t bad = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const Scenario s = random_scenario(derive_seed(0xA, seed));
      const LinkBudget budget(s);
      for (auto k : kAllSchedulers) {
        const ScheduleResult r = run_scheduler(k, s);
        if (!find_violations(r.schedule, s, DuplexRule::FullDuplex).empty() ||
            !find_violations(r.schedule, s, duplex_rule(k)).empty() ||
            !find_rate_mismatches(r.schedule, budget).empty())
          ++bad;
      }
    }
    report("property_a_validator", bad == 0,
           fmt::format("200 scenarios x 4 schedulers, {} invalid schedules", bad));
  }
  // (b) terminal partitions are single-deviation stable.
  {
    std::size_t games = 0, unstable = 0;
    for (std::uint64_t seed = 1; games < 200; ++seed) {
      const Scenario s = random_scenario(derive_seed(0xB, seed));
      const ContentionGraph g = build_graph(s.flows);
      std::vector<std::int64_t> xi;
      for (const auto& f : s.flows) xi.push_back(f.xi_slots);
      std::vector<FlowId> players = min_degree_mis(g, xi).selected;
      if (players.size() > 8) players.resize(8);
      std::sort(players.begin(), players.end());
      const LinkBudget budget(s);
      Rng rng(seed);
      const auto [p, trace] = run_game(budget, players, rng);
      for (FlowId f : players)
        if (try_switch(budget, p, f).accepted) ++unstable;
      ++games;
    }
    report("property_b_nash_audit", unstable == 0,
           fmt::format("{} games, {} profitable deviations", games, unstable));
  }
  // (c) greedy independent sets are independent and maximal.
  {
    std::mt19937_64 rng(0xC);
    std::size_t bad = 0;
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = 1 + rng() % 40;
      const double p = std::uniform_real_distribution<>(0, 1)(rng);
      std::vector<FlowId> labels(n);
      std::vector<std::pair<FlowId, FlowId>> edges;
      for (std::size_t a = 0; a < n; ++a) {
        labels[a] = a;
        for (std::size_t b = a + 1; b < n; ++b)
          if (std::uniform_real_distribution<>(0, 1)(rng) < p) edges.emplace_back(a, b);
      }
      const ContentionGraph g = ContentionGraph::from_edges(labels, edges);
      std::vector<std::int64_t> xi(n);
      for (auto& x : xi) x = 1 + static_cast<std::int64_t>(rng() % 10);
      const auto sel = min_degree_mis(g, xi).selected;
      if (!is_independent(g, sel) || !is_maximal_independent(g, sel)) ++bad;
    }
    report("property_c_mis", bad == 0, fmt::format("500 graphs, {} bad outputs", bad));
  }
  // (d) FDCG never beats the exhaustive optimum.
  {
    std::mt19937_64 rng(0xD);
    std::size_t over = 0, positive = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      ScenarioConfig c;
      c.n_stations = 4;
      c.n_flows = 1 + rng() % 4;
      c.n_slots = 1 + rng() % (kBruteForceMaxCells / c.n_flows);
      c.sched_us = 18.0;
      c.area_m = 60.0;
      c.qos_bps = Range{2e9, 10e9};
      c.channel.rho = std::array{0.0, 0.5, 1.0}[rng() % 3];
      c.rng_seed = seed;
      const Scenario s = generate_scenario(c);
      const std::size_t best = brute_force_p1(s);
      if (best > 0) ++positive;
      if (schedule_fdcg(s).completed_count > best) ++over;
    }
    report("property_d_brute_force", over == 0,
           fmt::format("100 tiny instances ({} with a positive optimum), {} above optimum", positive,
                       over));
  }
  // (e) production rates against the naive interference oracle.
  {
    std::mt19937_64 rng(0xE);
    double worst = 0.0;
    std::size_t evaluated = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      const Scenario s = random_scenario(derive_seed(0xE, seed));
      const LinkBudget budget(s);
      const auto active = testing::random_conflict_free_set(s, rng);
      for (FlowId f : active) {
        const double want = testing::oracle::slot_rate(s, f, active);
        worst = std::max(worst, std::fabs(budget.rate_bps(f, active) - want) / want);
        ++evaluated;
      }
    }
    report("property_e_rate_oracle", worst <= 1e-12,
           fmt::format("1000 active sets, {} rates, max rel err {:.2e}", evaluated, worst));
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(FDSCHED_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "fdsched_acceptance";
  fs::remove_all(root);
  bool ok = true;
  std::size_t compared = 0;
  for (const char* args : {"run --seed 31", "reproduce fig13 --jobs 2"}) {
    const fs::path a = root / "a", b = root / "b";
    ok = ok && cli(fmt::format("{} --out {}", args, a.string())) == 0;
    ok = ok && cli(fmt::format("{} --out {}", args, b.string())) == 0;
    for (const auto& e : fs::directory_iterator(a)) {
      ok = ok && slurp(e.path()) == slurp(b / e.path().filename());
      ++compared;
    }
    fs::remove_all(root);
  }
  report("determinism_cli", ok && compared > 0,
         fmt::format("{} output files compared across repeated invocations", compared));
}

}  // namespace

int main() {
  try {
    experiment_criteria();
    property_suite();
    determinism();
  } catch (const std::exception& e) {
    report("harness", false, e.what());
  }
  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
