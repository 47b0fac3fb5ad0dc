#include "fdsched/sim.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "fdsched/contention.hpp"
#include "fdsched/link_budget.hpp"

namespace fdsched {

RunMetrics evaluate(const SlotSchedule& schedule, const Scenario& scenario) {
  if (schedule.n_slots() != scenario.config.n_slots)
    throw ScheduleError(fmt::format("schedule has {} slots, scenario expects {}", schedule.n_slots(),
                                    scenario.config.n_slots));
  require_valid(schedule, scenario, DuplexRule::FullDuplex);

  const LinkBudget budget(scenario);
  const double dt = scenario.config.slot_s();
  RunMetrics m;
  m.per_flow.assign(scenario.flows.size(), FlowProgress{});

  for (std::size_t k = 0; k < schedule.n_slots(); ++k) {
    const auto& act = schedule.active[k];
    for (FlowId f : act) {
      FlowProgress& p = m.per_flow[f];
      p.bits_delivered += budget.rate_bps(f, act) * dt;
      ++p.slots_used;
      if (!p.completed && p.bits_delivered >= scenario.target_bits(f)) {
        p.completed = true;
        p.completion_slot = k + 1;
      }
    }
  }
  double bits = 0.0;
  for (const auto& p : m.per_flow) {
    bits += p.bits_delivered;
    if (p.completed) ++m.completed_count;
  }
  m.system_throughput_bps = bits / scenario.config.frame_s();
  return m;
}

namespace {

struct BruteForce {
  std::size_t n_flows;
  std::size_t n_slots;
  std::vector<std::vector<double>> slot_bits;  // per feasible subset, bits per flow
  std::vector<double> target;
  std::size_t best = 0;

  void search(std::size_t slot, std::size_t first_subset, const std::vector<double>& bits) {
    if (slot == n_slots) {
      std::size_t done = 0;
      // Slightly generous threshold: the optimum must bound schedulers whose
      // summation order differs from this enumeration's.
      for (std::size_t f = 0; f < n_flows; ++f)
        if (bits[f] >= target[f] * (1.0 - 1e-12)) ++done;
      best = std::max(best, done);
      return;
    }
    // Completion only depends on per-flow totals, so slot order is
    // irrelevant: enumerate non-decreasing subset sequences.
    std::vector<double> next(n_flows);
    for (std::size_t s = first_subset; s < slot_bits.size(); ++s) {
      for (std::size_t f = 0; f < n_flows; ++f) next[f] = bits[f] + slot_bits[s][f];
      search(slot + 1, s, next);
      if (best == n_flows) return;
    }
  }
};

}  // namespace

std::size_t brute_force_p1(const Scenario& scenario) {
  const std::size_t F = scenario.flows.size();
  const std::size_t M = scenario.config.n_slots;
  if (F * M > kBruteForceMaxCells)
    throw std::invalid_argument(fmt::format(
        "brute_force_p1: M*F = {} exceeds the enumeration limit {}", F * M, kBruteForceMaxCells));

  const LinkBudget budget(scenario);
  const double dt = scenario.config.slot_s();
  BruteForce bf{F, M, {}, {}};
  for (FlowId f = 0; f < F; ++f) bf.target.push_back(scenario.target_bits(f));

  for (std::size_t mask = 0; mask < (std::size_t{1} << F); ++mask) {
    std::vector<FlowId> members;
    for (FlowId f = 0; f < F; ++f)
      if (mask & (std::size_t{1} << f)) members.push_back(f);
    if (!budget.conflict_free(members)) continue;
    std::vector<double> per_flow(F, 0.0);
    for (FlowId f : members) per_flow[f] = budget.rate_bps(f, members) * dt;
    bf.slot_bits.push_back(std::move(per_flow));
  }
  bf.search(0, 0, std::vector<double>(F, 0.0));
  return bf.best;
}

}  // namespace fdsched
