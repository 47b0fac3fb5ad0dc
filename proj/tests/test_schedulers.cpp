#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "fdsched/schedulers.hpp"
#include "fdsched/sim.hpp"
#include "test_support.hpp"

namespace fdsched {
namespace {

using testing::FlowSpec;
using testing::make_scenario;

Scenario single_flow() {
  return make_scenario({Point(10, 10), Point(62, 10)}, {{0, 1, 1e9}});
}

TEST(Names, RoundTrip) {
  for (auto k : kAllSchedulers) EXPECT_EQ(parse_scheduler(scheduler_name(k)), k);
  EXPECT_EQ(parse_scheduler("fdcg"), SchedulerKind::Fdcg);
  EXPECT_EQ(parse_scheduler("StDmA"), SchedulerKind::Stdma);
  EXPECT_FALSE(parse_scheduler("csma").has_value());
}

TEST(AllSchedulers, SingleFlowTakesExactlyXiSlots) {
  const Scenario s = single_flow();
  const auto xi = static_cast<std::size_t>(s.flows[0].xi_slots);
  ASSERT_GT(xi, 1u);
  for (auto k : kAllSchedulers) {
    const ScheduleResult r = run_scheduler(k, s);
    ASSERT_EQ(r.schedule.n_slots(), s.config.n_slots);
    for (std::size_t slot = 0; slot < r.schedule.n_slots(); ++slot)
      EXPECT_EQ(r.schedule.active[slot].size(), slot < xi ? 1u : 0u) << scheduler_name(k) << slot;
    EXPECT_EQ(r.completed_count, 1u);
    EXPECT_EQ(r.progress[0].completion_slot, xi);
    EXPECT_EQ(r.progress[0].slots_used, xi);
  }
  // TDMA and FDCG coincide on a single flow.
  EXPECT_EQ(schedule_tdma(s).schedule.rate_bps, schedule_fdcg(s).schedule.rate_bps);
}

TEST(AllSchedulers, InfeasibleFlowsGiveEmptySchedule) {
  ScenarioConfig c;
  c.n_slots = 10;
  const Scenario s = make_scenario({Point(10, 10), Point(62, 10), Point(20, 80)},
                                   {{0, 1, 3e9}, {1, 2, 3e9}, {2, 0, 3e9}}, c);
  for (const auto& f : s.flows) ASSERT_GT(f.xi_slots, 10);
  for (auto k : kAllSchedulers) {
    const ScheduleResult r = run_scheduler(k, s);
    EXPECT_EQ(r.completed_count, 0u);
    EXPECT_EQ(r.throughput_bps, 0.0);
    for (const auto& a : r.schedule.active) EXPECT_TRUE(a.empty());
    EXPECT_EQ(r.trace.dropped.size(), 3u) << scheduler_name(k);
  }
}

// Two bidirectional pairs far apart plus one unrelated link.
Scenario two_pairs_and_one(std::uint64_t seed) {
  ScenarioConfig c;
  c.rng_seed = seed;
  return make_scenario(
      {Point(10, 10), Point(30, 10), Point(10, 90), Point(30, 90), Point(90, 40), Point(90, 60)},
      {{0, 1, 1e9}, {1, 0, 1e9}, {2, 3, 1e9}, {3, 2, 1e9}, {4, 5, 1e9}}, c);
}

TEST(Fdcg, FirstSlotIsBestSplitOfIndependentSet) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scenario s = two_pairs_and_one(seed);
    const ScheduleResult r = schedule_fdcg(s);
    ASSERT_TRUE(r.trace.mis.has_value());
    std::vector<FlowId> mis = r.trace.mis->selected;
    std::sort(mis.begin(), mis.end());
    ASSERT_EQ(mis.size(), 5u);

    // Every 2-partition of the independent set, scored by its better side.
    double best = -1.0;
    std::vector<FlowId> best_side;
    for (unsigned mask = 0; mask < (1u << mis.size()); ++mask) {
      std::vector<FlowId> a, b;
      for (std::size_t i = 0; i < mis.size(); ++i) (mask >> i & 1u ? a : b).push_back(mis[i]);
      for (const auto* side : {&a, &b}) {
        double u = 0.0;
        for (FlowId f : *side) u += testing::oracle::slot_rate(s, f, *side);
        if (u > best) {
          best = u;
          best_side = *side;
        }
      }
    }
    EXPECT_EQ(r.trace.initial_active, best_side) << "seed " << seed;
    EXPECT_EQ(r.schedule.active[0], best_side);
  }
}

Scenario star(std::size_t leaves, double qos = 1e9) {
  std::vector<Point> pos{Point(50, 50)};
  std::vector<FlowSpec> flows;
  for (std::size_t i = 0; i < leaves; ++i) {
    pos.emplace_back(10.0 + 15.0 * static_cast<double>(i), i % 2 ? 90.0 : 10.0);
    flows.push_back(i % 3 == 2 ? FlowSpec{i + 1, 0, qos + 1e8 * static_cast<double>(i)}
                               : FlowSpec{0, i + 1, qos + 1e8 * static_cast<double>(i)});
  }
  return make_scenario(pos, flows);
}

TEST(Stdma, SharedStationSerializesLikeTdma) {
  const Scenario s = star(5);
  const ScheduleResult stdma = schedule_stdma(s);
  const ScheduleResult tdma = schedule_tdma(s);
  ASSERT_EQ(tdma.completed_count, 5u);
  EXPECT_EQ(stdma.schedule.active, tdma.schedule.active);
  EXPECT_EQ(stdma.schedule.rate_bps, tdma.schedule.rate_bps);
  EXPECT_EQ(stdma.throughput_bps, tdma.throughput_bps);
}

TEST(Stdma, DisjointFlowsRunInParallel) {
  ScenarioConfig c;
  c.channel.rho = 0.0;
  const Scenario s = make_scenario({Point(10, 10), Point(40, 10), Point(10, 80), Point(70, 80)},
                                   {{0, 1, 1e9}, {2, 3, 2.5e9}}, c);
  const ScheduleResult r = schedule_stdma(s);
  ASSERT_EQ(r.completed_count, 2u);
  const auto last = static_cast<std::size_t>(std::max(s.flows[0].xi_slots, s.flows[1].xi_slots));
  EXPECT_EQ(*r.progress[0].completion_slot, static_cast<std::size_t>(s.flows[0].xi_slots));
  EXPECT_EQ(*r.progress[1].completion_slot, static_cast<std::size_t>(s.flows[1].xi_slots));
  EXPECT_TRUE(r.schedule.active[last - 1].size() == 1u);
  EXPECT_TRUE(r.schedule.active[last].empty());
}

TEST(Sfd, EdgelessGraphStartsEveryFlow) {
  std::vector<Point> pos;
  std::vector<FlowSpec> flows;
  for (std::size_t i = 0; i < 4; ++i) {
    pos.emplace_back(10.0 + 25.0 * static_cast<double>(i), 10.0);
    pos.emplace_back(10.0 + 25.0 * static_cast<double>(i), 70.0);
    flows.push_back({2 * i, 2 * i + 1, 1e9});
  }
  const ScheduleResult r = schedule_sfd(make_scenario(pos, flows));
  EXPECT_EQ(r.schedule.active[0], (std::vector<FlowId>{0, 1, 2, 3}));
}

TEST(Sfd, SingletonIndependentSetMatchesFdcg) {
  std::vector<Point> pos{Point(50, 50)};
  std::vector<FlowSpec> flows;
  for (std::size_t i = 0; i < 5; ++i) {
    pos.emplace_back(10.0 + 18.0 * static_cast<double>(i), 5.0);
    flows.push_back({0, i + 1, 1e9 + 2e8 * static_cast<double>(i)});
  }
  const Scenario s = make_scenario(pos, flows);
  const ScheduleResult f = schedule_fdcg(s), g = schedule_sfd(s);
  ASSERT_EQ(f.trace.mis->selected.size(), 1u);
  EXPECT_EQ(f.schedule.active, g.schedule.active);
  EXPECT_EQ(f.schedule.rate_bps, g.schedule.rate_bps);
  EXPECT_EQ(f.completed_count, g.completed_count);
}

TEST(Tdma, CompletionsBoundedByShortestFlow) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    ScenarioConfig c;
    c.rng_seed = seed;
    c.n_slots = 300;
    const Scenario s = generate_scenario(c);
    std::int64_t min_xi = kInfeasibleSlots;
    for (const auto& f : s.flows) min_xi = std::min(min_xi, f.xi_slots);
    const ScheduleResult r = schedule_tdma(s);
    EXPECT_LE(r.completed_count, c.n_slots / static_cast<std::size_t>(min_xi));
    for (const auto& a : r.schedule.active) EXPECT_LE(a.size(), 1u);
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

TEST(AllSchedulers, RandomScenariosObeyScheduleInvariants) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Scenario s = random_scenario(seed);
    const LinkBudget budget(s);
    for (auto k : kAllSchedulers) {
      SCOPED_TRACE(::testing::Message() << "seed " << seed << " " << scheduler_name(k));
      const ScheduleResult r = run_scheduler(k, s);
      EXPECT_TRUE(find_violations(r.schedule, s, DuplexRule::FullDuplex).empty());
      EXPECT_TRUE(find_violations(r.schedule, s, duplex_rule(k)).empty());
      EXPECT_TRUE(find_rate_mismatches(r.schedule, budget, 0.0).empty());

      for (std::size_t slot = 0; slot < r.schedule.n_slots(); ++slot)
        for (FlowId f : r.schedule.active[slot]) {
          const auto& done = r.progress[f].completion_slot;
          EXPECT_TRUE(!done || slot + 1 <= *done) << "flow " << f << " after completion";
        }
      for (FlowId f = 0; f < s.flows.size(); ++f)
        EXPECT_EQ(r.progress[f].completed, r.progress[f].bits_delivered >= s.target_bits(f));

      const RunMetrics m = evaluate(r.schedule, s);
      EXPECT_EQ(m.completed_count, r.completed_count);
      EXPECT_EQ(m.system_throughput_bps, r.throughput_bps);
    }
  }
}

TEST(Fdcg, FirstSlotIsStableSubsetOfIndependentSet) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Scenario s = random_scenario(seed);
    const ScheduleResult r = schedule_fdcg(s);
    if (!r.trace.partition) continue;
    const LinkBudget budget(s);
    const auto& mis = r.trace.mis->selected;
    for (FlowId f : r.trace.initial_active)
      EXPECT_TRUE(std::find(mis.begin(), mis.end(), f) != mis.end());
    EXPECT_EQ(r.trace.initial_active, active_coalition(*r.trace.partition));
    for (FlowId f : mis) EXPECT_FALSE(try_switch(budget, *r.trace.partition, f).accepted);
  }
}

TEST(Fdcg, AdmissionsStrictlyRaiseActiveUtility) {
  std::size_t admissions = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Scenario s = random_scenario(seed);
    const ScheduleResult r = schedule_fdcg(s);
    for (const auto& a : r.trace.admissions) {
      EXPECT_GT(a.utility_after, a.utility_before);
      ASSERT_GE(a.slot, 2u);
      // An admitted flow transmits from the next slot unless the look-ahead
      // test removes it right away.
      const auto& act = r.schedule.active[a.slot - 1];
      const bool transmits = std::find(act.begin(), act.end(), a.flow) != act.end();
      EXPECT_TRUE(transmits || (r.progress[a.flow].removed && r.progress[a.flow].slots_used == 0));
      ++admissions;
    }
  }
  EXPECT_GT(admissions, 0u);
}

TEST(Fdcg, OutperformsSfdOnAverage) {
  double fdcg = 0.0, sfd = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioConfig c;
    c.rng_seed = derive_seed(2019, seed);
    const Scenario s = generate_scenario(c);
    fdcg += schedule_fdcg(s).throughput_bps;
    sfd += schedule_sfd(s).throughput_bps;
  }
  EXPECT_GE(fdcg, sfd);
}

TEST(AllSchedulers, Deterministic) {
  const Scenario s = random_scenario(12);
  for (auto k : kAllSchedulers) {
    const ScheduleResult a = run_scheduler(k, s), b = run_scheduler(k, s);
    EXPECT_EQ(a.schedule.active, b.schedule.active);
    EXPECT_EQ(a.schedule.rate_bps, b.schedule.rate_bps);
  }
}

}  // namespace
}  // namespace fdsched
