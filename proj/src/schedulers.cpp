#include "fdsched/schedulers.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace fdsched {

std::string_view scheduler_name(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::Fdcg: return "FDCG";
    case SchedulerKind::Tdma: return "TDMA";
    case SchedulerKind::Stdma: return "STDMA";
    case SchedulerKind::Sfd: return "SFD";
  }
  return "?";
}

std::optional<SchedulerKind> parse_scheduler(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (SchedulerKind k : kAllSchedulers)
    if (scheduler_name(k) == upper) return k;
  return std::nullopt;
}

namespace {

// Per-run bookkeeping shared by all policies: bit accounting, the
// completion rule and the remaining-slot feasibility test.
class Frame {
 public:
  Frame(const Scenario& s, SchedulerKind kind)
      : scenario_(s), budget_(s), slots_(s.config.n_slots), dt_(s.config.slot_s()) {
    result_.kind = kind;
    result_.schedule = SlotSchedule(s.flows.size(), slots_);
    result_.progress.assign(s.flows.size(), FlowProgress{});
  }

  const LinkBudget& budget() const { return budget_; }
  std::size_t slots() const { return slots_; }
  FlowProgress& progress(FlowId f) { return result_.progress[f]; }
  SchedulerTrace& trace() { return result_.trace; }

  /// Flows with xi <= M in ascending (xi, id) order; the rest are dropped.
  std::vector<FlowId> prescheduled() {
    std::vector<FlowId> keep;
    for (const auto& f : scenario_.flows) {
      if (f.xi_slots <= static_cast<std::int64_t>(slots_)) {
        keep.push_back(f.id);
      } else {
        result_.progress[f.id].removed = true;
        result_.trace.dropped.push_back(f.id);
      }
    }
    sort_by_xi(keep);
    return keep;
  }

  void sort_by_xi(std::vector<FlowId>& flows) const {
    std::stable_sort(flows.begin(), flows.end(), [this](FlowId a, FlowId b) {
      const auto xa = scenario_.flows[a].xi_slots, xb = scenario_.flows[b].xi_slots;
      return xa != xb ? xa < xb : a < b;
    });
  }

  /// Can `f` still reach its target if it earns `rate_now` in slot k and its
  /// interference-free rate in every slot after?
  bool lookahead_ok(FlowId f, double rate_now, std::size_t k) const {
    const double rest = static_cast<double>(slots_ - k);
    const double best = result_.progress[f].bits_delivered + rate_now * dt_ +
                        budget_.isolated_rate_bps(f) * rest * dt_;
    return best >= scenario_.target_bits(f);
  }

  /// Same test for a flow that would first transmit in slot `first_slot`.
  bool can_finish_from(FlowId f, std::size_t first_slot) const {
    if (first_slot > slots_) return false;
    return lookahead_ok(f, budget_.isolated_rate_bps(f), first_slot);
  }

  /// Drops members of `active` (sorted) failing the look-ahead test for slot k.
  bool drop_hopeless(std::vector<FlowId>& active, std::size_t k) {
    if (active.empty()) return false;
    const auto rates = budget_.rates_bps(active);
    std::vector<FlowId> keep;
    for (std::size_t a = 0; a < active.size(); ++a) {
      if (lookahead_ok(active[a], rates[a], k)) {
        keep.push_back(active[a]);
      } else {
        result_.progress[active[a]].removed = true;
      }
    }
    const bool dropped = keep.size() != active.size();
    active = std::move(keep);
    return dropped;
  }

  /// Transmits `active` (sorted) in slot k, then removes completed flows
  /// from it. Returns true if any flow completed.
  bool transmit(std::vector<FlowId>& active, std::size_t k) {
    auto rates = budget_.rates_bps(active);
    bool any = false;
    std::vector<FlowId> keep;
    for (std::size_t a = 0; a < active.size(); ++a) {
      FlowProgress& p = result_.progress[active[a]];
      p.bits_delivered += rates[a] * dt_;
      ++p.slots_used;
      if (p.bits_delivered >= scenario_.target_bits(active[a])) {
        p.completed = true;
        p.completion_slot = k;
        any = true;
      } else {
        keep.push_back(active[a]);
      }
    }
    result_.schedule.active[k - 1] = active;
    result_.schedule.rate_bps[k - 1] = std::move(rates);
    active = std::move(keep);
    return any;
  }

  ScheduleResult finish() {
    double bits = 0.0;
    for (const auto& p : result_.progress) {
      bits += p.bits_delivered;
      if (p.completed) ++result_.completed_count;
    }
    result_.throughput_bps = bits / scenario_.config.frame_s();
    return std::move(result_);
  }

 private:
  const Scenario& scenario_;
  LinkBudget budget_;
  std::size_t slots_;
  double dt_;
  ScheduleResult result_;
};

void insert_sorted(std::vector<FlowId>& v, FlowId f) {
  v.insert(std::upper_bound(v.begin(), v.end(), f), f);
}

bool station_disjoint(const Scenario& s, std::span<const FlowId> active, FlowId f) {
  const Flow& x = s.flows[f];
  for (FlowId a : active) {
    const Flow& y = s.flows[a];
    if (x.tx == y.tx || x.tx == y.rx || x.rx == y.tx || x.rx == y.rx) return false;
  }
  return true;
}

// FDCG and SFD share everything but the slot-1 selection and the admission
// test.
ScheduleResult schedule_full_duplex(const Scenario& s, SchedulerKind kind,
                                    const SchedulerOptions& options) {
  const bool game = kind == SchedulerKind::Fdcg;
  Frame frame(s, kind);
  const LinkBudget& budget = frame.budget();

  const std::vector<FlowId> pre = frame.prescheduled();
  if (pre.empty()) return frame.finish();

  std::vector<Flow> pre_flows;
  for (FlowId f : pre) pre_flows.push_back(s.flows[f]);
  std::vector<std::int64_t> xi(s.flows.size());
  for (const auto& f : s.flows) xi[f.id] = f.xi_slots;
  MisResult mis = min_degree_mis(build_graph(pre_flows), xi);

  std::vector<FlowId> active;
  std::vector<FlowId> waiting = mis.remainder;
  if (game) {
    Rng rng(derive_seed(s.config.rng_seed, kGameStream));
    auto [partition, trace] = run_game(budget, mis.selected, rng, options.on_game_visit);
    active = active_coalition(partition);
    const auto& inactive =
        &active_coalition(partition) == &partition.coalition_a ? partition.coalition_b
                                                               : partition.coalition_a;
    waiting.insert(waiting.end(), inactive.begin(), inactive.end());
    frame.trace().partition = std::move(partition);
    frame.trace().game = trace;
  } else {
    active = mis.selected;
    std::sort(active.begin(), active.end());
  }
  frame.sort_by_xi(waiting);
  frame.trace().mis = std::move(mis);
  frame.trace().initial_active = active;

  for (std::size_t k = 1; k <= frame.slots(); ++k) {
    bool changed = frame.drop_hopeless(active, k);
    changed = frame.transmit(active, k) || changed;
    if (!changed || waiting.empty()) continue;

    std::vector<FlowId> still_waiting;
    for (FlowId j : waiting) {
      if (!frame.can_finish_from(j, k + 1)) {
        frame.progress(j).removed = true;
        continue;
      }
      bool clash = false;
      for (FlowId a : active)
        if (budget.conflict(a, j)) {
          clash = true;
          break;
        }
      if (clash) {
        still_waiting.push_back(j);
        continue;
      }
      std::vector<FlowId> grown = active;
      insert_sorted(grown, j);
      const double before = budget.sum_rate_bps(active);
      const double after = budget.sum_rate_bps(grown);
      if (!game || after > before) {
        active = std::move(grown);
        frame.trace().admissions.push_back(Admission{k + 1, j, before, after});
      } else {
        still_waiting.push_back(j);
      }
    }
    waiting = std::move(still_waiting);
  }
  return frame.finish();
}

}  // namespace

ScheduleResult schedule_fdcg(const Scenario& s, const SchedulerOptions& options) {
  return schedule_full_duplex(s, SchedulerKind::Fdcg, options);
}

ScheduleResult schedule_sfd(const Scenario& s, const SchedulerOptions& options) {
  return schedule_full_duplex(s, SchedulerKind::Sfd, options);
}

ScheduleResult schedule_stdma(const Scenario& s, const SchedulerOptions&) {
  Frame frame(s, SchedulerKind::Stdma);
  std::vector<FlowId> pending = frame.prescheduled();
  std::vector<FlowId> active;

  for (std::size_t k = 1; k <= frame.slots(); ++k) {
    // Admissions and look-ahead drops alternate until the active set settles;
    // each drop is permanent, so this terminates.
    do {
      std::vector<FlowId> still_pending;
      for (FlowId j : pending) {
        if (!frame.can_finish_from(j, k)) {
          frame.progress(j).removed = true;
        } else if (station_disjoint(s, active, j)) {
          insert_sorted(active, j);
          frame.trace().admissions.push_back(Admission{k, j, 0.0, 0.0});
        } else {
          still_pending.push_back(j);
        }
      }
      pending = std::move(still_pending);
    } while (frame.drop_hopeless(active, k));
    if (k == 1) frame.trace().initial_active = active;
    frame.transmit(active, k);
  }
  return frame.finish();
}

ScheduleResult schedule_tdma(const Scenario& s, const SchedulerOptions&) {
  Frame frame(s, SchedulerKind::Tdma);
  const std::vector<FlowId> order = frame.prescheduled();
  std::size_t k = 1;
  for (FlowId f : order) {
    std::vector<FlowId> solo{f};
    if (k == 1) frame.trace().initial_active = solo;
    while (k <= frame.slots() && !solo.empty()) frame.transmit(solo, k++);
    if (k > frame.slots()) break;
  }
  return frame.finish();
}

ScheduleResult run_scheduler(SchedulerKind kind, const Scenario& s, const SchedulerOptions& options) {
  switch (kind) {
    case SchedulerKind::Fdcg: return schedule_fdcg(s, options);
    case SchedulerKind::Sfd: return schedule_sfd(s, options);
    case SchedulerKind::Stdma: return schedule_stdma(s, options);
    case SchedulerKind::Tdma: return schedule_tdma(s, options);
  }
  return {};
}

}  // namespace fdsched
