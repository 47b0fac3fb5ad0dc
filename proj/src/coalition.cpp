#include "fdsched/coalition.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include <fmt/format.h>

namespace fdsched {

double coalition_utility(const LinkBudget& budget, std::span<const FlowId> flows) {
  if (!budget.conflict_free(flows))
    throw std::logic_error("coalition_utility: coalition contains conflicting flows");
  return budget.sum_rate_bps(flows);
}

Partition make_partition(const LinkBudget& budget, std::vector<FlowId> a, std::vector<FlowId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Partition p;
  p.utility_a = coalition_utility(budget, a);
  p.utility_b = coalition_utility(budget, b);
  p.coalition_a = std::move(a);
  p.coalition_b = std::move(b);
  return p;
}

SwitchOutcome try_switch(const LinkBudget& budget, const Partition& partition, FlowId player) {
  const bool in_a = std::binary_search(partition.coalition_a.begin(), partition.coalition_a.end(),
                                       player);
  const bool in_b = std::binary_search(partition.coalition_b.begin(), partition.coalition_b.end(),
                                       player);
  if (in_a == in_b)
    throw std::logic_error(fmt::format("try_switch: flow {} is not a player of this partition", player));

  const auto& from = in_a ? partition.coalition_a : partition.coalition_b;
  const auto& to = in_a ? partition.coalition_b : partition.coalition_a;

  std::vector<FlowId> from_after;
  from_after.reserve(from.size());
  std::copy_if(from.begin(), from.end(), std::back_inserter(from_after),
               [player](FlowId f) { return f != player; });
  std::vector<FlowId> to_after(to);
  to_after.insert(std::upper_bound(to_after.begin(), to_after.end(), player), player);

  const double from_utility = coalition_utility(budget, from_after);
  const double to_utility = coalition_utility(budget, to_after);

  SwitchOutcome out;
  out.accepted = std::max(from_utility, to_utility) > partition.max_utility();
  if (!out.accepted) {
    out.partition = partition;
    return out;
  }
  if (in_a) {
    out.partition = Partition{std::move(from_after), std::move(to_after), from_utility, to_utility};
  } else {
    out.partition = Partition{std::move(to_after), std::move(from_after), to_utility, from_utility};
  }
  return out;
}

std::pair<Partition, GameTrace> run_game(const LinkBudget& budget, std::span<const FlowId> players,
                                         Rng& rng,
                                         const std::function<void(const GameVisit&)>& on_visit) {
  if (players.empty()) throw std::invalid_argument("run_game: no players");
  std::vector<FlowId> order(players.begin(), players.end());
  std::sort(order.begin(), order.end());

  std::vector<FlowId> a, b;
  for (FlowId f : order) (rng.coin() ? a : b).push_back(f);
  Partition partition = make_partition(budget, std::move(a), std::move(b));

  GameTrace trace;
  std::size_t rejected_in_a_row = 0;
  for (std::size_t cursor = 0; rejected_in_a_row < order.size(); cursor = (cursor + 1) % order.size()) {
    if (trace.visited_states >= kMaxGameVisits)
      throw std::runtime_error(fmt::format("run_game: no convergence after {} visits with {} players",
                                           kMaxGameVisits, order.size()));
    ++trace.visited_states;
    auto outcome = try_switch(budget, partition, order[cursor]);
    if (outcome.accepted) {
      partition = std::move(outcome.partition);
      ++trace.switch_count;
      rejected_in_a_row = 0;
    } else {
      ++rejected_in_a_row;
    }
    if (on_visit)
      on_visit(GameVisit{trace.visited_states, order[cursor], outcome.accepted, partition.utility_a,
                         partition.utility_b});
  }
  trace.stable = true;
  return {std::move(partition), trace};
}

const std::vector<FlowId>& active_coalition(const Partition& p) {
  return p.utility_b > p.utility_a ? p.coalition_b : p.coalition_a;
}

}  // namespace fdsched
