// Two-coalition hedonic game over mutually non-conflicting flows.
//
// The utility of a coalition is the sum of its members' rates when they all
// transmit together. A player switches sides when doing so strictly raises
// the larger of the two utilities; play stops once a full cycle over the
// players produces no switch.
#ifndef FDSCHED_COALITION_HPP
#define FDSCHED_COALITION_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fdsched/link_budget.hpp"
#include "fdsched/rng.hpp"

namespace fdsched {

/// Members of each side are kept sorted by flow id.
struct Partition {
  std::vector<FlowId> coalition_a;
  std::vector<FlowId> coalition_b;
  double utility_a = 0.0;
  double utility_b = 0.0;

  double max_utility() const { return std::max(utility_a, utility_b); }
};

struct GameTrace {
  std::size_t switch_count = 0;
  std::size_t visited_states = 0;
  bool stable = false;
};

struct GameVisit {
  std::size_t visit = 0;
  FlowId player = 0;
  bool accepted = false;
  double utility_a = 0.0;  ///< after the visit
  double utility_b = 0.0;
};

struct SwitchOutcome {
  bool accepted = false;
  Partition partition;
};

inline constexpr std::size_t kMaxGameVisits = 1'000'000;

/// Sum of member rates. Throws std::logic_error if two members conflict.
double coalition_utility(const LinkBudget& budget, std::span<const FlowId> flows);

Partition make_partition(const LinkBudget& budget, std::vector<FlowId> a, std::vector<FlowId> b);

/// Moves `player` to the other coalition iff
///   max{R(Fc \ {i}), R(Fc' U {i})} > max{R(Fc), R(Fc')}.
SwitchOutcome try_switch(const LinkBudget& budget, const Partition& partition, FlowId player);

/// Random initial split (one fair coin per player, in ascending id order),
/// then cyclic ascending-id visits until |players| consecutive rejections.
/// Throws std::runtime_error after kMaxGameVisits visits.
std::pair<Partition, GameTrace> run_game(const LinkBudget& budget, std::span<const FlowId> players,
                                         Rng& rng,
                                         const std::function<void(const GameVisit&)>& on_visit = {});

/// The coalition with the larger utility; coalition_a on a tie.
const std::vector<FlowId>& active_coalition(const Partition& partition);

}  // namespace fdsched

#endif  // FDSCHED_COALITION_HPP
