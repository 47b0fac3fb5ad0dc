// Frame evaluation and the tiny-instance exhaustive optimum.
#ifndef FDSCHED_SIM_HPP
#define FDSCHED_SIM_HPP

#include <cstddef>
#include <vector>

#include "fdsched/schedule.hpp"

namespace fdsched {

struct RunMetrics {
  std::size_t completed_count = 0;
  double system_throughput_bps = 0.0;  ///< sum over flows of delivered bits / (T_s + M dt)
  std::vector<FlowProgress> per_flow;
};

/// Replays `schedule` against the scenario: validates the full-duplex
/// station rules (throws ScheduleError naming slot and station), recomputes
/// every slot rate from the active sets, and derives completions and
/// throughput. Recorded rates in the schedule are ignored.
RunMetrics evaluate(const SlotSchedule& schedule, const Scenario& scenario);

inline constexpr std::size_t kBruteForceMaxCells = 16;

/// Largest number of completed flows over every slot assignment that obeys
/// the station rules. Throws std::invalid_argument when M * F exceeds
/// kBruteForceMaxCells.
std::size_t brute_force_p1(const Scenario& scenario);

}  // namespace fdsched

#endif  // FDSCHED_SIM_HPP
