// Slot schedules, per-flow progress, and the station-constraint validator.
#ifndef FDSCHED_SCHEDULE_HPP
#define FDSCHED_SCHEDULE_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdsched/link_budget.hpp"
#include "fdsched/network.hpp"

namespace fdsched {

/// Active flows per slot (slot k stored at index k-1, ids ascending) and the
/// rate each active flow achieved in that slot.
struct SlotSchedule {
  std::size_t n_flows = 0;
  std::vector<std::vector<FlowId>> active;
  std::vector<std::vector<double>> rate_bps;

  SlotSchedule() = default;
  SlotSchedule(std::size_t flows, std::size_t slots)
      : n_flows(flows), active(slots), rate_bps(slots) {}

  std::size_t n_slots() const { return active.size(); }
};

struct FlowProgress {
  double bits_delivered = 0.0;
  bool completed = false;
  std::optional<std::size_t> completion_slot;  ///< 1-based
  bool removed = false;                        ///< dropped as unservable
  std::size_t slots_used = 0;
};

enum class DuplexRule {
  FullDuplex,  ///< per station: at most one outgoing and one incoming flow
  HalfDuplex,  ///< per station: at most one flow
};

struct Violation {
  std::size_t slot = 0;  ///< 1-based
  std::optional<StationId> station;
  std::string message;
};

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Violation> find_violations(const SlotSchedule& schedule, const Scenario& scenario,
                                       DuplexRule rule = DuplexRule::FullDuplex);

/// Throws ScheduleError describing the first violation, if any.
void require_valid(const SlotSchedule& schedule, const Scenario& scenario,
                   DuplexRule rule = DuplexRule::FullDuplex);

/// Recorded rates that differ from a recomputation over the recorded active
/// set by more than `rel_tol` (0 demands bit equality).
std::vector<Violation> find_rate_mismatches(const SlotSchedule& schedule, const LinkBudget& budget,
                                            double rel_tol = 0.0);

/// CSV with header `slot,flow_id,rate_bps`; slots are 1-based.
void write_schedule_csv(std::ostream& out, const SlotSchedule& schedule);

/// Parses the CSV written above. Throws ScheduleError with a line number on
/// malformed input or out-of-range slots/flows.
SlotSchedule read_schedule_csv(std::istream& in, std::size_t n_flows, std::size_t n_slots);

}  // namespace fdsched

#endif  // FDSCHED_SCHEDULE_HPP
