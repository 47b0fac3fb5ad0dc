// Slot-allocation policies.
//
//   FDCG   min-degree independent set, coalition game for slot 1, then
//          sum-rate-improving admissions as flows finish
//   SFD    same pipeline without the game and without the sum-rate test
//   STDMA  half-duplex greedy: station-disjoint flows in ascending-xi order
//   TDMA   one flow at a time in ascending-xi order
//
// All four are deterministic functions of the scenario; FDCG draws its
// initial coalition split from a stream derived from the scenario seed.
#ifndef FDSCHED_SCHEDULERS_HPP
#define FDSCHED_SCHEDULERS_HPP

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "fdsched/coalition.hpp"
#include "fdsched/contention.hpp"
#include "fdsched/schedule.hpp"

namespace fdsched {

enum class SchedulerKind { Fdcg, Tdma, Stdma, Sfd };

inline constexpr std::array kAllSchedulers{SchedulerKind::Fdcg, SchedulerKind::Tdma,
                                           SchedulerKind::Stdma, SchedulerKind::Sfd};

std::string_view scheduler_name(SchedulerKind kind);
/// Case-insensitive.
std::optional<SchedulerKind> parse_scheduler(std::string_view name);

/// Stream index under the scenario seed that feeds the coalition split.
inline constexpr std::uint64_t kGameStream = 0x46444347;  // "FDCG"

struct Admission {
  std::size_t slot = 0;  ///< first slot the flow transmits in
  FlowId flow = 0;
  double utility_before = 0.0;
  double utility_after = 0.0;
};

struct SchedulerTrace {
  std::vector<FlowId> dropped;  ///< xi > M, never considered
  std::optional<MisResult> mis;
  std::optional<Partition> partition;
  std::optional<GameTrace> game;
  std::vector<FlowId> initial_active;
  std::vector<Admission> admissions;
};

struct ScheduleResult {
  SchedulerKind kind = SchedulerKind::Fdcg;
  SlotSchedule schedule;
  std::vector<FlowProgress> progress;
  std::size_t completed_count = 0;
  double throughput_bps = 0.0;
  SchedulerTrace trace;
};

struct SchedulerOptions {
  std::function<void(const GameVisit&)> on_game_visit;
};

ScheduleResult schedule_fdcg(const Scenario& scenario, const SchedulerOptions& options = {});
ScheduleResult schedule_sfd(const Scenario& scenario, const SchedulerOptions& options = {});
ScheduleResult schedule_stdma(const Scenario& scenario, const SchedulerOptions& options = {});
ScheduleResult schedule_tdma(const Scenario& scenario, const SchedulerOptions& options = {});

ScheduleResult run_scheduler(SchedulerKind kind, const Scenario& scenario,
                             const SchedulerOptions& options = {});

/// Duplex rule each scheduler's output must satisfy.
inline DuplexRule duplex_rule(SchedulerKind kind) {
  return kind == SchedulerKind::Fdcg || kind == SchedulerKind::Sfd ? DuplexRule::FullDuplex
                                                                   : DuplexRule::HalfDuplex;
}

}  // namespace fdsched

#endif  // FDSCHED_SCHEDULERS_HPP
