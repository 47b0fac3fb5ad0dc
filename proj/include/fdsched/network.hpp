// Backhaul scenario: base stations, directed flows and the frame layout.
#ifndef FDSCHED_NETWORK_HPP
#define FDSCHED_NETWORK_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fdsched/channel.hpp"

namespace fdsched {

using StationId = std::size_t;
using FlowId = std::size_t;

/// Sentinel slot count for a flow whose interference-free rate is zero.
inline constexpr std::int64_t kInfeasibleSlots = std::numeric_limits<std::int64_t>::max();

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Station {
  StationId id = 0;
  Point pos = Point::Zero();
  double beta = 0.0;  ///< residual self-interference level, linear multiple of N0*W
};

struct Flow {
  FlowId id = 0;
  StationId tx = 0;
  StationId rx = 0;
  double qos_bps = 0.0;
  std::int64_t xi_slots = 0;  ///< slots needed at the interference-free rate
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct ScenarioConfig {
  std::size_t n_stations = 10;
  double area_m = 100.0;
  std::size_t n_flows = 30;
  std::size_t n_slots = 1000;
  double slot_us = 18.0;
  double sched_us = 850.0;
  Range qos_bps{1e9, 3e9};
  Range beta{2.0, 4.0};
  ChannelParams channel;
  std::uint64_t rng_seed = 1;
  double d_min_m = 1.0;

  void validate() const;

  double slot_s() const { return slot_us * 1e-6; }
  /// T_s + M * dt: the denominator that turns delivered bits into throughput.
  double frame_s() const { return (sched_us + static_cast<double>(n_slots) * slot_us) * 1e-6; }
};

struct Scenario {
  ScenarioConfig config;
  std::vector<Station> stations;
  std::vector<Flow> flows;

  /// Bits flow `f` must deliver in one frame to count as completed.
  double target_bits(FlowId f) const { return flows[f].qos_bps * config.frame_s(); }
};

/// Seeded random placement of stations and flows. Throws ConfigError when
/// stations cannot be placed or F exceeds N(N-1).
Scenario generate_scenario(const ScenarioConfig& config);

/// ceil(q * (T_s + M dt) / (R * dt)) for the interference-free rate R.
std::int64_t required_slots(double qos_bps, double isolated_rate_bps, const ScenarioConfig& config);

/// Fills every Flow::xi_slots from the current channel parameters.
void assign_required_slots(Scenario& scenario);

/// Checks every structural invariant; throws ConfigError naming the first
/// offending station or flow.
void validate_scenario(const Scenario& scenario);

nlohmann::json config_to_json(const ScenarioConfig& config);
/// Strict: unknown keys and wrong types are rejected. Missing keys keep defaults.
ScenarioConfig config_from_json(const nlohmann::json& j, ScenarioConfig base = {});

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& j);

void save_scenario(const Scenario& scenario, std::ostream& out);
Scenario load_scenario(std::istream& in);

}  // namespace fdsched

#endif  // FDSCHED_NETWORK_HPP
