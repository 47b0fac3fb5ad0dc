// Command-line configuration file: one JSON document with optional
// "scenario", "schedulers" and "sweep" sections. Units live in key names
// (slot_us, qos_min_bps, ...); see README for the full key list.
#ifndef FDSCHED_CONFIG_HPP
#define FDSCHED_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "fdsched/sweep.hpp"

namespace fdsched {

struct AppConfig {
  ScenarioConfig scenario;
  std::vector<SchedulerKind> schedulers{kAllSchedulers.begin(), kAllSchedulers.end()};
  std::optional<SweepSpec> sweep;
};

/// Throws ConfigError; JSON syntax errors report line and column.
AppConfig parse_app_config(const std::string& text);
AppConfig load_app_config(const std::string& path);

/// Comma-separated scheduler names, e.g. "fdcg,tdma".
std::vector<SchedulerKind> parse_scheduler_list(const std::string& csv);

}  // namespace fdsched

#endif  // FDSCHED_CONFIG_HPP
