// Seeded Monte Carlo sweeps over one scenario parameter.
//
// Replicate r of a sweep uses scenario seed derive_seed(master_seed, r) at
// every parameter value, and every scheduler at a (value, replicate) point
// sees the same scenario, so comparisons are paired both across schedulers
// and across the swept axis.
#ifndef FDSCHED_SWEEP_HPP
#define FDSCHED_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fdsched/schedulers.hpp"

namespace fdsched {

enum class SweepParameter { NFlows, NSlots, BetaMagnitude, Rho, UniformQos };

std::string_view parameter_name(SweepParameter p);
std::optional<SweepParameter> parse_parameter(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::NFlows;
  /// n_flows, n_slots: counts. beta_magnitude: exponent x, beta ~ U[2, 4] * 10^x.
  /// rho: MUI factor. uniform_qos: every flow's demand, in Gbps.
  std::vector<double> values;
  std::size_t replicates = 10;
  std::uint64_t master_seed = 1;
  std::vector<SchedulerKind> schedulers{kAllSchedulers.begin(), kAllSchedulers.end()};

  void validate() const;
};

/// Base configuration with one parameter overridden.
ScenarioConfig apply_sweep_value(ScenarioConfig base, SweepParameter parameter, double value);

struct SweepRow {
  std::string sweep_param;
  double param_value = 0.0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  SchedulerKind scheduler = SchedulerKind::Fdcg;
  std::size_t completed_flows = 0;
  std::size_t total_flows = 0;
  double throughput_gbps = 0.0;
  double runtime_ms = 0.0;
  bool failed = false;
  std::string error;
};

struct SweepOptions {
  std::size_t jobs = 0;        ///< worker threads; 0 = hardware concurrency
  bool record_timing = false;  ///< off: runtime_ms is written as 0 so CSVs stay reproducible
};

/// Rows ordered by (value index, replicate, scheduler index in the spec).
/// A failing scheduler or a bookkeeping mismatch between a scheduler and
/// evaluate() flags that row and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ScenarioConfig& base,
                                const SweepOptions& options = {});

struct SweepPoint {
  double param_value = 0.0;
  SchedulerKind scheduler = SchedulerKind::Fdcg;
  std::size_t replicates = 0;  ///< rows that did not fail
  std::size_t failures = 0;
  double mean_completed = 0.0;
  double mean_throughput_gbps = 0.0;
};

/// Per (value, scheduler) means over non-failed replicates, in spec order.
std::vector<SweepPoint> summarize(const SweepSpec& spec, const std::vector<SweepRow>& rows);

inline constexpr std::string_view kSweepCsvHeader =
    "sweep_param,param_value,replicate,seed,scheduler,completed_flows,total_flows,throughput_gbps,"
    "runtime_ms";

/// Failed rows carry completed_flows = -1 and throughput_gbps = nan.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

nlohmann::json sweep_summary_json(const SweepSpec& spec, const ScenarioConfig& base,
                                  const std::vector<SweepPoint>& points);

}  // namespace fdsched

#endif  // FDSCHED_SWEEP_HPP
