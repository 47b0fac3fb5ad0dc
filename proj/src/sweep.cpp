#include "fdsched/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fdsched/sim.hpp"

namespace fdsched {

namespace {

constexpr std::array<std::pair<SweepParameter, std::string_view>, 5> kParameterNames{{
    {SweepParameter::NFlows, "n_flows"},
    {SweepParameter::NSlots, "n_slots"},
    {SweepParameter::BetaMagnitude, "beta_magnitude"},
    {SweepParameter::Rho, "rho"},
    {SweepParameter::UniformQos, "uniform_qos"},
}};

std::size_t as_count(double v, std::string_view what) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e9)
    throw ConfigError(fmt::format("{} sweep value must be a positive integer, got {}", what, v));
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string_view parameter_name(SweepParameter p) {
  for (const auto& [k, name] : kParameterNames)
    if (k == p) return name;
  return "?";
}

std::optional<SweepParameter> parse_parameter(std::string_view name) {
  for (const auto& [k, n] : kParameterNames)
    if (n == name) return k;
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep: value list is empty");
  if (replicates < 1) throw ConfigError("sweep: replicates must be >= 1");
  if (schedulers.empty()) throw ConfigError("sweep: no schedulers selected");
  for (double v : values)
    if (!std::isfinite(v)) throw ConfigError("sweep: non-finite value");
}

ScenarioConfig apply_sweep_value(ScenarioConfig c, SweepParameter parameter, double value) {
  switch (parameter) {
    case SweepParameter::NFlows:
      c.n_flows = as_count(value, "n_flows");
      break;
    case SweepParameter::NSlots:
      c.n_slots = as_count(value, "n_slots");
      break;
    case SweepParameter::BetaMagnitude: {
      const double scale = std::pow(10.0, value);
      c.beta = Range{2.0 * scale, 4.0 * scale};
      break;
    }
    case SweepParameter::Rho:
      c.channel.rho = value;
      break;
    case SweepParameter::UniformQos:
      c.qos_bps = Range{value * 1e9, value * 1e9};
      break;
  }
  return c;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ScenarioConfig& base,
                                const SweepOptions& options) {
  spec.validate();
  const std::size_t n_sched = spec.schedulers.size();
  const std::size_t n_jobs = spec.values.size() * spec.replicates;
  std::vector<SweepRow> rows(n_jobs * n_sched);

  auto run_job = [&](std::size_t job) {
    const std::size_t point = job / spec.replicates;
    const std::size_t rep = job % spec.replicates;
    const double value = spec.values[point];
    const std::uint64_t seed = derive_seed(spec.master_seed, rep);

    SweepRow proto;
    proto.sweep_param = std::string(parameter_name(spec.parameter));
    proto.param_value = value;
    proto.replicate = rep;
    proto.seed = seed;

    std::optional<Scenario> scenario;
    std::string gen_error;
    try {
      ScenarioConfig cfg = apply_sweep_value(base, spec.parameter, value);
      cfg.rng_seed = seed;
      proto.total_flows = cfg.n_flows;
      scenario = generate_scenario(cfg);
    } catch (const std::exception& e) {
      gen_error = e.what();
    }

    for (std::size_t s = 0; s < n_sched; ++s) {
      SweepRow row = proto;
      row.scheduler = spec.schedulers[s];
      if (!scenario) {
        row.failed = true;
        row.error = gen_error;
      } else {
        try {
          const auto t0 = std::chrono::steady_clock::now();
          const ScheduleResult result = run_scheduler(row.scheduler, *scenario);
          const auto t1 = std::chrono::steady_clock::now();
          const RunMetrics metrics = evaluate(result.schedule, *scenario);
          if (metrics.completed_count != result.completed_count ||
              metrics.system_throughput_bps != result.throughput_bps)
            throw std::logic_error(fmt::format(
                "{} bookkeeping disagrees with evaluate(): {} vs {} completed, {} vs {} bps",
                scheduler_name(row.scheduler), result.completed_count, metrics.completed_count,
                result.throughput_bps, metrics.system_throughput_bps));
          row.completed_flows = metrics.completed_count;
          row.throughput_gbps = metrics.system_throughput_bps / 1e9;
          if (options.record_timing)
            row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        } catch (const std::exception& e) {
          row.failed = true;
          row.error = e.what();
        }
      }
      rows[job * n_sched + s] = std::move(row);
    }
  };

  std::size_t workers = options.jobs == 0 ? std::thread::hardware_concurrency() : options.jobs;
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, n_jobs));
  if (workers == 1) {
    for (std::size_t j = 0; j < n_jobs; ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < n_jobs; j = next++) run_job(j);
      });
  }
  return rows;
}

std::vector<SweepPoint> summarize(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::vector<SweepPoint> out;
  for (double value : spec.values)
    for (SchedulerKind k : spec.schedulers) {
      SweepPoint p;
      p.param_value = value;
      p.scheduler = k;
      double completed = 0.0, throughput = 0.0;
      for (const auto& r : rows) {
        if (r.param_value != value || r.scheduler != k) continue;
        if (r.failed) {
          ++p.failures;
          continue;
        }
        ++p.replicates;
        completed += static_cast<double>(r.completed_flows);
        throughput += r.throughput_gbps;
      }
      if (p.replicates > 0) {
        p.mean_completed = completed / static_cast<double>(p.replicates);
        p.mean_throughput_gbps = throughput / static_cast<double>(p.replicates);
      }
      out.push_back(p);
    }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    if (r.failed) {
      out << fmt::format("{},{},{},{},{},-1,{},nan,{:.3f}\n", r.sweep_param, r.param_value,
                         r.replicate, r.seed, scheduler_name(r.scheduler), r.total_flows,
                         r.runtime_ms);
    } else {
      out << fmt::format("{},{},{},{},{},{},{},{},{:.3f}\n", r.sweep_param, r.param_value,
                         r.replicate, r.seed, scheduler_name(r.scheduler), r.completed_flows,
                         r.total_flows, r.throughput_gbps, r.runtime_ms);
    }
  }
}

nlohmann::json sweep_summary_json(const SweepSpec& spec, const ScenarioConfig& base,
                                  const std::vector<SweepPoint>& points) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points)
    pts.push_back({{"param_value", p.param_value},
                   {"scheduler", scheduler_name(p.scheduler)},
                   {"replicates", p.replicates},
                   {"failures", p.failures},
                   {"mean_completed_flows", p.mean_completed},
                   {"mean_throughput_gbps", p.mean_throughput_gbps}});
  nlohmann::json scheds = nlohmann::json::array();
  for (auto k : spec.schedulers) scheds.push_back(scheduler_name(k));
  return {{"sweep_param", parameter_name(spec.parameter)},
          {"values", spec.values},
          {"replicates", spec.replicates},
          {"master_seed", spec.master_seed},
          {"schedulers", scheds},
          {"base_config", config_to_json(base)},
          {"points", pts}};
}

}  // namespace fdsched
