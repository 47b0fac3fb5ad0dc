#include "fdsched/config.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace fdsched {

using nlohmann::json;

namespace {

std::vector<SchedulerKind> schedulers_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("key 'schedulers' must be an array of names");
  std::vector<SchedulerKind> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw ConfigError("key 'schedulers': entries must be strings");
    const auto k = parse_scheduler(item.get<std::string>());
    if (!k)
      throw ConfigError(fmt::format("unknown scheduler '{}' (expected FDCG, TDMA, STDMA or SFD)",
                                    item.get<std::string>()));
    out.push_back(*k);
  }
  if (out.empty()) throw ConfigError("key 'schedulers' is empty");
  return out;
}

SweepSpec sweep_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("key 'sweep' must be an object");
  SweepSpec spec;
  bool have_param = false;
  for (const auto& [key, v] : j.items()) {
    if (key == "parameter") {
      const auto p = v.is_string() ? parse_parameter(v.get<std::string>()) : std::nullopt;
      if (!p)
        throw ConfigError(fmt::format(
            "sweep.parameter must be one of n_flows, n_slots, beta_magnitude, rho, uniform_qos; got {}",
            v.dump()));
      spec.parameter = *p;
      have_param = true;
    } else if (key == "values") {
      if (!v.is_array()) throw ConfigError("sweep.values must be an array of numbers");
      spec.values.clear();
      for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError("sweep.values must be an array of numbers");
        spec.values.push_back(x.get<double>());
      }
    } else if (key == "replicates") {
      if (!v.is_number_unsigned()) throw ConfigError("sweep.replicates must be a positive integer");
      spec.replicates = v.get<std::size_t>();
    } else if (key == "master_seed") {
      if (!v.is_number_unsigned()) throw ConfigError("sweep.master_seed must be a non-negative integer");
      spec.master_seed = v.get<std::uint64_t>();
    } else {
      throw ConfigError(fmt::format("unknown key 'sweep.{}'", key));
    }
  }
  if (!have_param) throw ConfigError("sweep.parameter is required");
  spec.validate();
  return spec;
}

}  // namespace

AppConfig parse_app_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  AppConfig cfg;
  for (const auto& [key, v] : j.items()) {
    if (key == "scenario") cfg.scenario = config_from_json(v);
    else if (key == "schedulers") cfg.schedulers = schedulers_from_json(v);
    else if (key == "sweep") cfg.sweep = sweep_from_json(v);
    else throw ConfigError(fmt::format("unknown top-level key '{}'", key));
  }
  if (cfg.sweep) cfg.sweep->schedulers = cfg.schedulers;
  cfg.scenario.validate();
  return cfg;
}

AppConfig load_app_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_app_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

std::vector<SchedulerKind> parse_scheduler_list(const std::string& csv) {
  std::vector<SchedulerKind> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto k = parse_scheduler(item);
    if (!k) throw ConfigError(fmt::format("unknown scheduler '{}' (expected FDCG, TDMA, STDMA or SFD)", item));
    out.push_back(*k);
  }
  if (out.empty()) throw ConfigError("no schedulers selected");
  return out;
}

}  // namespace fdsched
