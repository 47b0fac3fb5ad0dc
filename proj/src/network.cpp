#include "fdsched/network.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fdsched/link_budget.hpp"
#include "fdsched/rng.hpp"

namespace fdsched {

using nlohmann::json;

void ScenarioConfig::validate() const {
  if (n_stations < 2) throw ConfigError("n_stations must be >= 2");
  if (!(area_m > 0.0)) throw ConfigError("area_m must be > 0");
  if (n_flows < 1) throw ConfigError("n_flows must be >= 1");
  if (n_slots < 1) throw ConfigError("n_slots must be >= 1");
  if (!(slot_us > 0.0)) throw ConfigError("slot_us must be > 0");
  if (!(sched_us > 0.0)) throw ConfigError("sched_us must be > 0");
  if (!(qos_bps.lo > 0.0) || !(qos_bps.lo <= qos_bps.hi))
    throw ConfigError("qos range must satisfy 0 < qos_min_bps <= qos_max_bps");
  if (!(beta.lo >= 0.0) || !(beta.lo <= beta.hi))
    throw ConfigError("beta range must satisfy 0 <= beta_min <= beta_max");
  if (!(d_min_m > 0.0)) throw ConfigError("d_min_m must be > 0");
  if (n_flows > n_stations * (n_stations - 1))
    throw ConfigError(fmt::format("n_flows = {} exceeds N(N-1) = {} distinct ordered pairs",
                                  n_flows, n_stations * (n_stations - 1)));
  try {
    channel.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Scenario generate_scenario(const ScenarioConfig& config) {
  config.validate();
  constexpr int kMaxPlacementAttempts = 10000;

  Scenario s;
  s.config = config;
  Rng rng(config.rng_seed);

  int attempts = 0;
  for (StationId i = 0; i < config.n_stations; ++i) {
    for (;;) {
      if (++attempts > kMaxPlacementAttempts)
        throw ConfigError(fmt::format(
            "could not place {} stations with d_min_m = {} in a {} m square after {} attempts",
            config.n_stations, config.d_min_m, config.area_m, kMaxPlacementAttempts));
      const double x = rng.uniform(0.0, config.area_m);
      const double y = rng.uniform(0.0, config.area_m);
      const Point p(x, y);
      bool ok = true;
      for (const auto& other : s.stations)
        if ((other.pos - p).norm() < config.d_min_m) {
          ok = false;
          break;
        }
      if (ok) {
        s.stations.push_back(Station{i, p, 0.0});
        break;
      }
    }
  }
  for (auto& st : s.stations) st.beta = rng.uniform(config.beta.lo, config.beta.hi);

  std::set<std::pair<StationId, StationId>> used;
  const auto n = static_cast<std::uint64_t>(config.n_stations);
  for (FlowId f = 0; f < config.n_flows; ++f) {
    StationId tx, rx;
    do {
      tx = rng.below(n);
      rx = rng.below(n - 1);
      if (rx >= tx) ++rx;
    } while (used.count({tx, rx}) != 0);
    used.insert({tx, rx});
    const double q = rng.uniform(config.qos_bps.lo, config.qos_bps.hi);
    s.flows.push_back(Flow{f, tx, rx, q, 0});
  }

  assign_required_slots(s);
  return s;
}

std::int64_t required_slots(double qos_bps, double isolated_rate_bps, const ScenarioConfig& config) {
  if (!(isolated_rate_bps > 0.0)) return kInfeasibleSlots;
  const double slots = qos_bps * config.frame_s() / (isolated_rate_bps * config.slot_s());
  return static_cast<std::int64_t>(std::ceil(slots));
}

void assign_required_slots(Scenario& scenario) {
  for (auto& f : scenario.flows)
    f.xi_slots = required_slots(f.qos_bps, isolated_rate_bps(scenario, f.id), scenario.config);
}

void validate_scenario(const Scenario& scenario) {
  const auto& c = scenario.config;
  c.validate();
  if (scenario.stations.size() != c.n_stations)
    throw ConfigError(fmt::format("scenario has {} stations but config says {}",
                                  scenario.stations.size(), c.n_stations));
  if (scenario.flows.size() != c.n_flows)
    throw ConfigError(fmt::format("scenario has {} flows but config says {}",
                                  scenario.flows.size(), c.n_flows));
  for (std::size_t i = 0; i < scenario.stations.size(); ++i) {
    const auto& st = scenario.stations[i];
    if (st.id != i) throw ConfigError(fmt::format("station at index {} has id {}", i, st.id));
    if (!(st.pos.x() >= 0.0 && st.pos.x() <= c.area_m && st.pos.y() >= 0.0 &&
          st.pos.y() <= c.area_m))
      throw ConfigError(fmt::format("station {} lies outside the {} m square", i, c.area_m));
    if (!(st.beta >= 0.0)) throw ConfigError(fmt::format("station {} has negative beta", i));
    for (std::size_t j = 0; j < i; ++j)
      if ((scenario.stations[j].pos - st.pos).norm() < c.d_min_m)
        throw ConfigError(fmt::format("stations {} and {} are closer than d_min_m", j, i));
  }
  std::set<std::pair<StationId, StationId>> used;
  for (std::size_t i = 0; i < scenario.flows.size(); ++i) {
    const auto& f = scenario.flows[i];
    if (f.id != i) throw ConfigError(fmt::format("flow at index {} has id {}", i, f.id));
    if (f.tx >= c.n_stations || f.rx >= c.n_stations)
      throw ConfigError(fmt::format("flow {} references a missing station", i));
    if (f.tx == f.rx) throw ConfigError(fmt::format("flow {} has tx == rx", i));
    if (!(f.qos_bps > 0.0)) throw ConfigError(fmt::format("flow {} has qos_bps <= 0", i));
    if (!used.insert({f.tx, f.rx}).second)
      throw ConfigError(fmt::format("flow {} duplicates ordered pair ({}, {})", i, f.tx, f.rx));
  }
}

// ---------------------------------------------------------------------------
// JSON

json config_to_json(const ScenarioConfig& c) {
  return json{
      {"n_stations", c.n_stations},
      {"area_m", c.area_m},
      {"n_flows", c.n_flows},
      {"n_slots", c.n_slots},
      {"slot_us", c.slot_us},
      {"sched_us", c.sched_us},
      {"qos_min_bps", c.qos_bps.lo},
      {"qos_max_bps", c.qos_bps.hi},
      {"beta_min", c.beta.lo},
      {"beta_max", c.beta.hi},
      {"d_min_m", c.d_min_m},
      {"rng_seed", c.rng_seed},
      {"channel",
       {{"pt_mw", c.channel.pt_mw},
        {"w_hz", c.channel.w_hz},
        {"n0_dbm_per_mhz", c.channel.n0_dbm_per_mhz},
        {"eta", c.channel.eta},
        {"path_loss_exp", c.channel.path_loss_exp},
        {"k_factor", c.channel.k_factor},
        {"rho", c.channel.rho},
        {"theta_3db_deg", c.channel.antenna.theta_3db_deg}}},
  };
}

namespace {

template <typename T>
void read_into(const json& j, const std::string& key, T& out) {
  try {
    out = j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("key '{}': expected a {} value, got {}", key,
                                  std::is_integral_v<T> ? "integer" : "numeric", j.dump()));
  }
  if constexpr (std::is_unsigned_v<T>) {
    if (!j.is_number_unsigned())
      throw ConfigError(fmt::format("key '{}': expected a non-negative integer", key));
  }
}

void read_channel(const json& j, ChannelParams& ch) {
  if (!j.is_object()) throw ConfigError("key 'channel' must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "pt_mw") read_into(v, key, ch.pt_mw);
    else if (key == "w_hz") read_into(v, key, ch.w_hz);
    else if (key == "n0_dbm_per_mhz") read_into(v, key, ch.n0_dbm_per_mhz);
    else if (key == "eta") read_into(v, key, ch.eta);
    else if (key == "path_loss_exp") read_into(v, key, ch.path_loss_exp);
    else if (key == "k_factor") read_into(v, key, ch.k_factor);
    else if (key == "rho") read_into(v, key, ch.rho);
    else if (key == "theta_3db_deg") read_into(v, key, ch.antenna.theta_3db_deg);
    else throw ConfigError(fmt::format("unknown key 'channel.{}'", key));
  }
}

}  // namespace

ScenarioConfig config_from_json(const json& j, ScenarioConfig c) {
  if (!j.is_object()) throw ConfigError("scenario config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "n_stations") read_into(v, key, c.n_stations);
    else if (key == "area_m") read_into(v, key, c.area_m);
    else if (key == "n_flows") read_into(v, key, c.n_flows);
    else if (key == "n_slots") read_into(v, key, c.n_slots);
    else if (key == "slot_us") read_into(v, key, c.slot_us);
    else if (key == "sched_us") read_into(v, key, c.sched_us);
    else if (key == "qos_min_bps") read_into(v, key, c.qos_bps.lo);
    else if (key == "qos_max_bps") read_into(v, key, c.qos_bps.hi);
    else if (key == "beta_min") read_into(v, key, c.beta.lo);
    else if (key == "beta_max") read_into(v, key, c.beta.hi);
    else if (key == "d_min_m") read_into(v, key, c.d_min_m);
    else if (key == "rng_seed") read_into(v, key, c.rng_seed);
    else if (key == "channel") read_channel(v, c.channel);
    else throw ConfigError(fmt::format("unknown key '{}'", key));
  }
  return c;
}

json scenario_to_json(const Scenario& s) {
  json stations = json::array();
  for (const auto& st : s.stations)
    stations.push_back({{"id", st.id}, {"x_m", st.pos.x()}, {"y_m", st.pos.y()}, {"beta", st.beta}});
  json flows = json::array();
  for (const auto& f : s.flows)
    flows.push_back({{"id", f.id},
                     {"tx", f.tx},
                     {"rx", f.rx},
                     {"qos_bps", f.qos_bps},
                     {"xi_slots", f.xi_slots == kInfeasibleSlots ? json(nullptr) : json(f.xi_slots)}});
  return json{{"config", config_to_json(s.config)}, {"stations", stations}, {"flows", flows}};
}

Scenario scenario_from_json(const json& j) {
  try {
    Scenario s;
    s.config = config_from_json(j.at("config"));
    for (const auto& st : j.at("stations"))
      s.stations.push_back(Station{st.at("id").get<StationId>(),
                                   Point(st.at("x_m").get<double>(), st.at("y_m").get<double>()),
                                   st.at("beta").get<double>()});
    for (const auto& f : j.at("flows"))
      s.flows.push_back(Flow{f.at("id").get<FlowId>(), f.at("tx").get<StationId>(),
                             f.at("rx").get<StationId>(), f.at("qos_bps").get<double>(), 0});
    validate_scenario(s);
    // xi is derived data; recompute rather than trust the file.
    assign_required_slots(s);
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("scenario JSON: {}", e.what()));
  }
}

void save_scenario(const Scenario& scenario, std::ostream& out) {
  out << scenario_to_json(scenario).dump(2) << '\n';
}

Scenario load_scenario(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("scenario JSON: {}", e.what()));
  }
  return scenario_from_json(j);
}

}  // namespace fdsched
