#include "fdsched/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace fdsched {

std::vector<Violation> find_violations(const SlotSchedule& schedule, const Scenario& scenario,
                                       DuplexRule rule) {
  std::vector<Violation> out;
  const std::size_t n_st = scenario.stations.size();
  std::vector<int> tx_use(n_st), rx_use(n_st);

  for (std::size_t k = 0; k < schedule.n_slots(); ++k) {
    const std::size_t slot = k + 1;
    const auto& act = schedule.active[k];
    // An empty rate list means rates were not recorded.
    if (!schedule.rate_bps[k].empty() && schedule.rate_bps[k].size() != act.size())
      out.push_back({slot, std::nullopt, fmt::format("slot {}: rate list length mismatch", slot)});

    std::fill(tx_use.begin(), tx_use.end(), 0);
    std::fill(rx_use.begin(), rx_use.end(), 0);
    bool ok_ids = true;
    for (std::size_t a = 0; a < act.size(); ++a) {
      if (act[a] >= scenario.flows.size()) {
        out.push_back({slot, std::nullopt, fmt::format("slot {}: unknown flow {}", slot, act[a])});
        ok_ids = false;
        continue;
      }
      if (a > 0 && act[a] <= act[a - 1])
        out.push_back({slot, std::nullopt,
                       fmt::format("slot {}: flow {} repeated or out of order", slot, act[a])});
      const Flow& f = scenario.flows[act[a]];
      ++tx_use[f.tx];
      ++rx_use[f.rx];
    }
    if (!ok_ids) continue;

    for (StationId st = 0; st < n_st; ++st) {
      const int total = tx_use[st] + rx_use[st];
      if (total > 2) {
        out.push_back({slot, st,
                       fmt::format("slot {}: station {} carries {} flows (limit 2)", slot, st, total)});
      } else if (tx_use[st] > 1) {
        out.push_back({slot, st,
                       fmt::format("slot {}: station {} transmits on {} flows", slot, st, tx_use[st])});
      } else if (rx_use[st] > 1) {
        out.push_back({slot, st,
                       fmt::format("slot {}: station {} receives on {} flows", slot, st, rx_use[st])});
      } else if (rule == DuplexRule::HalfDuplex && total > 1) {
        out.push_back({slot, st,
                       fmt::format("slot {}: station {} carries {} flows under half-duplex", slot,
                                   st, total)});
      }
    }
  }
  return out;
}

void require_valid(const SlotSchedule& schedule, const Scenario& scenario, DuplexRule rule) {
  const auto v = find_violations(schedule, scenario, rule);
  if (!v.empty())
    throw ScheduleError(fmt::format("invalid schedule ({} violations): {}", v.size(), v.front().message));
}

std::vector<Violation> find_rate_mismatches(const SlotSchedule& schedule, const LinkBudget& budget,
                                            double rel_tol) {
  std::vector<Violation> out;
  for (std::size_t k = 0; k < schedule.n_slots(); ++k) {
    const auto& act = schedule.active[k];
    for (std::size_t a = 0; a < act.size() && a < schedule.rate_bps[k].size(); ++a) {
      const double want = budget.rate_bps(act[a], act);
      const double got = schedule.rate_bps[k][a];
      const bool bad = rel_tol == 0.0 ? got != want : std::abs(got - want) > rel_tol * std::abs(want);
      if (bad)
        out.push_back({k + 1, std::nullopt,
                       fmt::format("slot {}: flow {} recorded {:.17g} bps, recomputed {:.17g}", k + 1,
                                   act[a], got, want)});
    }
  }
  return out;
}

void write_schedule_csv(std::ostream& out, const SlotSchedule& schedule) {
  out << "slot,flow_id,rate_bps\n";
  for (std::size_t k = 0; k < schedule.n_slots(); ++k)
    for (std::size_t a = 0; a < schedule.active[k].size(); ++a)
      out << fmt::format("{},{},{:.17g}\n", k + 1, schedule.active[k][a], schedule.rate_bps[k][a]);
}

namespace {

template <typename T>
bool parse_field(std::string_view s, T& out) {
  if constexpr (std::is_floating_point_v<T>) {
    // std::from_chars for double is unavailable in older libstdc++.
    std::string tmp(s);
    char* end = nullptr;
    out = std::strtod(tmp.c_str(), &end);
    return !tmp.empty() && end == tmp.c_str() + tmp.size();
  } else {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

SlotSchedule read_schedule_csv(std::istream& in, std::size_t n_flows, std::size_t n_slots) {
  SlotSchedule sched(n_flows, n_slots);
  std::vector<std::vector<std::pair<FlowId, double>>> rows(n_slots);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ScheduleError("schedule CSV: empty input");
  ++line_no;
  if (trim(line) != "slot,flow_id,rate_bps")
    throw ScheduleError("schedule CSV line 1: expected header 'slot,flow_id,rate_bps'");
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto c1 = text.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
    if (c2 == std::string_view::npos || text.find(',', c2 + 1) != std::string_view::npos)
      throw ScheduleError(fmt::format("schedule CSV line {}: expected 3 fields", line_no));
    std::size_t slot = 0;
    FlowId flow = 0;
    double rate = 0.0;
    if (!parse_field(trim(text.substr(0, c1)), slot) ||
        !parse_field(trim(text.substr(c1 + 1, c2 - c1 - 1)), flow) ||
        !parse_field(trim(text.substr(c2 + 1)), rate))
      throw ScheduleError(fmt::format("schedule CSV line {}: malformed field", line_no));
    if (slot < 1 || slot > n_slots)
      throw ScheduleError(fmt::format("schedule CSV line {}: slot {} outside 1..{}", line_no, slot, n_slots));
    if (flow >= n_flows)
      throw ScheduleError(fmt::format("schedule CSV line {}: unknown flow {}", line_no, flow));
    rows[slot - 1].emplace_back(flow, rate);
  }
  for (std::size_t k = 0; k < n_slots; ++k) {
    std::stable_sort(rows[k].begin(), rows[k].end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [f, r] : rows[k]) {
      sched.active[k].push_back(f);
      sched.rate_bps[k].push_back(r);
    }
  }
  return sched;
}

}  // namespace fdsched
