#include "fdsched/link_budget.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace fdsched {

InterferenceKind classify(const Flow& interferer, const Flow& victim) {
  if (interferer.id == victim.id) return InterferenceKind::None;
  if (interferer.tx == victim.rx) return InterferenceKind::Rsi;
  if (interferer.rx == victim.tx) return InterferenceKind::None;
  return InterferenceKind::Mui;
}

double mui_power_mw(const Scenario& s, FlowId interferer, FlowId victim) {
  const Flow& l = s.flows[interferer];
  const Flow& i = s.flows[victim];
  if (l.tx == i.tx || l.tx == i.rx || l.rx == i.tx || l.rx == i.rx)
    throw std::logic_error(
        fmt::format("mui_power_mw: flows {} and {} share a station", interferer, victim));
  const auto& st = s.stations;
  return s.config.channel.rho *
         received_power_mw(s.config.channel, st[l.tx].pos, st[l.rx].pos, st[i.rx].pos, st[i.tx].pos);
}

double rsi_power_mw(const ChannelParams& params, const Station& station) {
  return station.beta * params.noise_power_mw();
}

double signal_power_mw(const Scenario& s, FlowId flow) {
  const Flow& f = s.flows[flow];
  const Point& t = s.stations[f.tx].pos;
  const Point& r = s.stations[f.rx].pos;
  return received_power_mw(s.config.channel, t, r, r, t);
}

namespace {

double interference_term_mw(const Scenario& s, FlowId interferer, FlowId victim) {
  switch (classify(s.flows[interferer], s.flows[victim])) {
    case InterferenceKind::Mui:
      return mui_power_mw(s, interferer, victim);
    case InterferenceKind::Rsi:
      return rsi_power_mw(s.config.channel, s.stations[s.flows[victim].rx]);
    case InterferenceKind::None:
      break;
  }
  return 0.0;
}

}  // namespace

double slot_rate_bps(const Scenario& s, FlowId flow, std::span<const FlowId> active) {
  if (std::find(active.begin(), active.end(), flow) == active.end())
    throw std::logic_error(fmt::format("slot_rate_bps: flow {} is not in the active set", flow));
  for (std::size_t a = 0; a < active.size(); ++a)
    for (std::size_t b = a + 1; b < active.size(); ++b)
      if (active[a] == active[b] || conflicts(s.flows[active[a]], s.flows[active[b]]))
        throw std::logic_error(fmt::format("slot_rate_bps: flows {} and {} conflict", active[a],
                                           active[b]));
  const ChannelParams& p = s.config.channel;
  double denom = p.noise_power_mw();
  for (FlowId l : active)
    if (l != flow) denom += interference_term_mw(s, l, flow);
  return shannon_rate_bps(p, signal_power_mw(s, flow), denom);
}

double isolated_rate_bps(const Scenario& s, FlowId flow) {
  const ChannelParams& p = s.config.channel;
  return shannon_rate_bps(p, signal_power_mw(s, flow), p.noise_power_mw());
}

LinkBudget::LinkBudget(const Scenario& s)
    : params_(s.config.channel), noise_mw_(s.config.channel.noise_power_mw()) {
  const auto n = static_cast<Eigen::Index>(s.flows.size());
  signal_mw_.resize(n);
  isolated_rate_.resize(n);
  coupling_mw_.setZero(n, n);
  conflict_.setConstant(n, n, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto fi = static_cast<FlowId>(i);
    signal_mw_(i) = signal_power_mw(s, fi);
    isolated_rate_(i) = shannon_rate_bps(params_, signal_mw_(i), noise_mw_);
    for (Eigen::Index l = 0; l < n; ++l) {
      if (l == i) continue;
      const auto fl = static_cast<FlowId>(l);
      if (conflicts(s.flows[fl], s.flows[fi])) {
        conflict_(l, i) = true;
        continue;
      }
      coupling_mw_(l, i) = interference_term_mw(s, fl, fi);
    }
  }
}

double LinkBudget::rate_bps(FlowId flow, std::span<const FlowId> active) const {
  double denom = noise_mw_;
  for (FlowId l : active)
    if (l != flow) denom += coupling_mw(l, flow);
  return shannon_rate_bps(params_, signal_mw(flow), denom);
}

std::vector<double> LinkBudget::rates_bps(std::span<const FlowId> active) const {
  std::vector<double> out;
  out.reserve(active.size());
  for (FlowId f : active) out.push_back(rate_bps(f, active));
  return out;
}

double LinkBudget::sum_rate_bps(std::span<const FlowId> active) const {
  double sum = 0.0;
  for (FlowId f : active) sum += rate_bps(f, active);
  return sum;
}

bool LinkBudget::conflict_free(std::span<const FlowId> flows) const {
  for (std::size_t a = 0; a < flows.size(); ++a)
    for (std::size_t b = a + 1; b < flows.size(); ++b)
      if (flows[a] == flows[b] || conflict(flows[a], flows[b])) return false;
  return true;
}

}  // namespace fdsched
