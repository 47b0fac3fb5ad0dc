// Flow-level interference and per-slot rates.
//
// A flow's transmit antenna is steered at its receiver and its receive
// antenna at its transmitter, so every pairwise coupling between two flows
// is fixed by the scenario geometry. LinkBudget caches those couplings in
// dense matrices once per scenario; the schedulers and the evaluator only
// ever see rates through it.
#ifndef FDSCHED_LINK_BUDGET_HPP
#define FDSCHED_LINK_BUDGET_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "fdsched/contention.hpp"
#include "fdsched/network.hpp"

namespace fdsched {

/// How an active interferer flow affects a victim flow's receiver.
enum class InterferenceKind {
  Mui,   ///< no shared station: cross-link power scaled by rho
  Rsi,   ///< interferer transmits from the victim's receiver station: beta * N0 * W
  None,  ///< the flow itself, or interferer receives at the victim's transmitter
};

/// Classification of an ordered (interferer, victim) pair. Precondition:
/// the two flows do not conflict.
InterferenceKind classify(const Flow& interferer, const Flow& victim);

/// rho * received power from the interferer's transmitter (aimed at its own
/// receiver) into the victim's receiver (aimed at its own transmitter).
/// Throws std::logic_error if the flows share a station.
double mui_power_mw(const Scenario& scenario, FlowId interferer, FlowId victim);

/// beta * N0 * W at the given station.
double rsi_power_mw(const ChannelParams& params, const Station& station);

/// Desired-signal power of a flow with both antennas aligned.
double signal_power_mw(const Scenario& scenario, FlowId flow);

/// Rate of `flow` while every flow in `active` transmits. Throws
/// std::logic_error if `flow` is not in `active` or `active` has a conflict.
double slot_rate_bps(const Scenario& scenario, FlowId flow, std::span<const FlowId> active);

/// Rate of `flow` with no other active flow.
double isolated_rate_bps(const Scenario& scenario, FlowId flow);

class LinkBudget {
 public:
  explicit LinkBudget(const Scenario& scenario);

  std::size_t size() const { return static_cast<std::size_t>(signal_mw_.size()); }
  const ChannelParams& params() const { return params_; }

  double noise_mw() const { return noise_mw_; }
  double signal_mw(FlowId f) const { return signal_mw_(static_cast<Eigen::Index>(f)); }

  /// Interference contributed by `interferer` at `victim`'s receiver when
  /// both are active; zero for pairs of kind None.
  double coupling_mw(FlowId interferer, FlowId victim) const {
    return coupling_mw_(static_cast<Eigen::Index>(interferer), static_cast<Eigen::Index>(victim));
  }
  bool conflict(FlowId a, FlowId b) const {
    return conflict_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }

  double isolated_rate_bps(FlowId f) const { return isolated_rate_(static_cast<Eigen::Index>(f)); }

  /// Rate of `flow` against `active`. Interference is summed in the order of
  /// `active`; callers keep active sets sorted so results are reproducible
  /// bit for bit.
  double rate_bps(FlowId flow, std::span<const FlowId> active) const;

  /// Rates of every member of `active`, in the same order.
  std::vector<double> rates_bps(std::span<const FlowId> active) const;

  /// Sum of member rates: the utility of a coalition.
  double sum_rate_bps(std::span<const FlowId> active) const;

  /// True if no two members of `flows` conflict.
  bool conflict_free(std::span<const FlowId> flows) const;

 private:
  ChannelParams params_;
  double noise_mw_ = 0.0;
  Eigen::VectorXd signal_mw_;
  Eigen::VectorXd isolated_rate_;
  Eigen::MatrixXd coupling_mw_;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> conflict_;
};

}  // namespace fdsched

#endif  // FDSCHED_LINK_BUDGET_HPP
