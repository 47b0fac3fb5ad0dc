#include "fdsched/figures.hpp"

namespace fdsched {

namespace {

struct Row {
  const char* id;
  const char* title;
  const char* y;
  SweepParameter parameter;
  std::vector<double> values;
  std::size_t n_flows;
  std::size_t n_slots;
};

const std::vector<Row>& table() {
  static const std::vector<Row> rows = [] {
    const std::vector<double> flows{10, 15, 20, 25, 30, 35, 40};
    const std::vector<double> slots{500, 750, 1000, 1250, 1500, 1750, 2000};
    const std::vector<double> beta{0, 1, 2, 3, 4, 5};
    const std::vector<double> rho{0, 0.01, 0.05, 0.1, 0.5, 1};
    const std::vector<double> qos{1, 1.5, 2, 2.5, 3, 3.5, 4};
    return std::vector<Row>{
        {"fig7", "Completed flows vs number of flows (M = 1000)", "completed_flows",
         SweepParameter::NFlows, flows, 30, 1000},
        {"fig8", "System throughput vs number of flows (M = 1000)", "throughput_gbps",
         SweepParameter::NFlows, flows, 30, 1000},
        {"fig9", "Completed flows vs number of slots (F = 30)", "completed_flows",
         SweepParameter::NSlots, slots, 30, 1000},
        {"fig10", "System throughput vs number of slots (F = 30)", "throughput_gbps",
         SweepParameter::NSlots, slots, 30, 1000},
        {"fig11", "Completed flows vs SI cancellation magnitude (F = 40, M = 1000)",
         "completed_flows", SweepParameter::BetaMagnitude, beta, 40, 1000},
        {"fig12", "System throughput vs SI cancellation magnitude (F = 40, M = 1000)",
         "throughput_gbps", SweepParameter::BetaMagnitude, beta, 40, 1000},
        {"fig13", "Completed flows vs MUI factor (F = 40, M = 1000)", "completed_flows",
         SweepParameter::Rho, rho, 40, 1000},
        {"fig14", "System throughput vs MUI factor (F = 40, M = 1000)", "throughput_gbps",
         SweepParameter::Rho, rho, 40, 1000},
        {"fig15", "Completed flows vs uniform QoS demand (F = 40, M = 1000)", "completed_flows",
         SweepParameter::UniformQos, qos, 40, 1000},
        {"fig16", "System throughput vs uniform QoS demand (F = 40, M = 1000)", "throughput_gbps",
         SweepParameter::UniformQos, qos, 40, 1000},
    };
  }();
  return rows;
}

}  // namespace

std::vector<std::string> figure_ids() {
  std::vector<std::string> ids;
  for (const auto& r : table()) ids.emplace_back(r.id);
  return ids;
}

std::optional<FigurePreset> figure_preset(std::string_view id, std::uint64_t master_seed) {
  for (const auto& r : table()) {
    if (id != r.id) continue;
    FigurePreset p;
    p.id = r.id;
    p.title = r.title;
    p.y_column = r.y;
    p.spec.parameter = r.parameter;
    p.spec.values = r.values;
    p.spec.replicates = 10;
    p.spec.master_seed = master_seed;
    p.base.n_flows = r.n_flows;
    p.base.n_slots = r.n_slots;
    return p;
  }
  return std::nullopt;
}

}  // namespace fdsched
