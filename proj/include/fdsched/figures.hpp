// Preconfigured sweeps reproducing the evaluation figures.
#ifndef FDSCHED_FIGURES_HPP
#define FDSCHED_FIGURES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdsched/sweep.hpp"

namespace fdsched {

inline constexpr std::uint64_t kDefaultMasterSeed = 2019;

struct FigurePreset {
  std::string id;
  std::string title;
  std::string y_column;  ///< completed_flows or throughput_gbps
  SweepSpec spec;
  ScenarioConfig base;
};

/// fig7 .. fig16, in order.
std::vector<std::string> figure_ids();

std::optional<FigurePreset> figure_preset(std::string_view id,
                                          std::uint64_t master_seed = kDefaultMasterSeed);

}  // namespace fdsched

#endif  // FDSCHED_FIGURES_HPP
