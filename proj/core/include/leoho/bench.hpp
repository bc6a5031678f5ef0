#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "leoho/ue.hpp"

namespace leoho {

struct PredictBenchResult {
  std::size_t users = 0;
  StrategyKind strategy = StrategyKind::Flexible;
  std::string preset;
  double wall_ms = 0.0;           // best of the repeats
  std::size_t candidates = 0;     // UEs that needed a fresh selection
  std::size_t switching = 0;      // rows given a trigger time
};

/// Times one periodic table update (propagation, fast prediction and the
/// trigger-time searches) for `n_users` UEs scattered over the shell's
/// latitude band. Throws std::invalid_argument when n_users == 0.
PredictBenchResult predict_bench(std::size_t n_users, StrategyKind strategy,
                                 std::string_view preset, std::uint64_t seed = 1, int repeats = 3);

}  // namespace leoho
