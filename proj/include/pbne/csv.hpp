#pragma once

#include <string>
#include <vector>

#include "pbne/game.hpp"
#include "pbne/static_solver.hpp"

namespace pbne {

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;
  // Throws std::runtime_error when the file cannot be written.
  void write(const std::string& path) const;
};

// (player, stage, state, own_type, opp_type, probability)
CsvTable beliefs_csv(const MultiStageGame& game, const BeliefTable& beliefs);
// (player, stage, state, type, action, probability)
CsvTable strategies_csv(const MultiStageGame& game, const StrategyProfile& strategies);
// (player, stage, state, type, value); the zero terminal layer is omitted.
CsvTable values_csv(const MultiStageGame& game, const ValueTable& values);

// Strategy rows (player, type, action, probability) followed by one summary
// row per (player, type) carrying value and residual. Labels may be empty, in
// which case indices are printed.
CsvTable static_equilibrium_csv(const StaticEquilibrium& eq,
                                const std::array<Labels, kNumPlayers>& type_labels = {},
                                const std::array<Labels, kNumPlayers>& action_labels = {});

const char* player_label(int player);

}  // namespace pbne
