#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pbne/tables.hpp"

namespace pbne {

// Player 0 is the defender (row player), player 1 the user (column player).
inline constexpr int kDefender = 0;
inline constexpr int kUser = 1;

using Labels = std::vector<std::string>;

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Stage {
  Labels states;
  std::array<Labels, kNumPlayers> actions;
  // Expected stage utilities, [state][a1][a2][t1][t2][player].
  std::vector<double> utilities;
  // Successor state index in the next stage, [state][a1][a2]. Empty at the
  // last stage.
  std::vector<int> transitions;

  bool operator==(const Stage&) const = default;
};

// A finite two-player multi-stage Bayesian game with stages 0..horizon.
struct MultiStageGame {
  int horizon = 0;
  std::array<Labels, kNumPlayers> types;
  std::vector<Stage> stages;
  // priors[i][own type][opponent type]
  std::array<std::vector<std::vector<double>>, kNumPlayers> priors;

  int num_stages() const { return static_cast<int>(stages.size()); }
  int num_states(int k) const { return static_cast<int>(stages[k].states.size()); }
  int num_actions(int k, int player) const {
    return static_cast<int>(stages[k].actions[player].size());
  }
  int num_types(int player) const { return static_cast<int>(types[player].size()); }

  std::size_t utility_index(int k, int x, int a1, int a2, int t1, int t2,
                            int player) const {
    const Stage& s = stages[k];
    std::size_t idx = static_cast<std::size_t>(x);
    idx = idx * s.actions[0].size() + a1;
    idx = idx * s.actions[1].size() + a2;
    idx = idx * types[0].size() + t1;
    idx = idx * types[1].size() + t2;
    return idx * kNumPlayers + player;
  }

  double utility(int k, int x, int a1, int a2, int t1, int t2, int player) const {
    return stages[k].utilities[utility_index(k, x, a1, a2, t1, t2, player)];
  }
  double& utility(int k, int x, int a1, int a2, int t1, int t2, int player) {
    return stages[k].utilities[utility_index(k, x, a1, a2, t1, t2, player)];
  }

  std::size_t transition_index(int k, int x, int a1, int a2) const {
    const Stage& s = stages[k];
    return (static_cast<std::size_t>(x) * s.actions[0].size() + a1) *
               s.actions[1].size() +
           a2;
  }
  int next_state(int k, int x, int a1, int a2) const {
    return stages[k].transitions[transition_index(k, x, a1, a2)];
  }
  int& next_state(int k, int x, int a1, int a2) {
    return stages[k].transitions[transition_index(k, x, a1, a2)];
  }

  // Sizes utility and transition tensors from the label lists (zero utilities,
  // every transition to state 0).
  void allocate();

  bool operator==(const MultiStageGame&) const = default;
};

int type_index(const MultiStageGame& game, int player, std::string_view label);
int state_index(const MultiStageGame& game, int k, std::string_view label);
int action_index(const MultiStageGame& game, int k, int player, std::string_view label);

// f^k on labels. Throws GameError on an out-of-range stage or unknown label.
std::string transition(const MultiStageGame& game, int k, std::string_view state,
                       std::string_view defender_action, std::string_view user_action);

// J_i^k on labels.
double stage_utility(const MultiStageGame& game, int k, std::string_view state,
                     std::string_view defender_action, std::string_view user_action,
                     std::string_view defender_type, std::string_view user_type,
                     int player);

struct Violation {
  std::string location;
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_game(const MultiStageGame& game);

// sigma_i^k(a | x, theta_i), one SliceTable per (player, stage).
struct StrategyProfile {
  PlayerStageTables sigma;

  static StrategyProfile uniform(const MultiStageGame& game);
  static StrategyProfile zeros(const MultiStageGame& game);

  std::span<const double> at(int player, int k, int x, int type) const {
    return sigma[player][k].slice(x, type);
  }
  std::span<double> at(int player, int k, int x, int type) {
    return sigma[player][k].slice(x, type);
  }

  bool operator==(const StrategyProfile&) const = default;
};

ValidationReport validate_profile(const MultiStageGame& game, const StrategyProfile& profile);

// b_i^k(theta_j | x, theta_i).
struct BeliefTable {
  PlayerStageTables belief;

  // Every (stage, state) slice set to the stage-0 prior of the game.
  static BeliefTable from_priors(const MultiStageGame& game);
  static BeliefTable uniform(const MultiStageGame& game);

  std::span<const double> at(int player, int k, int x, int type) const {
    return belief[player][k].slice(x, type);
  }
  std::span<double> at(int player, int k, int x, int type) {
    return belief[player][k].slice(x, type);
  }

  bool operator==(const BeliefTable&) const = default;
};

ValidationReport validate_beliefs(const MultiStageGame& game, const BeliefTable& beliefs);

// V_i^k(x, theta_i) for k = 0..K+1; the layer K+1 is the zero terminal layer
// with a single virtual state.
struct ValueTable {
  PlayerStageTables value;

  static ValueTable zeros(const MultiStageGame& game);

  double at(int player, int k, int x, int type) const { return value[player][k](x, type, 0); }
  double& at(int player, int k, int x, int type) { return value[player][k](x, type, 0); }

  bool operator==(const ValueTable&) const = default;
};

}  // namespace pbne
