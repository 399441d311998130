#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pbne/tables.hpp"

namespace pbne {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A one-shot two-player Bayesian game: payoffs per (a1, a2, t1, t2, player)
// and each player's belief over the opponent's type given its own type.
struct StageGameView {
  std::array<int, kNumPlayers> num_actions{};
  std::array<int, kNumPlayers> num_types{};
  // [a1][a2][t1][t2][player]
  std::vector<double> payoffs;
  // beliefs[i][own * num_types[opponent(i)] + opp]
  std::array<std::vector<double>, kNumPlayers> beliefs;

  static StageGameView make(int actions1, int actions2, int types1, int types2);

  std::size_t payoff_index(int a1, int a2, int t1, int t2, int player) const {
    std::size_t idx = static_cast<std::size_t>(a1);
    idx = idx * num_actions[1] + a2;
    idx = idx * num_types[0] + t1;
    idx = idx * num_types[1] + t2;
    return idx * kNumPlayers + player;
  }
  double payoff(int a1, int a2, int t1, int t2, int player) const {
    return payoffs[payoff_index(a1, a2, t1, t2, player)];
  }
  double& payoff(int a1, int a2, int t1, int t2, int player) {
    return payoffs[payoff_index(a1, a2, t1, t2, player)];
  }
  double belief(int player, int own, int opp) const {
    return beliefs[player][own * num_types[opponent(player)] + opp];
  }
  double& belief(int player, int own, int opp) {
    return beliefs[player][own * num_types[opponent(player)] + opp];
  }
};

// Checks extents, finiteness and belief normalization; throws SolverError.
void check_view(const StageGameView& view);

// [type][action]
using TypeStrategies = std::vector<std::vector<double>>;
using StrategyPair = std::array<TypeStrategies, kNumPlayers>;

struct StaticEquilibrium {
  StrategyPair strategy;
  // Interim expected payoff per (player, own type).
  std::array<std::vector<double>, kNumPlayers> value;
  double residual = 0.0;
  // Support bitmask per (player, type).
  std::array<std::vector<std::uint32_t>, kNumPlayers> support;
};

enum class SelectionRule {
  // Smallest total support first, ties broken lexicographically by the
  // per-agent support masks.
  kSmallestSupportFirst,
};

struct SolverConfig {
  // alpha[i][type]; empty means 1 for every type.
  std::array<std::vector<double>, kNumPlayers> alpha;
  double feasibility_tol = 1e-9;
  SelectionRule selection = SelectionRule::kSmallestSupportFirst;
  bool enumerate_all = false;
};

// Expected payoff of `action` for (player, own_type) against the opponent's
// type-contingent strategy under the player's belief.
double action_payoff(const StageGameView& view, const StrategyPair& strategy, int player,
                     int own_type, int action);
// Interim expected payoff of (player, own_type) under `strategy`.
double interim_payoff(const StageGameView& view, const StrategyPair& strategy, int player,
                      int own_type);

// Largest gain any (player, type) obtains by switching to a pure action.
double verify_sbne(const StageGameView& view, const StrategyPair& strategy);

// Negated bilinear-program objective at the tightest feasible certificate
// variables: sum of alpha-weighted best-response shortfalls. Zero exactly at
// an equilibrium, positive otherwise.
double certificate_residual(const StageGameView& view, const StrategyPair& strategy,
                            const SolverConfig& config = {});

StaticEquilibrium solve_sbne(const StageGameView& view, const SolverConfig& config = {});
// Every equilibrium found by support enumeration (one per feasible support
// profile, duplicates removed).
std::vector<StaticEquilibrium> solve_sbne_all(const StageGameView& view,
                                              const SolverConfig& config = {});

}  // namespace pbne
