#pragma once

#include <vector>

#include "pbne/game.hpp"
#include "pbne/static_solver.hpp"

namespace pbne {

// Stage game at (k, x): payoffs are the stage utilities plus each player's
// continuation value at the successor state, beliefs are the stage-k slices.
StageGameView make_stage_view(const MultiStageGame& game, const BeliefTable& beliefs,
                              const ValueTable& values, int k, int x);

struct DynamicEquilibrium {
  StrategyProfile strategies;
  ValueTable values;
  // Certificate residual of each stage solve, [stage][state].
  std::vector<std::vector<double>> residuals;
};

// Solves every stage game from the last stage back to stage 0, at every
// state whether or not it is reachable.
DynamicEquilibrium backward_pass(const MultiStageGame& game, const BeliefTable& beliefs,
                                 const SolverConfig& config = {});

// Expected utility-to-go of every (player, stage, state, own type) when both
// players follow `strategies` and each stage is weighted by that stage's
// belief. Layer K+1 is zero.
ValueTable cumulative_utilities(const MultiStageGame& game, const StrategyProfile& strategies,
                                const BeliefTable& beliefs);

double evaluate_cumulative_utility(const MultiStageGame& game, const StrategyProfile& strategies,
                                   const BeliefTable& beliefs, int k0, int x, int player,
                                   int own_type);

struct BestResponseResult {
  int player = 0;
  // Optimal utility-to-go per stage, [stage] -> (state, own type).
  std::vector<SliceTable> optimal_value;
  // Deterministic optimal policy as one-hot rows, [stage] -> (state, own type, action).
  std::vector<SliceTable> policy;
  // Optimal value minus the candidate's utility-to-go.
  std::vector<SliceTable> gain;
  double max_gain = 0.0;
};

// Exact dynamic program for `player` against the opponent's side of
// `strategies`; the player's own side of `strategies` is the candidate the
// gains are measured against.
BestResponseResult best_response_value(const MultiStageGame& game,
                                       const StrategyProfile& strategies,
                                       const BeliefTable& beliefs, int player);

// Largest best-response gain over both players, all stages, states and types.
double measure_epsilon(const MultiStageGame& game, const StrategyProfile& strategies,
                       const BeliefTable& beliefs);

}  // namespace pbne
