#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbne/belief.hpp"
#include "pbne/dynamic_solver.hpp"
#include "pbne/game.hpp"

namespace pbne {

enum class InitialBeliefRule { kUniform, kPriorFromGame, kExplicit };

struct PbneConfig {
  int iter_num = 100;
  double epsilon_target = 1e-6;
  double belief_tolerance = 1e-8;
  InitialBeliefRule initial_rule = InitialBeliefRule::kPriorFromGame;
  // Used when initial_rule is kExplicit.
  std::optional<BeliefTable> initial_beliefs;
  // Belief averaging kicks in after this many iterations without a drop in
  // belief change.
  int damping_patience = 5;
  double damping_factor = 0.5;
  SolverConfig solver;
};

// Throws std::invalid_argument on a malformed config.
void validate_config(const MultiStageGame& game, const PbneConfig& config);

struct IterationRecord {
  int iteration = 0;
  double epsilon = 0.0;
  double belief_change = 0.0;
  // Beliefs fed into the next backward pass were averaged with this
  // iteration's input.
  bool damped = false;
};

struct EquilibriumReport {
  int x0 = 0;
  StrategyProfile strategies;
  BeliefTable beliefs;
  // Utility-to-go of the reported profile under the reported beliefs.
  ValueTable values;
  double epsilon = 0.0;
  double discrepancy = 0.0;
  // Belief change of the reported iterate relative to the beliefs its
  // strategies were computed under.
  double belief_change = 0.0;
  double max_residual = 0.0;
  std::vector<IterationRecord> trace;
  bool converged = false;
  // 1-based iteration index of the reported iterate.
  int best_iterate = 0;
  ForwardDiagnostics diagnostics;
};

EquilibriumReport solve_pbne(const MultiStageGame& game, int x0, const PbneConfig& config = {});

// Sup-norm distance between `beliefs` and the beliefs `strategies` induce
// from x0.
double check_belief_consistency(const MultiStageGame& game, const StrategyProfile& strategies,
                                const BeliefTable& beliefs, int x0);

// Largest best-response gain of either player anywhere in the game.
double check_sequential_rationality(const MultiStageGame& game, const StrategyProfile& strategies,
                                    const BeliefTable& beliefs);

nlohmann::ordered_json report_to_json(const MultiStageGame& game, const EquilibriumReport& report);

}  // namespace pbne
