#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "pbne/game.hpp"

namespace pbne {

// Observed action pairs (defender action, user action) for stages 0..k-1.
using ActionPair = std::array<int, kNumPlayers>;
using History = std::vector<ActionPair>;

struct UpdateResult {
  std::vector<double> posterior;
  // Set when the Bayes denominator was exactly zero and the posterior was
  // reset to the stage-0 prior.
  bool fallback = false;
};

// Replays `history` from x0 and returns the state it leads to. Throws
// GameError if the history is too long or names an invalid action.
int replay_history(const MultiStageGame& game, int x0, const History& history);

// Posterior over the opponent's type after observing `observed` at stage
// k = history.size(), under history-dependent information. `belief` is the
// stage-k belief of (player, own_type) given the history.
UpdateResult history_update(const MultiStageGame& game, const StrategyProfile& profile,
                            std::span<const double> belief, int player, int own_type, int x0,
                            const History& history, ActionPair observed);

// Pr(x_next | opp_type, x, own_type): mass of the action pairs that move x to
// x_next at stage k.
double transition_likelihood(const MultiStageGame& game, const StrategyProfile& profile, int k,
                             int x, int x_next, int player, int own_type, int opp_type);

// Markov belief update from (k, x) to (k+1, x_next).
UpdateResult markov_update(const MultiStageGame& game, const StrategyProfile& profile, int k,
                           int x, int x_next, int player, int own_type,
                           std::span<const double> belief);

struct ForwardDiagnostics {
  int fallbacks = 0;
  // Reachable successors whose predecessors produced different posteriors.
  int predecessor_merges = 0;
  std::vector<std::string> notes;
};

using Priors = std::array<std::vector<std::vector<double>>, kNumPlayers>;

// Beliefs at every (player, stage, state, own type) consistent with `profile`
// on the states reachable from x0. Stage-0 slices and unreachable states carry
// the prior. A successor with several reachable predecessors receives the
// reach-weighted mixture of their posteriors.
BeliefTable forward_beliefs(const MultiStageGame& game, const StrategyProfile& profile,
                            const Priors& priors, int x0, ForwardDiagnostics* diagnostics = nullptr);
BeliefTable forward_beliefs(const MultiStageGame& game, const StrategyProfile& profile, int x0,
                            ForwardDiagnostics* diagnostics = nullptr);

}  // namespace pbne
