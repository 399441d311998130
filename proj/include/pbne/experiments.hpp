#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbne/csv.hpp"
#include "pbne/game.hpp"
#include "pbne/pbne_iterator.hpp"
#include "pbne/static_solver.hpp"
#include "pbne/te_scenario.hpp"

namespace pbne {

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int points = 11;

  std::vector<double> values() const;
};

// Throws std::invalid_argument when points < 2 or the bounds are not finite.
void validate_grid(const Grid& grid);

// Distribution over opponent types with `mass` on `target` and the rest
// spread in proportion to `reference` (uniformly if that leaves nothing).
std::vector<double> shift_mass(std::span<const double> reference, int target, double mass);

// Final-stage static sweep: one player's belief entry is varied for all of
// its types while the other player's belief stays fixed.
struct BeliefSweepSpec {
  int stage = -1;  // -1 selects the final stage
  int state = 0;
  int swept_player = kDefender;
  int target_type = 0;  // opponent type whose probability is swept
  Grid grid;
  // Belief of the other player, applied to all of its types; the game's
  // prior when unset.
  std::optional<std::vector<double>> other_belief;
  SolverConfig solver;
};

// Static game at (stage, state) of `game` with the given belief slices and
// no continuation values.
StageGameView stage_view_with_beliefs(const MultiStageGame& game, int k, int x,
                                      const std::array<std::vector<std::vector<double>>, 2>& beliefs);

// Columns: belief, p_<player>_<type>_<action> ..., value_<player>_<type> ...,
// support_change (1 where the equilibrium support differs from the previous row).
CsvTable sweep_static_belief(const MultiStageGame& game, const BeliefSweepSpec& spec);

// Final-stage utilities under complete information for one type pair, per
// final state, as a TEParams field is varied.
struct SensitivitySpec {
  std::string param = "detection_reward_low";
  Grid grid{0.0, 150.0, 11};
  int defender_type = te::kPrimitive;
  int user_type = te::kAdversarial;
  SolverConfig solver;
};

// Columns: value, state, defender_utility, user_utility.
CsvTable sweep_sensitivity(const TEParams& base, const SensitivitySpec& spec);

// Sets every type's prior of `player` to put `mass` on opponent type `target`.
MultiStageGame with_prior_mass(const MultiStageGame& game, int player, int target, double mass);

// Joint type distribution [t1][t2] built from the defender's marginal (the
// average of the user's beliefs) and the defender's conditional prior.
std::vector<std::vector<double>> joint_type_distribution(const MultiStageGame& game);

// Reach probability of each state at each stage from x0 when the types are
// (t1, t2).
std::vector<std::vector<double>> reach_probabilities(const MultiStageGame& game,
                                                     const StrategyProfile& strategies, int x0,
                                                     int t1, int t2);

// Expected total utility of both players when the true types are (t1, t2).
std::array<double, kNumPlayers> evaluate_matchup(const MultiStageGame& game,
                                                 const StrategyProfile& strategies, int x0,
                                                 int t1, int t2);

// Final-stage state distribution from x0 with types drawn from the joint
// distribution.
std::vector<double> final_state_distribution(const MultiStageGame& game,
                                             const StrategyProfile& strategies, int x0);

struct PriorSweepSpec {
  int x0 = 0;
  // Player whose prior is swept and the opponent type the swept mass is on.
  int player = kDefender;
  int target_type = te::kAdversarial;
  Grid grid;
  PbneConfig pbne;
};

struct PosteriorRow {
  double prior = 0.0;
  double posterior = 0.0;
  bool converged = false;
};

// Final-stage belief on the target type held by `player`, averaged over the
// final states reached when the opponent really is the target type and over
// the player's own types.
std::vector<PosteriorRow> posterior_vs_prior(const MultiStageGame& game, const PriorSweepSpec& spec);
// Columns: prior, posterior, converged.
CsvTable posterior_table(const std::vector<PosteriorRow>& rows);

// Columns: prior, state, probability, converged.
CsvTable state_distribution(const MultiStageGame& game, const PriorSweepSpec& spec);

struct InfoRow {
  std::string regime;
  std::string x0;
  std::string defender_type;
  std::string user_type;
  std::string player;
  double utility = 0.0;
  bool converged = false;
};

// Complete information, one-sided deception (the user knows the defender's
// type, the defender holds its prior) and double-sided deception (both hold
// priors); each solved to an epsilon-PBNE and evaluated at the true types.
std::vector<InfoRow> compare_information_structures(const MultiStageGame& game,
                                                    const std::vector<int>& x0_values,
                                                    const PbneConfig& config);
// Columns: regime, x0, defender_type, user_type, player, utility, converged.
CsvTable info_table(const std::vector<InfoRow>& rows);

struct RolloutSpec {
  std::int64_t episodes = 100000;
  std::uint64_t seed = 1;
  int x0 = 0;
};

struct RolloutResult {
  // [player][type]
  std::array<std::vector<double>, kNumPlayers> mean;
  std::array<std::vector<double>, kNumPlayers> std_error;
  std::array<std::vector<std::int64_t>, kNumPlayers> count;
  std::vector<double> final_state_probability;
  std::vector<double> final_state_std_error;
};

// Counter-based uniform draw in [0, 1): the SplitMix64 output function
// applied to seed + golden-ratio * (episode * stride + draw + 1), keeping the
// top 53 bits. Rollouts use stride 2 * (horizon + 1) + 1: draw 0 picks the
// type pair, draws 2k+1 and 2k+2 the stage-k actions.
double counter_uniform(std::uint64_t seed, std::uint64_t episode, std::uint64_t stride,
                       std::uint64_t draw);

// Samples types from the joint distribution, actions from `strategies` and
// follows the transitions; utilities are summed at the true types.
RolloutResult rollout(const MultiStageGame& game, const StrategyProfile& strategies,
                      const RolloutSpec& spec);
// Columns: kind, player, type, state, count, mean, std_error.
CsvTable rollout_table(const MultiStageGame& game, const RolloutResult& result);

}  // namespace pbne
