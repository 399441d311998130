#include "pbne/belief.hpp"

#include <cmath>
#include <numeric>

namespace pbne {

namespace {

constexpr double kRenormalizeDrift = 1e-12;
constexpr double kMergeTolerance = 1e-12;

void renormalize(std::vector<double>& dist) {
  const double sum = std::accumulate(dist.begin(), dist.end(), 0.0);
  if (std::abs(sum - 1.0) > kRenormalizeDrift && sum > 0.0) {
    for (double& p : dist) p /= sum;
  }
}

// Probability of the joint action (own_action, opp_action) when the player
// is own_type and the opponent is opp_type.
double pair_probability(const StrategyProfile& profile, int k, int x, int player, int own_type,
                        int opp_type, int own_action, int opp_action) {
  return profile.at(player, k, x, own_type)[own_action] *
         profile.at(opponent(player), k, x, opp_type)[opp_action];
}

// Successor distribution from (k, x) for fixed types of both players.
std::vector<double> successor_distribution(const MultiStageGame& game,
                                           const StrategyProfile& profile, int k, int x,
                                           int t1, int t2) {
  std::vector<double> dist(game.num_states(k + 1), 0.0);
  auto s1 = profile.at(kDefender, k, x, t1);
  auto s2 = profile.at(kUser, k, x, t2);
  for (int a1 = 0; a1 < game.num_actions(k, kDefender); ++a1) {
    if (s1[a1] == 0.0) continue;
    for (int a2 = 0; a2 < game.num_actions(k, kUser); ++a2) {
      dist[game.next_state(k, x, a1, a2)] += s1[a1] * s2[a2];
    }
  }
  return dist;
}

void check_player(int player, int own_type, const MultiStageGame& game) {
  if (player < 0 || player >= kNumPlayers) throw GameError("invalid player");
  if (own_type < 0 || own_type >= game.num_types(player)) throw GameError("invalid type");
}

}  // namespace

int replay_history(const MultiStageGame& game, int x0, const History& history) {
  if (x0 < 0 || x0 >= game.num_states(0)) throw GameError("invalid initial state");
  if (static_cast<int>(history.size()) > game.horizon) {
    throw GameError("history longer than the horizon");
  }
  int x = x0;
  for (std::size_t k = 0; k < history.size(); ++k) {
    const auto [a1, a2] = history[k];
    const int kk = static_cast<int>(k);
    if (a1 < 0 || a1 >= game.num_actions(kk, kDefender) || a2 < 0 ||
        a2 >= game.num_actions(kk, kUser)) {
      throw GameError("history names an invalid action at stage " + std::to_string(k));
    }
    x = game.next_state(kk, x, a1, a2);
  }
  return x;
}

UpdateResult history_update(const MultiStageGame& game, const StrategyProfile& profile,
                            std::span<const double> belief, int player, int own_type, int x0,
                            const History& history, ActionPair observed) {
  check_player(player, own_type, game);
  const int x = replay_history(game, x0, history);
  const int k = static_cast<int>(history.size());
  if (k >= game.num_stages()) throw GameError("no stage left to observe");
  const int a1 = observed[kDefender];
  const int a2 = observed[kUser];
  if (a1 < 0 || a1 >= game.num_actions(k, kDefender) || a2 < 0 ||
      a2 >= game.num_actions(k, kUser)) {
    throw GameError("observed pair names an invalid action");
  }
  const int opp_types = game.num_types(opponent(player));
  if (static_cast<int>(belief.size()) != opp_types) throw GameError("belief size mismatch");

  const int own_action = observed[player];
  const int opp_action = observed[opponent(player)];
  UpdateResult out;
  out.posterior.assign(opp_types, 0.0);
  double denom = 0.0;
  for (int j = 0; j < opp_types; ++j) {
    out.posterior[j] =
        pair_probability(profile, k, x, player, own_type, j, own_action, opp_action) * belief[j];
    denom += out.posterior[j];
  }
  if (denom == 0.0) {
    out.posterior = game.priors[player][own_type];
    out.fallback = true;
    return out;
  }
  for (double& p : out.posterior) p /= denom;
  renormalize(out.posterior);
  return out;
}

double transition_likelihood(const MultiStageGame& game, const StrategyProfile& profile, int k,
                             int x, int x_next, int player, int own_type, int opp_type) {
  check_player(player, own_type, game);
  if (k < 0 || k >= game.horizon) throw GameError("no transition out of stage " + std::to_string(k));
  if (x < 0 || x >= game.num_states(k) || x_next < 0 || x_next >= game.num_states(k + 1)) {
    throw GameError("invalid state");
  }
  if (opp_type < 0 || opp_type >= game.num_types(opponent(player))) {
    throw GameError("invalid opponent type");
  }
  const int t1 = player == kDefender ? own_type : opp_type;
  const int t2 = player == kDefender ? opp_type : own_type;
  auto s1 = profile.at(kDefender, k, x, t1);
  auto s2 = profile.at(kUser, k, x, t2);
  double total = 0.0;
  for (int a1 = 0; a1 < game.num_actions(k, kDefender); ++a1) {
    for (int a2 = 0; a2 < game.num_actions(k, kUser); ++a2) {
      if (game.next_state(k, x, a1, a2) == x_next) total += s1[a1] * s2[a2];
    }
  }
  return total;
}

UpdateResult markov_update(const MultiStageGame& game, const StrategyProfile& profile, int k,
                           int x, int x_next, int player, int own_type,
                           std::span<const double> belief) {
  const int opp_types = game.num_types(opponent(player));
  if (static_cast<int>(belief.size()) != opp_types) throw GameError("belief size mismatch");
  UpdateResult out;
  out.posterior.assign(opp_types, 0.0);
  double denom = 0.0;
  for (int j = 0; j < opp_types; ++j) {
    out.posterior[j] =
        transition_likelihood(game, profile, k, x, x_next, player, own_type, j) * belief[j];
    denom += out.posterior[j];
  }
  if (denom == 0.0) {
    out.posterior = game.priors[player][own_type];
    out.fallback = true;
    return out;
  }
  for (double& p : out.posterior) p /= denom;
  renormalize(out.posterior);
  return out;
}

BeliefTable forward_beliefs(const MultiStageGame& game, const StrategyProfile& profile,
                            const Priors& priors, int x0, ForwardDiagnostics* diagnostics) {
  if (x0 < 0 || x0 >= game.num_states(0)) throw GameError("invalid initial state");
  MultiStageGame with_priors_view;  // only used when priors differ from the game's
  const MultiStageGame* g = &game;
  if (priors != game.priors) {
    // markov_update falls back to the game's prior; keep that consistent.
    with_priors_view = game;
    with_priors_view.priors = priors;
    g = &with_priors_view;
  }

  BeliefTable out;
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int k = 0; k < game.num_stages(); ++k) {
      out.belief[i].emplace_back(game.num_states(k), game.num_types(i),
                                 game.num_types(opponent(i)));
    }
  }

  for (int i = 0; i < kNumPlayers; ++i) {
    const int j_types = game.num_types(opponent(i));
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      const std::vector<double>& prior = priors[i][ti];
      for (int x = 0; x < game.num_states(0); ++x) {
        auto s = out.belief[i][0].slice(x, ti);
        std::copy(prior.begin(), prior.end(), s.begin());
      }
      // reach[tj][x]: probability of reaching x at the current stage when the
      // opponent is tj.
      std::vector<std::vector<double>> reach(j_types, std::vector<double>(game.num_states(0), 0.0));
      for (auto& r : reach) r[x0] = 1.0;

      for (int k = 0; k < game.horizon; ++k) {
        const int nx = game.num_states(k);
        const int nnext = game.num_states(k + 1);
        // succ[tj][x] -> distribution over successors
        std::vector<std::vector<std::vector<double>>> succ(j_types);
        std::vector<std::vector<double>> next_reach(j_types, std::vector<double>(nnext, 0.0));
        for (int tj = 0; tj < j_types; ++tj) {
          const int t1 = i == kDefender ? ti : tj;
          const int t2 = i == kDefender ? tj : ti;
          succ[tj].resize(nx);
          for (int x = 0; x < nx; ++x) {
            if (reach[tj][x] == 0.0) continue;
            succ[tj][x] = successor_distribution(game, profile, k, x, t1, t2);
            for (int xn = 0; xn < nnext; ++xn) next_reach[tj][xn] += reach[tj][x] * succ[tj][x][xn];
          }
        }

        for (int xn = 0; xn < nnext; ++xn) {
          std::vector<double> mixed(j_types, 0.0);
          double total_weight = 0.0;
          int contributors = 0;
          std::vector<double> first;
          bool disagree = false;
          for (int x = 0; x < nx; ++x) {
            double weight = 0.0;
            for (int tj = 0; tj < j_types; ++tj) {
              if (reach[tj][x] == 0.0) continue;
              weight += prior[tj] * reach[tj][x] * succ[tj][x][xn];
            }
            if (weight <= 0.0) continue;
            UpdateResult upd =
                markov_update(*g, profile, k, x, xn, i, ti, out.belief[i][k].slice(x, ti));
            if (upd.fallback && diagnostics) {
              ++diagnostics->fallbacks;
              diagnostics->notes.push_back("zero-likelihood update at stage " +
                                           std::to_string(k) + " state " + game.stages[k].states[x]);
            }
            if (contributors == 0) {
              first = upd.posterior;
            } else {
              for (int tj = 0; tj < j_types; ++tj) {
                if (std::abs(first[tj] - upd.posterior[tj]) > kMergeTolerance) disagree = true;
              }
            }
            ++contributors;
            total_weight += weight;
            for (int tj = 0; tj < j_types; ++tj) mixed[tj] += weight * upd.posterior[tj];
          }
          auto dst = out.belief[i][k + 1].slice(xn, ti);
          if (total_weight <= 0.0) {
            std::copy(prior.begin(), prior.end(), dst.begin());
            continue;
          }
          for (double& p : mixed) p /= total_weight;
          renormalize(mixed);
          std::copy(mixed.begin(), mixed.end(), dst.begin());
          if (disagree && diagnostics) {
            ++diagnostics->predecessor_merges;
            diagnostics->notes.push_back("merged predecessor posteriors at stage " +
                                         std::to_string(k + 1) + " state " +
                                         game.stages[k + 1].states[xn]);
          }
        }
        reach = std::move(next_reach);
      }
    }
  }
  return out;
}

BeliefTable forward_beliefs(const MultiStageGame& game, const StrategyProfile& profile, int x0,
                            ForwardDiagnostics* diagnostics) {
  return forward_beliefs(game, profile, game.priors, x0, diagnostics);
}

}  // namespace pbne
