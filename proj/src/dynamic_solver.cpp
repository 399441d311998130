#include "pbne/dynamic_solver.hpp"

#include <algorithm>
#include <string>

namespace pbne {

namespace {

// Continuation value of `player` with own_type after (x, a1, a2) at stage k.
double continuation(const MultiStageGame& game, const SliceTable& next_values, int k, int x,
                    int a1, int a2, int own_type) {
  if (k >= game.horizon) return 0.0;
  return next_values(game.next_state(k, x, a1, a2), own_type, 0);
}

// Belief-weighted payoff to `player` (type ti) of own action `a` at (k, x),
// continuing with next_values, against the opponent's side of `strategies`.
double action_value(const MultiStageGame& game, const StrategyProfile& strategies,
                    const BeliefTable& beliefs, const SliceTable& next_values, int player, int k,
                    int x, int ti, int a) {
  const int j = opponent(player);
  auto belief = beliefs.at(player, k, x, ti);
  double total = 0.0;
  for (int tj = 0; tj < game.num_types(j); ++tj) {
    if (belief[tj] == 0.0) continue;
    auto sj = strategies.at(j, k, x, tj);
    const int t1 = player == kDefender ? ti : tj;
    const int t2 = player == kDefender ? tj : ti;
    double inner = 0.0;
    for (int aj = 0; aj < game.num_actions(k, j); ++aj) {
      if (sj[aj] == 0.0) continue;
      const int a1 = player == kDefender ? a : aj;
      const int a2 = player == kDefender ? aj : a;
      inner += sj[aj] * (game.utility(k, x, a1, a2, t1, t2, player) +
                         continuation(game, next_values, k, x, a1, a2, ti));
    }
    total += belief[tj] * inner;
  }
  return total;
}

}  // namespace

StageGameView make_stage_view(const MultiStageGame& game, const BeliefTable& beliefs,
                              const ValueTable& values, int k, int x) {
  const int n1 = game.num_actions(k, kDefender);
  const int n2 = game.num_actions(k, kUser);
  const int nt1 = game.num_types(kDefender);
  const int nt2 = game.num_types(kUser);
  StageGameView view = StageGameView::make(n1, n2, nt1, nt2);
  for (int a1 = 0; a1 < n1; ++a1) {
    for (int a2 = 0; a2 < n2; ++a2) {
      for (int t1 = 0; t1 < nt1; ++t1) {
        for (int t2 = 0; t2 < nt2; ++t2) {
          for (int i = 0; i < kNumPlayers; ++i) {
            double v = game.utility(k, x, a1, a2, t1, t2, i);
            if (k < game.horizon) {
              v += values.at(i, k + 1, game.next_state(k, x, a1, a2), i == kDefender ? t1 : t2);
            }
            view.payoff(a1, a2, t1, t2, i) = v;
          }
        }
      }
    }
  }
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int t = 0; t < game.num_types(i); ++t) {
      auto b = beliefs.at(i, k, x, t);
      for (int j = 0; j < game.num_types(opponent(i)); ++j) view.belief(i, t, j) = b[j];
    }
  }
  return view;
}

DynamicEquilibrium backward_pass(const MultiStageGame& game, const BeliefTable& beliefs,
                                 const SolverConfig& config) {
  DynamicEquilibrium out;
  out.strategies = StrategyProfile::zeros(game);
  out.values = ValueTable::zeros(game);
  out.residuals.resize(game.num_stages());
  for (int k = game.horizon; k >= 0; --k) {
    out.residuals[k].assign(game.num_states(k), 0.0);
    for (int x = 0; x < game.num_states(k); ++x) {
      StaticEquilibrium eq;
      try {
        eq = solve_sbne(make_stage_view(game, beliefs, out.values, k, x), config);
      } catch (const SolverError& e) {
        throw SolverError("stage " + std::to_string(k) + " state " + game.stages[k].states[x] +
                          ": " + e.what());
      }
      for (int i = 0; i < kNumPlayers; ++i) {
        for (int t = 0; t < game.num_types(i); ++t) {
          auto dst = out.strategies.at(i, k, x, t);
          std::copy(eq.strategy[i][t].begin(), eq.strategy[i][t].end(), dst.begin());
          out.values.at(i, k, x, t) = eq.value[i][t];
        }
      }
      out.residuals[k][x] = eq.residual;
    }
  }
  return out;
}

ValueTable cumulative_utilities(const MultiStageGame& game, const StrategyProfile& strategies,
                                const BeliefTable& beliefs) {
  ValueTable w = ValueTable::zeros(game);
  for (int k = game.horizon; k >= 0; --k) {
    for (int i = 0; i < kNumPlayers; ++i) {
      const SliceTable& next = w.value[i][k + 1];
      for (int x = 0; x < game.num_states(k); ++x) {
        for (int ti = 0; ti < game.num_types(i); ++ti) {
          auto si = strategies.at(i, k, x, ti);
          double total = 0.0;
          for (int a = 0; a < game.num_actions(k, i); ++a) {
            if (si[a] == 0.0) continue;
            total += si[a] * action_value(game, strategies, beliefs, next, i, k, x, ti, a);
          }
          w.at(i, k, x, ti) = total;
        }
      }
    }
  }
  return w;
}

double evaluate_cumulative_utility(const MultiStageGame& game, const StrategyProfile& strategies,
                                   const BeliefTable& beliefs, int k0, int x, int player,
                                   int own_type) {
  if (k0 < 0 || k0 > game.horizon) throw GameError("invalid stage");
  if (x < 0 || x >= game.num_states(k0)) throw GameError("invalid state");
  if (player < 0 || player >= kNumPlayers) throw GameError("invalid player");
  if (own_type < 0 || own_type >= game.num_types(player)) throw GameError("invalid type");
  return cumulative_utilities(game, strategies, beliefs).at(player, k0, x, own_type);
}

BestResponseResult best_response_value(const MultiStageGame& game,
                                       const StrategyProfile& strategies,
                                       const BeliefTable& beliefs, int player) {
  const ValueTable candidate = cumulative_utilities(game, strategies, beliefs);
  BestResponseResult out;
  out.player = player;
  const int nt = game.num_types(player);
  out.optimal_value.resize(game.num_stages());
  out.policy.resize(game.num_stages());
  out.gain.resize(game.num_stages());
  SliceTable next(1, nt, 1, 0.0);
  for (int k = game.horizon; k >= 0; --k) {
    const int nx = game.num_states(k);
    const int na = game.num_actions(k, player);
    SliceTable value(nx, nt, 1);
    SliceTable policy(nx, nt, na);
    SliceTable gain(nx, nt, 1);
    for (int x = 0; x < nx; ++x) {
      for (int ti = 0; ti < nt; ++ti) {
        int best_action = 0;
        double best = action_value(game, strategies, beliefs, next, player, k, x, ti, 0);
        for (int a = 1; a < na; ++a) {
          const double q = action_value(game, strategies, beliefs, next, player, k, x, ti, a);
          if (q > best) {
            best = q;
            best_action = a;
          }
        }
        value(x, ti, 0) = best;
        policy(x, ti, best_action) = 1.0;
        gain(x, ti, 0) = best - candidate.at(player, k, x, ti);
        out.max_gain = std::max(out.max_gain, gain(x, ti, 0));
      }
    }
    next = value;
    out.optimal_value[k] = std::move(value);
    out.policy[k] = std::move(policy);
    out.gain[k] = std::move(gain);
  }
  return out;
}

double measure_epsilon(const MultiStageGame& game, const StrategyProfile& strategies,
                       const BeliefTable& beliefs) {
  double eps = 0.0;
  for (int i = 0; i < kNumPlayers; ++i) {
    eps = std::max(eps, best_response_value(game, strategies, beliefs, i).max_gain);
  }
  return eps;
}

}  // namespace pbne
