#include "pbne/static_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "pbne/game.hpp"
#include "pbne/lp_feasibility.hpp"

namespace pbne {

namespace {

constexpr double kPruneThreshold = 1e-12;
constexpr double kDuplicateTolerance = 1e-9;

// Payoff of `player` when it plays own_action and the opponent plays
// opp_action, with types given in (own, opp) order.
double own_payoff(const StageGameView& view, int player, int own_action, int opp_action,
                  int own_type, int opp_type) {
  if (player == kDefender) return view.payoff(own_action, opp_action, own_type, opp_type, player);
  return view.payoff(opp_action, own_action, opp_type, own_type, player);
}

// Nonempty action subsets of an n-action agent ordered by (size, mask).
std::vector<std::uint32_t> agent_supports(int n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 1; m < (1u << n); ++m) out.push_back(m);
  std::stable_sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

// All per-type support assignments of one player, in lexicographic order of
// the agent support ranks.
std::vector<std::vector<std::uint32_t>> player_combos(int actions, int types) {
  const std::vector<std::uint32_t> agent = agent_supports(actions);
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::size_t> rank(types, 0);
  while (true) {
    std::vector<std::uint32_t> combo(types);
    for (int t = 0; t < types; ++t) combo[t] = agent[rank[t]];
    out.push_back(std::move(combo));
    int t = types - 1;
    while (t >= 0 && ++rank[t] == agent.size()) rank[t--] = 0;
    if (t < 0) break;
  }
  return out;
}

int combo_size(const std::vector<std::uint32_t>& combo) {
  int s = 0;
  for (std::uint32_t m : combo) s += std::popcount(m);
  return s;
}

// Finds a type-contingent strategy of the opponent of `player`, supported on
// opp_support, that makes every action in own_support optimal for each type
// of `player`.
std::optional<TypeStrategies> supporting_strategy(const StageGameView& view, int player,
                                                  const std::vector<std::uint32_t>& own_support,
                                                  const std::vector<std::uint32_t>& opp_support,
                                                  double tolerance) {
  const int opp = opponent(player);
  const int own_types = view.num_types[player];
  const int opp_types = view.num_types[opp];
  const int own_actions = view.num_actions[player];
  const int opp_actions = view.num_actions[opp];

  std::vector<std::vector<int>> var(opp_types, std::vector<int>(opp_actions, -1));
  int n = 0;
  for (int tj = 0; tj < opp_types; ++tj) {
    for (int a = 0; a < opp_actions; ++a) {
      if (opp_support[tj] >> a & 1u) var[tj][a] = n++;
    }
  }

  std::vector<LinearConstraint> rows;
  for (int tj = 0; tj < opp_types; ++tj) {
    LinearConstraint c{std::vector<double>(n, 0.0), Relation::kEqual, 1.0};
    for (int a = 0; a < opp_actions; ++a) {
      if (var[tj][a] >= 0) c.coefficients[var[tj][a]] = 1.0;
    }
    rows.push_back(std::move(c));
  }
  for (int ti = 0; ti < own_types; ++ti) {
    const int ref = std::countr_zero(own_support[ti]);
    for (int a = 0; a < own_actions; ++a) {
      if (a == ref) continue;
      LinearConstraint c{std::vector<double>(n, 0.0),
                         (own_support[ti] >> a & 1u) ? Relation::kEqual : Relation::kLessEqual,
                         0.0};
      for (int tj = 0; tj < opp_types; ++tj) {
        const double b = view.belief(player, ti, tj);
        if (b == 0.0) continue;
        for (int aj = 0; aj < opp_actions; ++aj) {
          if (var[tj][aj] < 0) continue;
          c.coefficients[var[tj][aj]] +=
              b * (own_payoff(view, player, a, aj, ti, tj) - own_payoff(view, player, ref, aj, ti, tj));
        }
      }
      rows.push_back(std::move(c));
    }
  }

  auto sol = find_feasible_point(n, rows, tolerance);
  if (!sol) return std::nullopt;
  TypeStrategies out(opp_types, std::vector<double>(opp_actions, 0.0));
  for (int tj = 0; tj < opp_types; ++tj) {
    for (int a = 0; a < opp_actions; ++a) {
      if (var[tj][a] >= 0) out[tj][a] = (*sol)[var[tj][a]];
    }
  }
  return out;
}

void clean_strategy(TypeStrategies& s) {
  for (auto& dist : s) {
    double sum = 0.0;
    for (double& p : dist) {
      if (p <= kPruneThreshold) p = 0.0;
      sum += p;
    }
    if (sum > 0.0) {
      for (double& p : dist) p /= sum;
    }
  }
}

double payoff_scale(const StageGameView& view) {
  double s = 1.0;
  for (double v : view.payoffs) s = std::max(s, std::abs(v));
  return s;
}

double alpha_of(const SolverConfig& config, int player, int type) {
  return config.alpha[player].empty() ? 1.0 : config.alpha[player][type];
}

void check_config(const StageGameView& view, const SolverConfig& config) {
  for (int i = 0; i < kNumPlayers; ++i) {
    if (config.alpha[i].empty()) continue;
    if (static_cast<int>(config.alpha[i].size()) != view.num_types[i]) {
      throw SolverError("alpha weights do not match the type count");
    }
    for (double a : config.alpha[i]) {
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw SolverError("alpha weights must be strictly positive and finite");
      }
    }
  }
  if (!(config.feasibility_tol >= 0.0)) throw SolverError("negative feasibility tolerance");
}

bool same_strategy(const StrategyPair& a, const StrategyPair& b) {
  for (int i = 0; i < kNumPlayers; ++i) {
    for (std::size_t t = 0; t < a[i].size(); ++t) {
      for (std::size_t x = 0; x < a[i][t].size(); ++x) {
        if (std::abs(a[i][t][x] - b[i][t][x]) > kDuplicateTolerance) return false;
      }
    }
  }
  return true;
}

std::vector<StaticEquilibrium> enumerate(const StageGameView& view, const SolverConfig& config,
                                         bool stop_at_first) {
  check_view(view);
  check_config(view, config);
  const auto combos1 = player_combos(view.num_actions[0], view.num_types[0]);
  const auto combos2 = player_combos(view.num_actions[1], view.num_types[1]);
  std::vector<int> size1(combos1.size());
  std::vector<int> size2(combos2.size());
  for (std::size_t c = 0; c < combos1.size(); ++c) size1[c] = combo_size(combos1[c]);
  for (std::size_t c = 0; c < combos2.size(); ++c) size2[c] = combo_size(combos2[c]);
  const int min_size = view.num_types[0] + view.num_types[1];
  const int max_size =
      view.num_types[0] * view.num_actions[0] + view.num_types[1] * view.num_actions[1];
  const double accept = config.feasibility_tol * payoff_scale(view);

  std::vector<StaticEquilibrium> found;
  for (int total = min_size; total <= max_size; ++total) {
    for (std::size_t c1 = 0; c1 < combos1.size(); ++c1) {
      for (std::size_t c2 = 0; c2 < combos2.size(); ++c2) {
        if (size1[c1] + size2[c2] != total) continue;
        auto s2 = supporting_strategy(view, kDefender, combos1[c1], combos2[c2],
                                      config.feasibility_tol);
        if (!s2) continue;
        auto s1 = supporting_strategy(view, kUser, combos2[c2], combos1[c1],
                                      config.feasibility_tol);
        if (!s1) continue;
        StaticEquilibrium eq;
        eq.strategy[0] = std::move(*s1);
        eq.strategy[1] = std::move(*s2);
        clean_strategy(eq.strategy[0]);
        clean_strategy(eq.strategy[1]);
        if (verify_sbne(view, eq.strategy) > accept) continue;
        bool duplicate = false;
        for (const StaticEquilibrium& prev : found) {
          if (same_strategy(prev.strategy, eq.strategy)) duplicate = true;
        }
        if (duplicate) continue;
        for (int i = 0; i < kNumPlayers; ++i) {
          for (int t = 0; t < view.num_types[i]; ++t) {
            eq.value[i].push_back(interim_payoff(view, eq.strategy, i, t));
            std::uint32_t mask = 0;
            for (int a = 0; a < view.num_actions[i]; ++a) {
              if (eq.strategy[i][t][a] > 0.0) mask |= 1u << a;
            }
            eq.support[i].push_back(mask);
          }
        }
        eq.residual = certificate_residual(view, eq.strategy, config);
        found.push_back(std::move(eq));
        if (stop_at_first) return found;
      }
    }
  }
  return found;
}

}  // namespace

StageGameView StageGameView::make(int actions1, int actions2, int types1, int types2) {
  StageGameView v;
  v.num_actions = {actions1, actions2};
  v.num_types = {types1, types2};
  v.payoffs.assign(static_cast<std::size_t>(actions1) * actions2 * types1 * types2 * kNumPlayers,
                   0.0);
  v.beliefs[0].assign(static_cast<std::size_t>(types1) * types2, 1.0 / types2);
  v.beliefs[1].assign(static_cast<std::size_t>(types2) * types1, 1.0 / types1);
  return v;
}

void check_view(const StageGameView& view) {
  for (int i = 0; i < kNumPlayers; ++i) {
    if (view.num_actions[i] < 1 || view.num_actions[i] > 16) {
      throw SolverError("action count out of range for player " + std::to_string(i));
    }
    if (view.num_types[i] < 1) throw SolverError("empty type set");
  }
  const std::size_t expected = static_cast<std::size_t>(view.num_actions[0]) *
                               view.num_actions[1] * view.num_types[0] * view.num_types[1] *
                               kNumPlayers;
  if (view.payoffs.size() != expected) throw SolverError("payoff tensor has the wrong extent");
  for (double v : view.payoffs) {
    if (!std::isfinite(v)) throw SolverError("payoff is not finite");
  }
  for (int i = 0; i < kNumPlayers; ++i) {
    const int opp_types = view.num_types[opponent(i)];
    if (view.beliefs[i].size() != static_cast<std::size_t>(view.num_types[i]) * opp_types) {
      throw SolverError("belief table has the wrong extent");
    }
    for (int t = 0; t < view.num_types[i]; ++t) {
      double sum = 0.0;
      for (int j = 0; j < opp_types; ++j) {
        const double b = view.belief(i, t, j);
        if (!(b >= 0.0) || !std::isfinite(b)) throw SolverError("belief entry out of range");
        sum += b;
      }
      if (std::abs(sum - 1.0) > 1e-9) throw SolverError("belief slice is not normalized");
    }
  }
}

double action_payoff(const StageGameView& view, const StrategyPair& strategy, int player,
                     int own_type, int action) {
  const int opp = opponent(player);
  double total = 0.0;
  for (int tj = 0; tj < view.num_types[opp]; ++tj) {
    const double b = view.belief(player, own_type, tj);
    if (b == 0.0) continue;
    double inner = 0.0;
    for (int aj = 0; aj < view.num_actions[opp]; ++aj) {
      const double p = strategy[opp][tj][aj];
      if (p == 0.0) continue;
      inner += p * own_payoff(view, player, action, aj, own_type, tj);
    }
    total += b * inner;
  }
  return total;
}

double interim_payoff(const StageGameView& view, const StrategyPair& strategy, int player,
                      int own_type) {
  double total = 0.0;
  for (int a = 0; a < view.num_actions[player]; ++a) {
    const double p = strategy[player][own_type][a];
    if (p == 0.0) continue;
    total += p * action_payoff(view, strategy, player, own_type, a);
  }
  return total;
}

double verify_sbne(const StageGameView& view, const StrategyPair& strategy) {
  double gain = 0.0;
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int t = 0; t < view.num_types[i]; ++t) {
      const double current = interim_payoff(view, strategy, i, t);
      for (int a = 0; a < view.num_actions[i]; ++a) {
        gain = std::max(gain, action_payoff(view, strategy, i, t, a) - current);
      }
    }
  }
  return gain;
}

double certificate_residual(const StageGameView& view, const StrategyPair& strategy,
                            const SolverConfig& config) {
  double residual = 0.0;
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int t = 0; t < view.num_types[i]; ++t) {
      double best = action_payoff(view, strategy, i, t, 0);
      for (int a = 1; a < view.num_actions[i]; ++a) {
        best = std::max(best, action_payoff(view, strategy, i, t, a));
      }
      residual += alpha_of(config, i, t) * (best - interim_payoff(view, strategy, i, t));
    }
  }
  return std::max(0.0, residual);
}

StaticEquilibrium solve_sbne(const StageGameView& view, const SolverConfig& config) {
  auto found = enumerate(view, config, !config.enumerate_all);
  if (found.empty()) throw SolverError("support enumeration found no equilibrium");
  return std::move(found.front());
}

std::vector<StaticEquilibrium> solve_sbne_all(const StageGameView& view,
                                              const SolverConfig& config) {
  auto found = enumerate(view, config, false);
  if (found.empty()) throw SolverError("support enumeration found no equilibrium");
  return found;
}

}  // namespace pbne
