#include "pbne/experiments.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pbne/belief.hpp"

namespace pbne {

namespace {

// First index whose cumulative probability exceeds u; zero-probability
// entries are never returned.
int sample_index(std::span<const double> dist, double u) {
  double cum = 0.0;
  int last = -1;
  for (std::size_t n = 0; n < dist.size(); ++n) {
    if (dist[n] <= 0.0) continue;
    last = static_cast<int>(n);
    cum += dist[n];
    if (u < cum) return last;
  }
  if (last < 0) throw std::invalid_argument("cannot sample from an all-zero distribution");
  return last;
}

std::string bool_text(bool b) { return b ? "1" : "0"; }

void check_state(const MultiStageGame& game, int x0) {
  if (x0 < 0 || x0 >= game.num_states(0)) throw GameError("invalid initial state");
}

}  // namespace

std::vector<double> Grid::values() const {
  validate_grid(*this);
  std::vector<double> out(points);
  for (int n = 0; n < points; ++n) {
    out[n] = n == points - 1 ? stop : start + (stop - start) * n / (points - 1);
  }
  return out;
}

void validate_grid(const Grid& grid) {
  if (grid.points < 2) throw std::invalid_argument("a grid needs at least 2 points");
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
}

std::vector<double> shift_mass(std::span<const double> reference, int target, double mass) {
  const int n = static_cast<int>(reference.size());
  if (target < 0 || target >= n) throw std::invalid_argument("target type out of range");
  if (!(mass >= 0.0 && mass <= 1.0)) throw std::invalid_argument("mass must lie in [0, 1]");
  std::vector<double> out(n, 0.0);
  out[target] = mass;
  if (n == 1) {
    out[target] = 1.0;
    return out;
  }
  double rest = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j != target) rest += reference[j];
  }
  for (int j = 0; j < n; ++j) {
    if (j == target) continue;
    out[j] = rest > 0.0 ? (1.0 - mass) * reference[j] / rest : (1.0 - mass) / (n - 1);
  }
  return out;
}

StageGameView stage_view_with_beliefs(const MultiStageGame& game, int k, int x,
                                      const std::array<std::vector<std::vector<double>>, 2>& beliefs) {
  const int n1 = game.num_actions(k, kDefender);
  const int n2 = game.num_actions(k, kUser);
  StageGameView view =
      StageGameView::make(n1, n2, game.num_types(kDefender), game.num_types(kUser));
  for (int a1 = 0; a1 < n1; ++a1) {
    for (int a2 = 0; a2 < n2; ++a2) {
      for (int t1 = 0; t1 < game.num_types(kDefender); ++t1) {
        for (int t2 = 0; t2 < game.num_types(kUser); ++t2) {
          for (int i = 0; i < kNumPlayers; ++i) {
            view.payoff(a1, a2, t1, t2, i) = game.utility(k, x, a1, a2, t1, t2, i);
          }
        }
      }
    }
  }
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int t = 0; t < game.num_types(i); ++t) {
      for (int j = 0; j < game.num_types(opponent(i)); ++j) {
        view.belief(i, t, j) = beliefs[i][t][j];
      }
    }
  }
  return view;
}

CsvTable sweep_static_belief(const MultiStageGame& game, const BeliefSweepSpec& spec) {
  const int k = spec.stage < 0 ? game.horizon : spec.stage;
  if (k > game.horizon) throw std::invalid_argument("stage out of range");
  if (spec.state < 0 || spec.state >= game.num_states(k)) {
    throw std::invalid_argument("state out of range");
  }
  const int swept = spec.swept_player;
  const int other = opponent(swept);
  if (spec.target_type < 0 || spec.target_type >= game.num_types(other)) {
    throw std::invalid_argument("target type out of range");
  }
  if (spec.other_belief && static_cast<int>(spec.other_belief->size()) != game.num_types(swept)) {
    throw std::invalid_argument("fixed belief has the wrong size");
  }

  CsvTable table;
  table.header.push_back("belief");
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int t = 0; t < game.num_types(i); ++t) {
      for (int a = 0; a < game.num_actions(k, i); ++a) {
        table.header.push_back(std::string("p_") + player_label(i) + "_" + game.types[i][t] + "_" +
                               game.stages[k].actions[i][a]);
      }
    }
  }
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int t = 0; t < game.num_types(i); ++t) {
      table.header.push_back(std::string("value_") + player_label(i) + "_" + game.types[i][t]);
    }
  }
  table.header.push_back("support_change");

  std::optional<std::array<std::vector<std::uint32_t>, kNumPlayers>> previous;
  for (double g : spec.grid.values()) {
    std::array<std::vector<std::vector<double>>, 2> beliefs;
    for (int t = 0; t < game.num_types(swept); ++t) {
      beliefs[swept].push_back(shift_mass(game.priors[swept][t], spec.target_type, g));
    }
    for (int t = 0; t < game.num_types(other); ++t) {
      beliefs[other].push_back(spec.other_belief ? *spec.other_belief : game.priors[other][t]);
    }
    StaticEquilibrium eq;
    try {
      eq = solve_sbne(stage_view_with_beliefs(game, k, spec.state, beliefs), spec.solver);
    } catch (const SolverError& e) {
      throw SolverError("grid point " + format_number(g) + ": " + e.what());
    }
    std::vector<std::string> row{format_number(g)};
    for (int i = 0; i < kNumPlayers; ++i) {
      for (const auto& dist : eq.strategy[i]) {
        for (double p : dist) row.push_back(format_number(p));
      }
    }
    for (int i = 0; i < kNumPlayers; ++i) {
      for (double v : eq.value[i]) row.push_back(format_number(v));
    }
    row.push_back(bool_text(previous && *previous != eq.support));
    previous = eq.support;
    table.add_row(std::move(row));
  }
  return table;
}

CsvTable sweep_sensitivity(const TEParams& base, const SensitivitySpec& spec) {
  CsvTable table{{"value", "state", "defender_utility", "user_utility"}, {}};
  for (double v : spec.grid.values()) {
    TEParams p = base;
    set_param(p, spec.param, v);
    const MultiStageGame game = build_te_game(p);
    const int k = game.horizon;
    std::array<std::vector<std::vector<double>>, 2> beliefs;
    for (int t = 0; t < game.num_types(kDefender); ++t) {
      std::vector<double> b(game.num_types(kUser), 0.0);
      b[spec.user_type] = 1.0;
      beliefs[kDefender].push_back(b);
    }
    for (int t = 0; t < game.num_types(kUser); ++t) {
      std::vector<double> b(game.num_types(kDefender), 0.0);
      b[spec.defender_type] = 1.0;
      beliefs[kUser].push_back(b);
    }
    for (int x = 0; x < game.num_states(k); ++x) {
      const StaticEquilibrium eq =
          solve_sbne(stage_view_with_beliefs(game, k, x, beliefs), spec.solver);
      table.add_row({format_number(v), game.stages[k].states[x],
                     format_number(eq.value[kDefender][spec.defender_type]),
                     format_number(eq.value[kUser][spec.user_type])});
    }
  }
  return table;
}

MultiStageGame with_prior_mass(const MultiStageGame& game, int player, int target, double mass) {
  MultiStageGame out = game;
  for (auto& slice : out.priors[player]) slice = shift_mass(slice, target, mass);
  return out;
}

std::vector<std::vector<double>> joint_type_distribution(const MultiStageGame& game) {
  const int n1 = game.num_types(kDefender);
  const int n2 = game.num_types(kUser);
  std::vector<double> marginal(n1, 0.0);
  for (int t2 = 0; t2 < n2; ++t2) {
    for (int t1 = 0; t1 < n1; ++t1) marginal[t1] += game.priors[kUser][t2][t1] / n2;
  }
  std::vector<std::vector<double>> joint(n1, std::vector<double>(n2, 0.0));
  for (int t1 = 0; t1 < n1; ++t1) {
    for (int t2 = 0; t2 < n2; ++t2) joint[t1][t2] = marginal[t1] * game.priors[kDefender][t1][t2];
  }
  return joint;
}

std::vector<std::vector<double>> reach_probabilities(const MultiStageGame& game,
                                                     const StrategyProfile& strategies, int x0,
                                                     int t1, int t2) {
  check_state(game, x0);
  std::vector<std::vector<double>> reach(game.num_stages());
  reach[0].assign(game.num_states(0), 0.0);
  reach[0][x0] = 1.0;
  for (int k = 0; k < game.horizon; ++k) {
    reach[k + 1].assign(game.num_states(k + 1), 0.0);
    for (int x = 0; x < game.num_states(k); ++x) {
      if (reach[k][x] == 0.0) continue;
      auto s1 = strategies.at(kDefender, k, x, t1);
      auto s2 = strategies.at(kUser, k, x, t2);
      for (int a1 = 0; a1 < game.num_actions(k, kDefender); ++a1) {
        for (int a2 = 0; a2 < game.num_actions(k, kUser); ++a2) {
          reach[k + 1][game.next_state(k, x, a1, a2)] += reach[k][x] * s1[a1] * s2[a2];
        }
      }
    }
  }
  return reach;
}

std::array<double, kNumPlayers> evaluate_matchup(const MultiStageGame& game,
                                                 const StrategyProfile& strategies, int x0,
                                                 int t1, int t2) {
  const auto reach = reach_probabilities(game, strategies, x0, t1, t2);
  std::array<double, kNumPlayers> total{0.0, 0.0};
  for (int k = 0; k < game.num_stages(); ++k) {
    for (int x = 0; x < game.num_states(k); ++x) {
      if (reach[k][x] == 0.0) continue;
      auto s1 = strategies.at(kDefender, k, x, t1);
      auto s2 = strategies.at(kUser, k, x, t2);
      for (int a1 = 0; a1 < game.num_actions(k, kDefender); ++a1) {
        for (int a2 = 0; a2 < game.num_actions(k, kUser); ++a2) {
          const double w = reach[k][x] * s1[a1] * s2[a2];
          if (w == 0.0) continue;
          for (int i = 0; i < kNumPlayers; ++i) total[i] += w * game.utility(k, x, a1, a2, t1, t2, i);
        }
      }
    }
  }
  return total;
}

std::vector<double> final_state_distribution(const MultiStageGame& game,
                                             const StrategyProfile& strategies, int x0) {
  const auto joint = joint_type_distribution(game);
  std::vector<double> out(game.num_states(game.horizon), 0.0);
  for (int t1 = 0; t1 < game.num_types(kDefender); ++t1) {
    for (int t2 = 0; t2 < game.num_types(kUser); ++t2) {
      if (joint[t1][t2] == 0.0) continue;
      const auto reach = reach_probabilities(game, strategies, x0, t1, t2);
      for (std::size_t x = 0; x < out.size(); ++x) out[x] += joint[t1][t2] * reach.back()[x];
    }
  }
  return out;
}

std::vector<PosteriorRow> posterior_vs_prior(const MultiStageGame& game,
                                             const PriorSweepSpec& spec) {
  check_state(game, spec.x0);
  const int i = spec.player;
  const int j = opponent(i);
  if (spec.target_type < 0 || spec.target_type >= game.num_types(j)) {
    throw std::invalid_argument("target type out of range");
  }
  std::vector<PosteriorRow> rows;
  for (double g : spec.grid.values()) {
    const MultiStageGame swept = with_prior_mass(game, i, spec.target_type, g);
    const EquilibriumReport report = solve_pbne(swept, spec.x0, spec.pbne);
    // Weight of each own type given the opponent is the target type.
    const auto joint = joint_type_distribution(swept);
    std::vector<double> weight(game.num_types(i), 0.0);
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      weight[ti] = i == kDefender ? joint[ti][spec.target_type] : joint[spec.target_type][ti];
    }
    double wsum = std::accumulate(weight.begin(), weight.end(), 0.0);
    if (wsum <= 0.0) {
      std::fill(weight.begin(), weight.end(), 1.0);
      wsum = static_cast<double>(weight.size());
    }
    double posterior = 0.0;
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      const int t1 = i == kDefender ? ti : spec.target_type;
      const int t2 = i == kDefender ? spec.target_type : ti;
      const auto reach = reach_probabilities(swept, report.strategies, spec.x0, t1, t2);
      double p = 0.0;
      for (int x = 0; x < game.num_states(game.horizon); ++x) {
        p += reach.back()[x] * report.beliefs.at(i, game.horizon, x, ti)[spec.target_type];
      }
      posterior += weight[ti] / wsum * p;
    }
    rows.push_back({g, posterior, report.converged});
  }
  return rows;
}

CsvTable posterior_table(const std::vector<PosteriorRow>& rows) {
  CsvTable t{{"prior", "posterior", "converged"}, {}};
  for (const PosteriorRow& r : rows) {
    t.add_row({format_number(r.prior), format_number(r.posterior), bool_text(r.converged)});
  }
  return t;
}

CsvTable state_distribution(const MultiStageGame& game, const PriorSweepSpec& spec) {
  check_state(game, spec.x0);
  CsvTable t{{"prior", "state", "probability", "converged"}, {}};
  for (double g : spec.grid.values()) {
    const MultiStageGame swept = with_prior_mass(game, spec.player, spec.target_type, g);
    const EquilibriumReport report = solve_pbne(swept, spec.x0, spec.pbne);
    const auto dist = final_state_distribution(swept, report.strategies, spec.x0);
    for (std::size_t x = 0; x < dist.size(); ++x) {
      t.add_row({format_number(g), game.stages[game.horizon].states[x], format_number(dist[x]),
                 bool_text(report.converged)});
    }
  }
  return t;
}

std::vector<InfoRow> compare_information_structures(const MultiStageGame& game,
                                                    const std::vector<int>& x0_values,
                                                    const PbneConfig& config) {
  const int n1 = game.num_types(kDefender);
  const int n2 = game.num_types(kUser);
  auto point_mass = [](int n, int at) {
    std::vector<double> v(n, 0.0);
    v[at] = 1.0;
    return v;
  };
  std::vector<InfoRow> rows;
  auto emit = [&](const std::string& regime, int x0, int t1, int t2,
                  const EquilibriumReport& report, const MultiStageGame& g) {
    const auto u = evaluate_matchup(g, report.strategies, x0, t1, t2);
    for (int i = 0; i < kNumPlayers; ++i) {
      rows.push_back({regime, game.stages[0].states[x0], game.types[kDefender][t1],
                      game.types[kUser][t2], player_label(i), u[i], report.converged});
    }
  };
  for (int x0 : x0_values) {
    check_state(game, x0);
    const EquilibriumReport both = solve_pbne(game, x0, config);
    for (int t1 = 0; t1 < n1; ++t1) {
      MultiStageGame one_sided = game;
      for (auto& slice : one_sided.priors[kUser]) slice = point_mass(n1, t1);
      const EquilibriumReport one = solve_pbne(one_sided, x0, config);
      for (int t2 = 0; t2 < n2; ++t2) {
        MultiStageGame complete = one_sided;
        for (auto& slice : complete.priors[kDefender]) slice = point_mass(n2, t2);
        const EquilibriumReport full = solve_pbne(complete, x0, config);
        emit("complete", x0, t1, t2, full, complete);
        emit("one-sided", x0, t1, t2, one, one_sided);
        emit("double-sided", x0, t1, t2, both, game);
      }
    }
  }
  return rows;
}

CsvTable info_table(const std::vector<InfoRow>& rows) {
  CsvTable t{{"regime", "x0", "defender_type", "user_type", "player", "utility", "converged"}, {}};
  for (const InfoRow& r : rows) {
    t.add_row({r.regime, r.x0, r.defender_type, r.user_type, r.player, format_number(r.utility),
               bool_text(r.converged)});
  }
  return t;
}

double counter_uniform(std::uint64_t seed, std::uint64_t episode, std::uint64_t stride,
                       std::uint64_t draw) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (episode * stride + draw + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

RolloutResult rollout(const MultiStageGame& game, const StrategyProfile& strategies,
                      const RolloutSpec& spec) {
  if (spec.episodes < 1) throw std::invalid_argument("episode count must be at least 1");
  check_state(game, spec.x0);
  const int n1 = game.num_types(kDefender);
  const int n2 = game.num_types(kUser);
  const auto joint = joint_type_distribution(game);
  std::vector<double> flat;
  for (const auto& row : joint) flat.insert(flat.end(), row.begin(), row.end());
  const std::uint64_t stride = 2 * static_cast<std::uint64_t>(game.horizon + 1) + 1;
  const int final_states = game.num_states(game.horizon);

  std::array<std::vector<double>, kNumPlayers> sum, sum_sq;
  RolloutResult out;
  for (int i = 0; i < kNumPlayers; ++i) {
    const int nt = i == kDefender ? n1 : n2;
    sum[i].assign(nt, 0.0);
    sum_sq[i].assign(nt, 0.0);
    out.count[i].assign(nt, 0);
  }
  std::vector<std::int64_t> final_count(final_states, 0);

  for (std::int64_t e = 0; e < spec.episodes; ++e) {
    const auto ep = static_cast<std::uint64_t>(e);
    const int pair = sample_index(flat, counter_uniform(spec.seed, ep, stride, 0));
    const int t1 = pair / n2;
    const int t2 = pair % n2;
    int x = spec.x0;
    std::array<double, kNumPlayers> total{0.0, 0.0};
    for (int k = 0; k <= game.horizon; ++k) {
      const int a1 = sample_index(strategies.at(kDefender, k, x, t1),
                                  counter_uniform(spec.seed, ep, stride, 2 * k + 1));
      const int a2 = sample_index(strategies.at(kUser, k, x, t2),
                                  counter_uniform(spec.seed, ep, stride, 2 * k + 2));
      for (int i = 0; i < kNumPlayers; ++i) total[i] += game.utility(k, x, a1, a2, t1, t2, i);
      if (k < game.horizon) x = game.next_state(k, x, a1, a2);
    }
    ++final_count[x];
    const std::array<int, kNumPlayers> own{t1, t2};
    for (int i = 0; i < kNumPlayers; ++i) {
      sum[i][own[i]] += total[i];
      sum_sq[i][own[i]] += total[i] * total[i];
      ++out.count[i][own[i]];
    }
  }

  for (int i = 0; i < kNumPlayers; ++i) {
    const std::size_t nt = sum[i].size();
    out.mean[i].assign(nt, 0.0);
    out.std_error[i].assign(nt, 0.0);
    for (std::size_t t = 0; t < nt; ++t) {
      const auto n = static_cast<double>(out.count[i][t]);
      if (n == 0) continue;
      const double mean = sum[i][t] / n;
      out.mean[i][t] = mean;
      if (n > 1) {
        const double var = std::max(0.0, (sum_sq[i][t] - n * mean * mean) / (n - 1));
        out.std_error[i][t] = std::sqrt(var / n);
      }
    }
  }
  const auto episodes = static_cast<double>(spec.episodes);
  for (int x = 0; x < final_states; ++x) {
    const double p = final_count[x] / episodes;
    out.final_state_probability.push_back(p);
    out.final_state_std_error.push_back(std::sqrt(p * (1.0 - p) / episodes));
  }
  return out;
}

CsvTable rollout_table(const MultiStageGame& game, const RolloutResult& result) {
  CsvTable t{{"kind", "player", "type", "state", "count", "mean", "std_error"}, {}};
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      t.add_row({"utility", player_label(i), game.types[i][ti], "",
                 std::to_string(result.count[i][ti]), format_number(result.mean[i][ti]),
                 format_number(result.std_error[i][ti])});
    }
  }
  for (int x = 0; x < game.num_states(game.horizon); ++x) {
    t.add_row({"final_state", "", "", game.stages[game.horizon].states[x], "",
               format_number(result.final_state_probability[x]),
               format_number(result.final_state_std_error[x])});
  }
  return t;
}

}  // namespace pbne
