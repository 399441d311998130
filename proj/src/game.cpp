#include "pbne/game.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pbne {

namespace {

constexpr double kProbabilityTolerance = 1e-9;

int find_label(const Labels& labels, std::string_view label, const std::string& what) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw GameError("unknown " + what + " '" + std::string(label) + "'");
  }
  return static_cast<int>(it - labels.begin());
}

void check_stage(const MultiStageGame& game, int k) {
  if (k < 0 || k >= game.num_stages()) {
    throw GameError("stage " + std::to_string(k) + " out of range");
  }
}

std::string stage_loc(int k) { return "stages[" + std::to_string(k) + "]"; }

void check_labels(const Labels& labels, const std::string& loc, ValidationReport& report) {
  if (labels.empty()) {
    report.violations.push_back({loc, "nonempty", "label list is empty"});
    return;
  }
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    report.violations.push_back({loc, "unique-labels", "duplicate labels"});
  }
}

void check_distribution(std::span<const double> dist, const std::string& loc,
                        const std::string& what, ValidationReport& report) {
  double sum = 0.0;
  for (double p : dist) {
    if (!std::isfinite(p)) {
      report.violations.push_back({loc, "finite", what + " has a non-finite entry"});
      return;
    }
    if (p < 0.0) {
      report.violations.push_back({loc, "nonnegative", what + " has a negative entry"});
      return;
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    report.violations.push_back(
        {loc, "normalized", what + " sums to " + std::to_string(sum) + ", expected 1"});
  }
}

}  // namespace

void MultiStageGame::allocate() {
  for (int k = 0; k < num_stages(); ++k) {
    Stage& s = stages[k];
    const std::size_t cells = s.states.size() * s.actions[0].size() * s.actions[1].size();
    s.utilities.assign(cells * types[0].size() * types[1].size() * kNumPlayers, 0.0);
    if (k < horizon) {
      s.transitions.assign(cells, 0);
    } else {
      s.transitions.clear();
    }
  }
}

int type_index(const MultiStageGame& game, int player, std::string_view label) {
  if (player < 0 || player >= kNumPlayers) throw GameError("invalid player");
  return find_label(game.types[player], label, "type");
}

int state_index(const MultiStageGame& game, int k, std::string_view label) {
  check_stage(game, k);
  return find_label(game.stages[k].states, label, "state at stage " + std::to_string(k));
}

int action_index(const MultiStageGame& game, int k, int player, std::string_view label) {
  check_stage(game, k);
  if (player < 0 || player >= kNumPlayers) throw GameError("invalid player");
  return find_label(game.stages[k].actions[player], label,
                    "action at stage " + std::to_string(k));
}

std::string transition(const MultiStageGame& game, int k, std::string_view state,
                       std::string_view defender_action, std::string_view user_action) {
  check_stage(game, k);
  if (k >= game.horizon) {
    throw GameError("no transition out of the final stage " + std::to_string(k));
  }
  const int x = state_index(game, k, state);
  const int a1 = action_index(game, k, kDefender, defender_action);
  const int a2 = action_index(game, k, kUser, user_action);
  return game.stages[k + 1].states[game.next_state(k, x, a1, a2)];
}

double stage_utility(const MultiStageGame& game, int k, std::string_view state,
                     std::string_view defender_action, std::string_view user_action,
                     std::string_view defender_type, std::string_view user_type,
                     int player) {
  check_stage(game, k);
  if (player < 0 || player >= kNumPlayers) throw GameError("invalid player");
  return game.utility(k, state_index(game, k, state),
                      action_index(game, k, kDefender, defender_action),
                      action_index(game, k, kUser, user_action),
                      type_index(game, kDefender, defender_type),
                      type_index(game, kUser, user_type), player);
}

ValidationReport validate_game(const MultiStageGame& game) {
  ValidationReport report;
  if (game.horizon < 0) {
    report.violations.push_back({"horizon", "horizon", "horizon must be nonnegative"});
    return report;
  }
  if (game.num_stages() != game.horizon + 1) {
    report.violations.push_back({"stages", "stage-count",
                                 "expected " + std::to_string(game.horizon + 1) +
                                     " stages, found " + std::to_string(game.num_stages())});
    return report;
  }
  for (int i = 0; i < kNumPlayers; ++i) {
    check_labels(game.types[i], "types[" + std::to_string(i) + "]", report);
  }
  for (int k = 0; k < game.num_stages(); ++k) {
    const Stage& s = game.stages[k];
    check_labels(s.states, stage_loc(k) + ".states", report);
    for (int i = 0; i < kNumPlayers; ++i) {
      check_labels(s.actions[i], stage_loc(k) + ".actions[" + std::to_string(i) + "]", report);
    }
  }
  if (!report.ok()) return report;

  for (int k = 0; k < game.num_stages(); ++k) {
    const Stage& s = game.stages[k];
    const std::size_t cells = s.states.size() * s.actions[0].size() * s.actions[1].size();
    const std::size_t expected =
        cells * game.types[0].size() * game.types[1].size() * kNumPlayers;
    if (s.utilities.size() != expected) {
      report.violations.push_back({stage_loc(k) + ".utilities", "tensor-extent",
                                   "expected " + std::to_string(expected) + " entries, found " +
                                       std::to_string(s.utilities.size())});
    } else {
      std::size_t bad = 0;
      for (double u : s.utilities) {
        if (!std::isfinite(u)) ++bad;
      }
      if (bad > 0) {
        report.violations.push_back({stage_loc(k) + ".utilities", "finite-utility",
                                     std::to_string(bad) + " non-finite utility entries"});
      }
    }
    if (k < game.horizon) {
      if (s.transitions.size() != cells) {
        report.violations.push_back({stage_loc(k) + ".transitions", "tensor-extent",
                                     "expected " + std::to_string(cells) + " entries"});
      } else {
        const int next_states = game.num_states(k + 1);
        for (std::size_t n = 0; n < cells; ++n) {
          if (s.transitions[n] < 0 || s.transitions[n] >= next_states) {
            report.violations.push_back({stage_loc(k) + ".transitions", "transition-range",
                                         "transition target outside the next stage's states"});
            break;
          }
        }
      }
    } else if (!s.transitions.empty()) {
      report.violations.push_back(
          {stage_loc(k) + ".transitions", "tensor-extent", "final stage has transitions"});
    }
  }

  for (int i = 0; i < kNumPlayers; ++i) {
    const auto& prior = game.priors[i];
    const std::string loc = "priors[" + std::to_string(i) + "]";
    if (prior.size() != game.types[i].size()) {
      report.violations.push_back({loc, "prior-shape", "one prior per own type required"});
      continue;
    }
    for (std::size_t t = 0; t < prior.size(); ++t) {
      const std::string row_loc = loc + "[" + std::to_string(t) + "]";
      if (prior[t].size() != game.types[opponent(i)].size()) {
        report.violations.push_back(
            {row_loc, "prior-shape", "prior must cover every opponent type"});
        continue;
      }
      check_distribution(prior[t], row_loc, "prior", report);
    }
  }
  return report;
}

StrategyProfile StrategyProfile::zeros(const MultiStageGame& game) {
  StrategyProfile p;
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int k = 0; k < game.num_stages(); ++k) {
      p.sigma[i].emplace_back(game.num_states(k), game.num_types(i), game.num_actions(k, i));
    }
  }
  return p;
}

StrategyProfile StrategyProfile::uniform(const MultiStageGame& game) {
  StrategyProfile p;
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int k = 0; k < game.num_stages(); ++k) {
      const int n = game.num_actions(k, i);
      p.sigma[i].emplace_back(game.num_states(k), game.num_types(i), n, 1.0 / n);
    }
  }
  return p;
}

ValidationReport validate_profile(const MultiStageGame& game, const StrategyProfile& profile) {
  ValidationReport report;
  for (int i = 0; i < kNumPlayers; ++i) {
    if (static_cast<int>(profile.sigma[i].size()) != game.num_stages()) {
      report.violations.push_back({"sigma", "shape", "stage count mismatch"});
      return report;
    }
    for (int k = 0; k < game.num_stages(); ++k) {
      const SliceTable& t = profile.sigma[i][k];
      if (t.num_states() != game.num_states(k) || t.num_types() != game.num_types(i) ||
          t.width() != game.num_actions(k, i)) {
        report.violations.push_back({"sigma", "shape", "slice shape mismatch"});
        return report;
      }
      for (int x = 0; x < t.num_states(); ++x) {
        for (int th = 0; th < t.num_types(); ++th) {
          check_distribution(t.slice(x, th),
                             "sigma[" + std::to_string(i) + "][" + std::to_string(k) + "][" +
                                 std::to_string(x) + "][" + std::to_string(th) + "]",
                             "strategy", report);
        }
      }
    }
  }
  return report;
}

BeliefTable BeliefTable::from_priors(const MultiStageGame& game) {
  BeliefTable b;
  for (int i = 0; i < kNumPlayers; ++i) {
    const int opp_types = game.num_types(opponent(i));
    for (int k = 0; k < game.num_stages(); ++k) {
      SliceTable table(game.num_states(k), game.num_types(i), opp_types);
      for (int x = 0; x < game.num_states(k); ++x) {
        for (int t = 0; t < game.num_types(i); ++t) {
          auto s = table.slice(x, t);
          std::copy(game.priors[i][t].begin(), game.priors[i][t].end(), s.begin());
        }
      }
      b.belief[i].push_back(std::move(table));
    }
  }
  return b;
}

BeliefTable BeliefTable::uniform(const MultiStageGame& game) {
  BeliefTable b;
  for (int i = 0; i < kNumPlayers; ++i) {
    const int opp_types = game.num_types(opponent(i));
    for (int k = 0; k < game.num_stages(); ++k) {
      b.belief[i].emplace_back(game.num_states(k), game.num_types(i), opp_types,
                               1.0 / opp_types);
    }
  }
  return b;
}

ValidationReport validate_beliefs(const MultiStageGame& game, const BeliefTable& beliefs) {
  ValidationReport report;
  for (int i = 0; i < kNumPlayers; ++i) {
    if (static_cast<int>(beliefs.belief[i].size()) != game.num_stages()) {
      report.violations.push_back({"belief", "shape", "stage count mismatch"});
      return report;
    }
    for (int k = 0; k < game.num_stages(); ++k) {
      const SliceTable& t = beliefs.belief[i][k];
      if (t.num_states() != game.num_states(k) || t.num_types() != game.num_types(i) ||
          t.width() != game.num_types(opponent(i))) {
        report.violations.push_back({"belief", "shape", "slice shape mismatch"});
        return report;
      }
      for (int x = 0; x < t.num_states(); ++x) {
        for (int th = 0; th < t.num_types(); ++th) {
          check_distribution(t.slice(x, th),
                             "belief[" + std::to_string(i) + "][" + std::to_string(k) + "][" +
                                 std::to_string(x) + "][" + std::to_string(th) + "]",
                             "belief", report);
        }
      }
    }
  }
  return report;
}

ValueTable ValueTable::zeros(const MultiStageGame& game) {
  ValueTable v;
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int k = 0; k < game.num_stages(); ++k) {
      v.value[i].emplace_back(game.num_states(k), game.num_types(i), 1);
    }
    v.value[i].emplace_back(1, game.num_types(i), 1);
  }
  return v;
}

}  // namespace pbne
