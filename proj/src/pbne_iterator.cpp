#include "pbne/pbne_iterator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pbne {

using nlohmann::ordered_json;

namespace {

const char* player_name(int i) { return i == kDefender ? "defender" : "user"; }

BeliefTable initial_beliefs(const MultiStageGame& game, const PbneConfig& config) {
  switch (config.initial_rule) {
    case InitialBeliefRule::kUniform:
      return BeliefTable::uniform(game);
    case InitialBeliefRule::kPriorFromGame:
      return BeliefTable::from_priors(game);
    case InitialBeliefRule::kExplicit:
      return *config.initial_beliefs;
  }
  return BeliefTable::from_priors(game);
}

BeliefTable blend(const BeliefTable& a, const BeliefTable& b, double weight_a) {
  BeliefTable out = a;
  for (int i = 0; i < kNumPlayers; ++i) {
    for (std::size_t k = 0; k < a.belief[i].size(); ++k) {
      SliceTable& dst = out.belief[i][k];
      const SliceTable& src = b.belief[i][k];
      for (int x = 0; x < dst.num_states(); ++x) {
        for (int t = 0; t < dst.num_types(); ++t) {
          auto d = dst.slice(x, t);
          auto s = src.slice(x, t);
          for (std::size_t j = 0; j < d.size(); ++j) d[j] = weight_a * d[j] + (1.0 - weight_a) * s[j];
        }
      }
    }
  }
  return out;
}

bool better(double eps, double change, double best_eps, double best_change) {
  if (eps != best_eps) return eps < best_eps;
  return change < best_change;
}

}  // namespace

void validate_config(const MultiStageGame& game, const PbneConfig& config) {
  if (config.iter_num < 1) throw std::invalid_argument("iteration limit must be at least 1");
  if (!(config.epsilon_target >= 0.0)) throw std::invalid_argument("epsilon target must be >= 0");
  if (!(config.belief_tolerance >= 0.0)) {
    throw std::invalid_argument("belief tolerance must be >= 0");
  }
  if (config.damping_patience < 1) throw std::invalid_argument("damping patience must be >= 1");
  if (!(config.damping_factor > 0.0 && config.damping_factor < 1.0)) {
    throw std::invalid_argument("damping factor must lie in (0, 1)");
  }
  if (config.initial_rule == InitialBeliefRule::kExplicit) {
    if (!config.initial_beliefs) throw std::invalid_argument("explicit rule needs a belief table");
    ValidationReport r = validate_beliefs(game, *config.initial_beliefs);
    if (!r.ok()) {
      throw std::invalid_argument("initial beliefs: " + r.violations.front().location + ": " +
                                  r.violations.front().message);
    }
  }
}

EquilibriumReport solve_pbne(const MultiStageGame& game, int x0, const PbneConfig& config) {
  validate_config(game, config);
  if (x0 < 0 || x0 >= game.num_states(0)) throw GameError("invalid initial state");

  EquilibriumReport best;
  best.x0 = x0;
  double best_eps = std::numeric_limits<double>::infinity();
  double best_change = std::numeric_limits<double>::infinity();
  std::vector<IterationRecord> trace;

  BeliefTable current = initial_beliefs(game, config);
  double lowest_change = std::numeric_limits<double>::infinity();
  int stalled = 0;
  bool converged = false;

  for (int it = 1; it <= config.iter_num; ++it) {
    DynamicEquilibrium dyn = backward_pass(game, current, config.solver);
    ForwardDiagnostics diag;
    BeliefTable next = forward_beliefs(game, dyn.strategies, x0, &diag);
    const double eps = measure_epsilon(game, dyn.strategies, next);
    const double change = max_abs_difference(next.belief, current.belief);

    IterationRecord rec{it, eps, change, false};
    if (better(eps, change, best_eps, best_change)) {
      best_eps = eps;
      best_change = change;
      best.strategies = dyn.strategies;
      best.beliefs = next;
      best.belief_change = change;
      best.best_iterate = it;
      best.diagnostics = diag;
      best.max_residual = 0.0;
      for (const auto& row : dyn.residuals) {
        for (double r : row) best.max_residual = std::max(best.max_residual, r);
      }
    }
    if (eps <= config.epsilon_target && change <= config.belief_tolerance) {
      trace.push_back(rec);
      // Report the iterate that met the criterion even if an earlier one had
      // a smaller epsilon.
      best.strategies = dyn.strategies;
      best.beliefs = std::move(next);
      best.belief_change = change;
      best.best_iterate = it;
      best.diagnostics = std::move(diag);
      best.max_residual = 0.0;
      for (const auto& row : dyn.residuals) {
        for (double r : row) best.max_residual = std::max(best.max_residual, r);
      }
      converged = true;
      break;
    }

    // A cycle never sets a new low, so count against the smallest change
    // since the last damping step.
    stalled = change >= lowest_change ? stalled + 1 : 0;
    lowest_change = std::min(lowest_change, change);
    if (stalled >= config.damping_patience) {
      current = blend(current, next, config.damping_factor);
      rec.damped = true;
      stalled = 0;
      lowest_change = std::numeric_limits<double>::infinity();
    } else {
      current = std::move(next);
    }
    trace.push_back(rec);
  }

  best.trace = std::move(trace);
  best.converged = converged;
  best.epsilon = check_sequential_rationality(game, best.strategies, best.beliefs);
  best.discrepancy = check_belief_consistency(game, best.strategies, best.beliefs, x0);
  best.values = cumulative_utilities(game, best.strategies, best.beliefs);
  return best;
}

double check_belief_consistency(const MultiStageGame& game, const StrategyProfile& strategies,
                                const BeliefTable& beliefs, int x0) {
  const BeliefTable induced = forward_beliefs(game, strategies, x0);
  return max_abs_difference(beliefs.belief, induced.belief);
}

double check_sequential_rationality(const MultiStageGame& game, const StrategyProfile& strategies,
                                    const BeliefTable& beliefs) {
  return measure_epsilon(game, strategies, beliefs);
}

ordered_json report_to_json(const MultiStageGame& game, const EquilibriumReport& report) {
  ordered_json doc;
  doc["x0"] = game.stages[0].states[report.x0];
  doc["converged"] = report.converged;
  doc["epsilon"] = report.epsilon;
  doc["discrepancy"] = report.discrepancy;
  doc["belief_change"] = report.belief_change;
  doc["max_certificate_residual"] = report.max_residual;
  doc["iterations"] = report.trace.size();
  doc["best_iterate"] = report.best_iterate;

  ordered_json trace = ordered_json::array();
  for (const IterationRecord& r : report.trace) {
    trace.push_back({{"iteration", r.iteration},
                     {"epsilon", r.epsilon},
                     {"belief_change", r.belief_change},
                     {"damped", r.damped}});
  }
  doc["trace"] = std::move(trace);

  ordered_json strategies = ordered_json::object();
  ordered_json beliefs = ordered_json::object();
  ordered_json values = ordered_json::object();
  for (int i = 0; i < kNumPlayers; ++i) {
    const int j = opponent(i);
    ordered_json ps = ordered_json::array();
    ordered_json pb = ordered_json::array();
    ordered_json pv = ordered_json::array();
    for (int k = 0; k < game.num_stages(); ++k) {
      ordered_json ss = ordered_json::object();
      ordered_json sb = ordered_json::object();
      ordered_json sv = ordered_json::object();
      for (int x = 0; x < game.num_states(k); ++x) {
        ordered_json ts = ordered_json::object();
        ordered_json tb = ordered_json::object();
        ordered_json tv = ordered_json::object();
        for (int t = 0; t < game.num_types(i); ++t) {
          ordered_json dist = ordered_json::object();
          auto s = report.strategies.at(i, k, x, t);
          for (int a = 0; a < game.num_actions(k, i); ++a) dist[game.stages[k].actions[i][a]] = s[a];
          ts[game.types[i][t]] = std::move(dist);
          ordered_json bel = ordered_json::object();
          auto b = report.beliefs.at(i, k, x, t);
          for (int o = 0; o < game.num_types(j); ++o) bel[game.types[j][o]] = b[o];
          tb[game.types[i][t]] = std::move(bel);
          tv[game.types[i][t]] = report.values.at(i, k, x, t);
        }
        ss[game.stages[k].states[x]] = std::move(ts);
        sb[game.stages[k].states[x]] = std::move(tb);
        sv[game.stages[k].states[x]] = std::move(tv);
      }
      ps.push_back(std::move(ss));
      pb.push_back(std::move(sb));
      pv.push_back(std::move(sv));
    }
    strategies[player_name(i)] = std::move(ps);
    beliefs[player_name(i)] = std::move(pb);
    values[player_name(i)] = std::move(pv);
  }
  doc["strategies"] = std::move(strategies);
  doc["beliefs"] = std::move(beliefs);
  doc["values"] = std::move(values);

  doc["diagnostics"] = {{"fallbacks", report.diagnostics.fallbacks},
                        {"predecessor_merges", report.diagnostics.predecessor_merges},
                        {"notes", report.diagnostics.notes}};
  return doc;
}

}  // namespace pbne
