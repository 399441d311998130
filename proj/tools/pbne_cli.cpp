// Command-line driver for the equilibrium solver and experiment sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pbne/csv.hpp"
#include "pbne/experiments.hpp"
#include "pbne/pbne_iterator.hpp"
#include "pbne/scenario_io.hpp"
#include "pbne/te_scenario.hpp"

namespace {

using namespace pbne;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNotConverged = 3;

// Raised for bad user input; maps to the validation exit code.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string builtin;
  std::string scenario;
  std::string params;
  std::string x0;
  std::string out;
  std::uint64_t seed = 1;
  std::int64_t episodes = 100000;
  int iter_num = 100;
  double epsilon = 1e-6;
  double belief_tol = 1e-8;
  std::string initial = "prior";
  bool enumerate_all = false;
};

struct GridOpts {
  double start = 0.0;
  double stop = 1.0;
  int points = 11;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--builtin", c.builtin, "Built-in scenario (te)")->check(CLI::IsMember({"te"}));
  cmd->add_option("--scenario", c.scenario, "Scenario JSON file");
  cmd->add_option("--params", c.params, "TEParams JSON overrides for the built-in scenario");
  cmd->add_option("--x0", c.x0, "Initial state label");
  cmd->add_option("--out", c.out, "Output path (stdout when omitted)");
  cmd->add_option("--seed", c.seed, "Random seed for rollouts");
  cmd->add_option("--episodes", c.episodes, "Rollout episode count");
  cmd->add_option("--iter-num", c.iter_num, "Iteration limit of the PBNE loop");
  cmd->add_option("--epsilon", c.epsilon, "Target best-response gain");
  cmd->add_option("--belief-tol", c.belief_tol, "Belief fixed-point tolerance");
  cmd->add_option("--initial-beliefs", c.initial, "Initial belief rule")
      ->check(CLI::IsMember({"prior", "uniform"}));
  cmd->add_flag("--enumerate-all", c.enumerate_all,
                "Enumerate every support profile before selecting");
}

void add_grid(CLI::App* cmd, GridOpts& g) {
  cmd->add_option("--start", g.start, "First grid value");
  cmd->add_option("--stop", g.stop, "Last grid value");
  cmd->add_option("--points", g.points, "Number of grid points");
}

Grid to_grid(const GridOpts& g) {
  Grid grid{g.start, g.stop, g.points};
  try {
    validate_grid(grid);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return grid;
}

bool is_te(const Common& c) { return c.scenario.empty(); }

TEParams load_params(const Common& c) {
  return c.params.empty() ? default_params() : load_params_file(c.params);
}

MultiStageGame load_game(const Common& c) {
  if (!c.scenario.empty()) {
    if (!c.builtin.empty()) throw InputError("--builtin and --scenario are exclusive");
    if (!c.params.empty()) throw InputError("--params applies to the built-in scenario only");
    return load_game_file(c.scenario);
  }
  return build_te_game(load_params(c));
}

int resolve_x0(const MultiStageGame& game, const Common& c) {
  if (c.x0.empty()) return is_te(c) ? te::kEffectual : 0;
  try {
    return state_index(game, 0, c.x0);
  } catch (const GameError& e) {
    throw InputError(e.what());
  }
}

int resolve_type(const MultiStageGame& game, int player, const std::string& label, int fallback) {
  if (label.empty()) return fallback;
  try {
    return type_index(game, player, label);
  } catch (const GameError& e) {
    throw InputError(e.what());
  }
}

int resolve_player(const std::string& name) {
  if (name == "defender") return kDefender;
  if (name == "user") return kUser;
  throw InputError("player must be 'defender' or 'user'");
}

PbneConfig pbne_config(const Common& c) {
  PbneConfig cfg;
  cfg.iter_num = c.iter_num;
  cfg.epsilon_target = c.epsilon;
  cfg.belief_tolerance = c.belief_tol;
  cfg.initial_rule =
      c.initial == "uniform" ? InitialBeliefRule::kUniform : InitialBeliefRule::kPriorFromGame;
  cfg.solver.enumerate_all = c.enumerate_all;
  if (cfg.iter_num < 1 || !(cfg.epsilon_target >= 0.0) || !(cfg.belief_tolerance >= 0.0)) {
    throw InputError("PBNE config: iteration limit must be >= 1 and tolerances >= 0");
  }
  return cfg;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << text;
}

int cmd_solve(const Common& c, const std::string& csv_dir) {
  const MultiStageGame game = load_game(c);
  const int x0 = resolve_x0(game, c);
  const EquilibriumReport report = solve_pbne(game, x0, pbne_config(c));
  emit(c, report_to_json(game, report).dump(2) + "\n");
  if (!csv_dir.empty()) {
    strategies_csv(game, report.strategies).write(csv_dir + "/strategies.csv");
    beliefs_csv(game, report.beliefs).write(csv_dir + "/beliefs.csv");
    values_csv(game, report.values).write(csv_dir + "/values.csv");
  }
  std::cerr << "epsilon " << format_number(report.epsilon) << ", discrepancy "
            << format_number(report.discrepancy) << ", iterations " << report.trace.size()
            << (report.converged ? ", converged\n" : ", not converged\n");
  return report.converged ? kExitOk : kExitNotConverged;
}

struct SweepBeliefOpts {
  std::string player = "user";
  std::string target;
  std::string state;
  int stage = -1;
  std::string fix_other;
};

int cmd_sweep_belief(const Common& c, const GridOpts& g, const SweepBeliefOpts& o) {
  const MultiStageGame game = load_game(c);
  BeliefSweepSpec spec;
  spec.swept_player = resolve_player(o.player);
  const int other = opponent(spec.swept_player);
  spec.stage = o.stage;
  const int k = o.stage < 0 ? game.horizon : o.stage;
  if (k > game.horizon) throw InputError("stage out of range");
  try {
    spec.state = o.state.empty() ? game.num_states(k) - 1 : state_index(game, k, o.state);
  } catch (const GameError& e) {
    throw InputError(e.what());
  }
  spec.target_type = resolve_type(game, other, o.target, 0);
  if (!o.fix_other.empty()) {
    std::vector<double> b(game.num_types(spec.swept_player), 0.0);
    b[resolve_type(game, spec.swept_player, o.fix_other, 0)] = 1.0;
    spec.other_belief = b;
  }
  spec.grid = to_grid(g);
  spec.solver.enumerate_all = c.enumerate_all;
  emit(c, sweep_static_belief(game, spec).to_string());
  return kExitOk;
}

int cmd_sweep_sensitivity(const Common& c, const GridOpts& g, const std::string& param,
                          const std::string& dtype, const std::string& utype) {
  if (!is_te(c)) throw InputError("sweep-sensitivity needs the built-in scenario");
  const TEParams base = load_params(c);
  const MultiStageGame game = build_te_game(base);
  SensitivitySpec spec;
  spec.param = param;
  try {
    get_param(base, param);
  } catch (const ParamError& e) {
    throw InputError(e.what());
  }
  spec.grid = to_grid(g);
  spec.defender_type = resolve_type(game, kDefender, dtype, te::kPrimitive);
  spec.user_type = resolve_type(game, kUser, utype, te::kAdversarial);
  spec.solver.enumerate_all = c.enumerate_all;
  emit(c, sweep_sensitivity(base, spec).to_string());
  return kExitOk;
}

PriorSweepSpec prior_spec(const MultiStageGame& game, const Common& c, const GridOpts& g,
                          const std::string& player, const std::string& target) {
  PriorSweepSpec spec;
  spec.x0 = resolve_x0(game, c);
  spec.player = resolve_player(player);
  spec.target_type = resolve_type(game, opponent(spec.player), target, 0);
  spec.grid = to_grid(g);
  spec.pbne = pbne_config(c);
  return spec;
}

int cmd_posterior(const Common& c, const GridOpts& g, const std::string& player,
                  const std::string& target) {
  const MultiStageGame game = load_game(c);
  const auto rows = posterior_vs_prior(game, prior_spec(game, c, g, player, target));
  emit(c, posterior_table(rows).to_string());
  for (const auto& r : rows) {
    if (!r.converged) return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_state_dist(const Common& c, const GridOpts& g, const std::string& player,
                   const std::string& target) {
  const MultiStageGame game = load_game(c);
  const CsvTable t = state_distribution(game, prior_spec(game, c, g, player, target));
  emit(c, t.to_string());
  for (const auto& r : t.rows) {
    if (r.back() == "0") return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_compare_info(const Common& c) {
  const MultiStageGame game = load_game(c);
  std::vector<int> x0s;
  if (c.x0.empty()) {
    for (int x = 0; x < game.num_states(0); ++x) x0s.push_back(x);
  } else {
    x0s.push_back(resolve_x0(game, c));
  }
  const auto rows = compare_information_structures(game, x0s, pbne_config(c));
  emit(c, info_table(rows).to_string());
  for (const auto& r : rows) {
    if (!r.converged) return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_rollout(const Common& c) {
  const MultiStageGame game = load_game(c);
  const int x0 = resolve_x0(game, c);
  if (c.episodes < 1) throw InputError("--episodes must be at least 1");
  const EquilibriumReport report = solve_pbne(game, x0, pbne_config(c));
  RolloutSpec spec{c.episodes, c.seed, x0};
  emit(c, rollout_table(game, rollout(game, report.strategies, spec)).to_string());
  return report.converged ? kExitOk : kExitNotConverged;
}

int cmd_validate(const Common& c) {
  if (!c.scenario.empty()) {
    if (!c.params.empty()) throw InputError("--params applies to the built-in scenario only");
    load_game_file(c.scenario);  // parse_game validates
    emit(c, "ok\n");
    return kExitOk;
  }
  const TEParams p = load_params(c);
  auto violations = te_param_violations(p);
  if (!violations.empty()) {
    std::string text;
    for (const auto& v : violations) text += "violation: " + v + "\n";
    emit(c, text);
    return kExitInvalid;
  }
  const ValidationReport report = validate_game(build_te_game(p));
  if (!report.ok()) {
    std::string text;
    for (const auto& v : report.violations) {
      text += "violation: " + v.location + " [" + v.rule + "] " + v.message + "\n";
    }
    emit(c, text);
    return kExitInvalid;
  }
  emit(c, "ok\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-stage Bayesian game solver"};
  app.require_subcommand(1);

  Common common;
  GridOpts grid;
  std::string csv_dir;
  SweepBeliefOpts sweep;
  std::string param = "detection_reward_low";
  std::string defender_type;
  std::string user_type;
  std::string prior_player = "defender";
  std::string prior_target;

  auto* solve = app.add_subcommand("solve", "Solve for an epsilon-PBNE and write a JSON report");
  add_common(solve, common);
  solve->add_option("--csv-dir", csv_dir, "Also write strategy, belief and value CSVs here");

  auto* sweep_belief = app.add_subcommand("sweep-belief", "Static equilibrium over a belief grid");
  add_common(sweep_belief, common);
  add_grid(sweep_belief, grid);
  sweep_belief->add_option("--player", sweep.player, "Player whose belief is swept");
  sweep_belief->add_option("--target", sweep.target, "Opponent type whose probability is swept");
  sweep_belief->add_option("--stage", sweep.stage, "Stage (final stage by default)");
  sweep_belief->add_option("--state", sweep.state, "State label (last state by default)");
  sweep_belief->add_option("--fix-other", sweep.fix_other,
                           "Point-mass belief of the other player on this type");

  auto* sensitivity =
      app.add_subcommand("sweep-sensitivity", "Final-stage utilities over a parameter grid");
  add_common(sensitivity, common);
  add_grid(sensitivity, grid);
  sensitivity->add_option("--param", param, "TEParams field to vary");
  sensitivity->add_option("--defender-type", defender_type, "True defender type");
  sensitivity->add_option("--user-type", user_type, "True user type");

  auto* posterior = app.add_subcommand("posterior", "Final-stage posterior against the prior");
  add_common(posterior, common);
  add_grid(posterior, grid);
  posterior->add_option("--player", prior_player, "Player whose prior is swept");
  posterior->add_option("--target", prior_target, "Opponent type carrying the swept mass");

  auto* state_dist = app.add_subcommand("state-dist", "Final-state distribution over a prior grid");
  add_common(state_dist, common);
  add_grid(state_dist, grid);
  state_dist->add_option("--player", prior_player, "Player whose prior is swept");
  state_dist->add_option("--target", prior_target, "Opponent type carrying the swept mass");

  auto* compare = app.add_subcommand("compare-info", "Utilities under three information regimes");
  add_common(compare, common);

  auto* roll = app.add_subcommand("rollout", "Monte-Carlo rollout of the solved profile");
  add_common(roll, common);

  auto* validate = app.add_subcommand("validate", "Validate a scenario or parameter file");
  add_common(validate, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*solve) return cmd_solve(common, csv_dir);
    if (*sweep_belief) return cmd_sweep_belief(common, grid, sweep);
    if (*sensitivity) return cmd_sweep_sensitivity(common, grid, param, defender_type, user_type);
    if (*posterior) return cmd_posterior(common, grid, prior_player, prior_target);
    if (*state_dist) return cmd_state_dist(common, grid, prior_player, prior_target);
    if (*compare) return cmd_compare_info(common);
    if (*roll) return cmd_rollout(common);
    if (*validate) return cmd_validate(common);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ParamError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const GameError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
