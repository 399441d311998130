#include "pbne/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pbne {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw ScenarioError(ScenarioError::Kind::kSchema, path, message);
}

[[noreturn]] void dimension_error(const std::string& path, const std::string& message) {
  throw ScenarioError(ScenarioError::Kind::kDimension, path, message);
}

const ordered_json& field(const ordered_json& obj, const std::string& name,
                          const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) schema_error(path + "/" + name, "missing field");
  return *it;
}

Labels parse_labels(const ordered_json& node, const std::string& path) {
  if (!node.is_array()) schema_error(path, "expected an array of labels");
  Labels out;
  for (std::size_t n = 0; n < node.size(); ++n) {
    if (!node[n].is_string()) schema_error(path + "/" + std::to_string(n), "expected a string");
    out.push_back(node[n].get<std::string>());
  }
  if (out.empty()) schema_error(path, "label list must be nonempty");
  return out;
}

const ordered_json& sized_array(const ordered_json& node, std::size_t size,
                                const std::string& path) {
  if (!node.is_array()) schema_error(path, "expected an array");
  if (node.size() != size) {
    dimension_error(path, "expected " + std::to_string(size) + " entries, found " +
                              std::to_string(node.size()));
  }
  return node;
}

double parse_number(const ordered_json& node, const std::string& path) {
  if (!node.is_number()) schema_error(path, "expected a number");
  double v = node.get<double>();
  if (!std::isfinite(v)) schema_error(path, "number must be finite");
  return v;
}

std::string idx(const std::string& path, std::size_t n) { return path + "/" + std::to_string(n); }

}  // namespace

MultiStageGame parse_game(const ordered_json& doc) {
  MultiStageGame game;
  const ordered_json& horizon = field(doc, "horizon", "");
  if (!horizon.is_number_integer() || horizon.get<long long>() < 0) {
    schema_error("/horizon", "expected a nonnegative integer");
  }
  game.horizon = horizon.get<int>();

  const ordered_json& types = sized_array(field(doc, "types", ""), kNumPlayers, "/types");
  for (int i = 0; i < kNumPlayers; ++i) {
    game.types[i] = parse_labels(types[i], idx("/types", i));
  }

  const ordered_json& stages =
      sized_array(field(doc, "stages", ""), static_cast<std::size_t>(game.horizon) + 1, "/stages");
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const std::string path = idx("/stages", k);
    Stage stage;
    stage.states = parse_labels(field(stages[k], "states", path), path + "/states");
    const ordered_json& actions =
        sized_array(field(stages[k], "actions", path), kNumPlayers, path + "/actions");
    for (int i = 0; i < kNumPlayers; ++i) {
      stage.actions[i] = parse_labels(actions[i], idx(path + "/actions", i));
    }
    game.stages.push_back(std::move(stage));
  }
  game.allocate();

  for (int k = 0; k < game.num_stages(); ++k) {
    const std::string path = idx("/stages", k);
    const ordered_json& node = stages[k];
    const Stage& stage = game.stages[k];
    const std::size_t nx = stage.states.size();
    const std::size_t n1 = stage.actions[0].size();
    const std::size_t n2 = stage.actions[1].size();
    const std::size_t nt1 = game.types[0].size();
    const std::size_t nt2 = game.types[1].size();

    const std::string upath = path + "/utilities";
    const ordered_json& ux = sized_array(field(node, "utilities", path), nx, upath);
    for (std::size_t x = 0; x < nx; ++x) {
      const ordered_json& u1 = sized_array(ux[x], n1, idx(upath, x));
      for (std::size_t a1 = 0; a1 < n1; ++a1) {
        const ordered_json& u2 = sized_array(u1[a1], n2, idx(idx(upath, x), a1));
        for (std::size_t a2 = 0; a2 < n2; ++a2) {
          const std::string p2 = idx(idx(idx(upath, x), a1), a2);
          const ordered_json& ut1 = sized_array(u2[a2], nt1, p2);
          for (std::size_t t1 = 0; t1 < nt1; ++t1) {
            const ordered_json& ut2 = sized_array(ut1[t1], nt2, idx(p2, t1));
            for (std::size_t t2 = 0; t2 < nt2; ++t2) {
              const std::string p4 = idx(idx(p2, t1), t2);
              const ordered_json& pair = sized_array(ut2[t2], kNumPlayers, p4);
              for (int i = 0; i < kNumPlayers; ++i) {
                game.utility(k, x, a1, a2, t1, t2, i) = parse_number(pair[i], idx(p4, i));
              }
            }
          }
        }
      }
    }

    const std::string tpath = path + "/transitions";
    if (k < game.horizon) {
      const Labels& next = game.stages[k + 1].states;
      const ordered_json& tx = sized_array(field(node, "transitions", path), nx, tpath);
      for (std::size_t x = 0; x < nx; ++x) {
        const ordered_json& t1 = sized_array(tx[x], n1, idx(tpath, x));
        for (std::size_t a1 = 0; a1 < n1; ++a1) {
          const ordered_json& t2 = sized_array(t1[a1], n2, idx(idx(tpath, x), a1));
          for (std::size_t a2 = 0; a2 < n2; ++a2) {
            const std::string p = idx(idx(idx(tpath, x), a1), a2);
            if (!t2[a2].is_string()) {
              schema_error(p, "transitions are deterministic: expected a next-state label");
            }
            const std::string label = t2[a2].get<std::string>();
            auto it = std::find(next.begin(), next.end(), label);
            if (it == next.end()) {
              dimension_error(p, "transition target '" + label + "' is not a state of stage " +
                                     std::to_string(k + 1));
            }
            game.next_state(k, x, a1, a2) = static_cast<int>(it - next.begin());
          }
        }
      }
    } else if (node.contains("transitions")) {
      schema_error(tpath, "the final stage has no transitions");
    }
  }

  const ordered_json& priors = sized_array(field(doc, "priors", ""), kNumPlayers, "/priors");
  for (int i = 0; i < kNumPlayers; ++i) {
    const std::string ppath = idx("/priors", i);
    const Labels& own = game.types[i];
    const Labels& opp = game.types[opponent(i)];
    game.priors[i].assign(own.size(), std::vector<double>(opp.size(), 0.0));
    const ordered_json& by_own = priors[i];
    for (std::size_t t = 0; t < own.size(); ++t) {
      const ordered_json* entry = nullptr;
      std::string epath;
      if (by_own.is_array()) {
        sized_array(by_own, own.size(), ppath);
        entry = &by_own[t];
        epath = idx(ppath, t);
      } else if (by_own.is_object()) {
        entry = &field(by_own, own[t], ppath);
        epath = ppath + "/" + own[t];
      } else {
        schema_error(ppath, "expected an array or object of per-type priors");
      }
      if (!entry->is_object()) schema_error(epath, "expected a map from opponent type");
      for (auto it = entry->begin(); it != entry->end(); ++it) {
        auto pos = std::find(opp.begin(), opp.end(), it.key());
        if (pos == opp.end()) schema_error(epath + "/" + it.key(), "unknown opponent type");
        game.priors[i][t][pos - opp.begin()] = parse_number(it.value(), epath + "/" + it.key());
      }
    }
  }

  ValidationReport report = validate_game(game);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    schema_error("/" + v.location, v.rule + ": " + v.message);
  }
  return game;
}

MultiStageGame parse_game_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    schema_error("", std::string("malformed JSON: ") + e.what());
  }
  return parse_game(doc);
}

MultiStageGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game_text(buf.str());
}

ordered_json serialize_game(const MultiStageGame& game) {
  ordered_json doc;
  doc["horizon"] = game.horizon;
  doc["types"] = ordered_json::array({game.types[0], game.types[1]});
  ordered_json stages = ordered_json::array();
  for (int k = 0; k < game.num_stages(); ++k) {
    const Stage& s = game.stages[k];
    ordered_json node;
    node["states"] = s.states;
    node["actions"] = ordered_json::array({s.actions[0], s.actions[1]});
    ordered_json ux = ordered_json::array();
    for (int x = 0; x < game.num_states(k); ++x) {
      ordered_json u1 = ordered_json::array();
      for (int a1 = 0; a1 < game.num_actions(k, 0); ++a1) {
        ordered_json u2 = ordered_json::array();
        for (int a2 = 0; a2 < game.num_actions(k, 1); ++a2) {
          ordered_json ut1 = ordered_json::array();
          for (int t1 = 0; t1 < game.num_types(0); ++t1) {
            ordered_json ut2 = ordered_json::array();
            for (int t2 = 0; t2 < game.num_types(1); ++t2) {
              ut2.push_back({game.utility(k, x, a1, a2, t1, t2, 0),
                             game.utility(k, x, a1, a2, t1, t2, 1)});
            }
            ut1.push_back(std::move(ut2));
          }
          u2.push_back(std::move(ut1));
        }
        u1.push_back(std::move(u2));
      }
      ux.push_back(std::move(u1));
    }
    node["utilities"] = std::move(ux);
    if (k < game.horizon) {
      ordered_json tx = ordered_json::array();
      for (int x = 0; x < game.num_states(k); ++x) {
        ordered_json t1 = ordered_json::array();
        for (int a1 = 0; a1 < game.num_actions(k, 0); ++a1) {
          ordered_json t2 = ordered_json::array();
          for (int a2 = 0; a2 < game.num_actions(k, 1); ++a2) {
            t2.push_back(game.stages[k + 1].states[game.next_state(k, x, a1, a2)]);
          }
          t1.push_back(std::move(t2));
        }
        tx.push_back(std::move(t1));
      }
      node["transitions"] = std::move(tx);
    }
    stages.push_back(std::move(node));
  }
  doc["stages"] = std::move(stages);
  ordered_json priors = ordered_json::array();
  for (int i = 0; i < kNumPlayers; ++i) {
    ordered_json by_own = ordered_json::array();
    for (int t = 0; t < game.num_types(i); ++t) {
      ordered_json dist = ordered_json::object();
      for (int j = 0; j < game.num_types(opponent(i)); ++j) {
        dist[game.types[opponent(i)][j]] = game.priors[i][t][j];
      }
      by_own.push_back(std::move(dist));
    }
    priors.push_back(std::move(by_own));
  }
  doc["priors"] = std::move(priors);
  return doc;
}

}  // namespace pbne
