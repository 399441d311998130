#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pbne/game.hpp"

namespace pbne {

// Raised by parse_game. `path` is a JSON-pointer-like location of the
// offending element.
class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { kSchema, kDimension };

  ScenarioError(Kind kind, std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), kind_(kind), path_(std::move(path)) {}

  Kind kind() const { return kind_; }
  const std::string& path() const { return path_; }

 private:
  Kind kind_;
  std::string path_;
};

// Scenario document layout:
//   horizon: K
//   types: [[defender types...], [user types...]]
//   stages: K+1 entries of {states, actions: [[...],[...]],
//            utilities[state][a1][a2][t1][t2] -> [u1, u2],
//            transitions[state][a1][a2] -> next-state label (k < K only)}
//   priors[player][own type] -> {opponent type label: probability}
MultiStageGame parse_game(const nlohmann::ordered_json& document);
MultiStageGame parse_game_text(const std::string& text);
MultiStageGame load_game_file(const std::string& path);

nlohmann::ordered_json serialize_game(const MultiStageGame& game);

}  // namespace pbne
