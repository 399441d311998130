#include "pbne/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pbne {

namespace {

std::string label_or_index(const Labels& labels, int n) {
  return n < static_cast<int>(labels.size()) ? labels[n] : std::to_string(n);
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

const char* player_label(int player) { return player == kDefender ? "defender" : "user"; }

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::invalid_argument("CSV row width mismatch");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& r) {
    for (std::size_t n = 0; n < r.size(); ++n) {
      if (n) out += ',';
      out += quote(r[n]);
    }
    out += '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << to_string();
  if (!f) throw std::runtime_error("write failed for " + path);
}

CsvTable beliefs_csv(const MultiStageGame& game, const BeliefTable& beliefs) {
  CsvTable t{{"player", "stage", "state", "own_type", "opp_type", "probability"}, {}};
  for (int i = 0; i < kNumPlayers; ++i) {
    const int j = opponent(i);
    for (int k = 0; k < game.num_stages(); ++k) {
      for (int x = 0; x < game.num_states(k); ++x) {
        for (int ti = 0; ti < game.num_types(i); ++ti) {
          auto b = beliefs.at(i, k, x, ti);
          for (int tj = 0; tj < game.num_types(j); ++tj) {
            t.add_row({player_label(i), std::to_string(k), game.stages[k].states[x],
                       game.types[i][ti], game.types[j][tj], format_number(b[tj])});
          }
        }
      }
    }
  }
  return t;
}

CsvTable strategies_csv(const MultiStageGame& game, const StrategyProfile& strategies) {
  CsvTable t{{"player", "stage", "state", "type", "action", "probability"}, {}};
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int k = 0; k < game.num_stages(); ++k) {
      for (int x = 0; x < game.num_states(k); ++x) {
        for (int ti = 0; ti < game.num_types(i); ++ti) {
          auto s = strategies.at(i, k, x, ti);
          for (int a = 0; a < game.num_actions(k, i); ++a) {
            t.add_row({player_label(i), std::to_string(k), game.stages[k].states[x],
                       game.types[i][ti], game.stages[k].actions[i][a], format_number(s[a])});
          }
        }
      }
    }
  }
  return t;
}

CsvTable values_csv(const MultiStageGame& game, const ValueTable& values) {
  CsvTable t{{"player", "stage", "state", "type", "value"}, {}};
  for (int i = 0; i < kNumPlayers; ++i) {
    for (int k = 0; k < game.num_stages(); ++k) {
      for (int x = 0; x < game.num_states(k); ++x) {
        for (int ti = 0; ti < game.num_types(i); ++ti) {
          t.add_row({player_label(i), std::to_string(k), game.stages[k].states[x],
                     game.types[i][ti], format_number(values.at(i, k, x, ti))});
        }
      }
    }
  }
  return t;
}

CsvTable static_equilibrium_csv(const StaticEquilibrium& eq,
                                const std::array<Labels, kNumPlayers>& type_labels,
                                const std::array<Labels, kNumPlayers>& action_labels) {
  CsvTable t{{"record", "player", "type", "action", "probability", "value", "residual"}, {}};
  for (int i = 0; i < kNumPlayers; ++i) {
    for (std::size_t ti = 0; ti < eq.strategy[i].size(); ++ti) {
      for (std::size_t a = 0; a < eq.strategy[i][ti].size(); ++a) {
        t.add_row({"strategy", player_label(i), label_or_index(type_labels[i], ti),
                   label_or_index(action_labels[i], a), format_number(eq.strategy[i][ti][a]), "",
                   ""});
      }
    }
  }
  for (int i = 0; i < kNumPlayers; ++i) {
    for (std::size_t ti = 0; ti < eq.value[i].size(); ++ti) {
      t.add_row({"summary", player_label(i), label_or_index(type_labels[i], ti), "", "",
                 format_number(eq.value[i][ti]), format_number(eq.residual)});
    }
  }
  return t;
}

}  // namespace pbne
