#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pbne {

inline constexpr int kNumPlayers = 2;

constexpr int opponent(int player) { return 1 - player; }

// Dense [state][own type][entry] block holding one player's data at one stage.
// Strategies use one entry per action, beliefs one entry per opponent type,
// values a single entry.
class SliceTable {
 public:
  SliceTable() = default;
  SliceTable(int num_states, int num_types, int width, double fill = 0.0);

  int num_states() const { return num_states_; }
  int num_types() const { return num_types_; }
  int width() const { return width_; }

  std::span<double> slice(int state, int type) {
    return {data_.data() + offset(state, type), static_cast<std::size_t>(width_)};
  }
  std::span<const double> slice(int state, int type) const {
    return {data_.data() + offset(state, type), static_cast<std::size_t>(width_)};
  }

  double& operator()(int state, int type, int entry) {
    return data_[offset(state, type) + entry];
  }
  double operator()(int state, int type, int entry) const {
    return data_[offset(state, type) + entry];
  }

  std::span<const double> data() const { return data_; }

  bool operator==(const SliceTable&) const = default;

 private:
  std::size_t offset(int state, int type) const {
    return (static_cast<std::size_t>(state) * num_types_ + type) * width_;
  }

  int num_states_ = 0;
  int num_types_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Indexed [player][stage].
using PlayerStageTables = std::array<std::vector<SliceTable>, kNumPlayers>;

// Sup-norm distance; tables must share a shape.
double max_abs_difference(const PlayerStageTables& a, const PlayerStageTables& b);

}  // namespace pbne
