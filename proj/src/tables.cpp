#include "pbne/tables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbne {

SliceTable::SliceTable(int num_states, int num_types, int width, double fill)
    : num_states_(num_states),
      num_types_(num_types),
      width_(width),
      data_(static_cast<std::size_t>(num_states) * num_types * width, fill) {
  if (num_states < 0 || num_types < 0 || width < 0) {
    throw std::invalid_argument("SliceTable: negative extent");
  }
}

double max_abs_difference(const PlayerStageTables& a, const PlayerStageTables& b) {
  double diff = 0.0;
  for (int i = 0; i < kNumPlayers; ++i) {
    if (a[i].size() != b[i].size()) {
      throw std::invalid_argument("max_abs_difference: stage count mismatch");
    }
    for (std::size_t k = 0; k < a[i].size(); ++k) {
      auto lhs = a[i][k].data();
      auto rhs = b[i][k].data();
      if (lhs.size() != rhs.size()) {
        throw std::invalid_argument("max_abs_difference: slice shape mismatch");
      }
      for (std::size_t n = 0; n < lhs.size(); ++n) {
        diff = std::max(diff, std::abs(lhs[n] - rhs[n]));
      }
    }
  }
  return diff;
}

}  // namespace pbne
