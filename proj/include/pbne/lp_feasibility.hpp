#pragma once

#include <optional>
#include <span>
#include <vector>

namespace pbne {

enum class Relation { kEqual, kLessEqual };

struct LinearConstraint {
  std::vector<double> coefficients;
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
};

// Finds x >= 0 satisfying every constraint, or nullopt when the system is
// infeasible. Dense two-phase-style simplex (phase one only) with Bland's
// rule; rows are scaled to unit max-norm and `tolerance` applies to the
// scaled phase-one objective.
std::optional<std::vector<double>> find_feasible_point(int num_variables,
                                                       std::span<const LinearConstraint> rows,
                                                       double tolerance = 1e-9);

}  // namespace pbne
