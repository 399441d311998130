#include "pbne/lp_feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbne {

namespace {

constexpr double kPivotEpsilon = 1e-12;
constexpr int kMaxPivots = 100000;

struct Row {
  std::vector<double> a;
  double rhs;
  int sign;  // +1 for <=, -1 for >=, 0 for =
};

}  // namespace

std::optional<std::vector<double>> find_feasible_point(int num_variables,
                                                       std::span<const LinearConstraint> rows,
                                                       double tolerance) {
  const int n = num_variables;
  std::vector<Row> work;
  for (const LinearConstraint& c : rows) {
    if (static_cast<int>(c.coefficients.size()) != n) {
      throw std::invalid_argument("find_feasible_point: coefficient count mismatch");
    }
    double scale = 0.0;
    for (double v : c.coefficients) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) {
      if (c.relation == Relation::kEqual && std::abs(c.rhs) > tolerance) return std::nullopt;
      if (c.relation == Relation::kLessEqual && c.rhs < -tolerance) return std::nullopt;
      continue;
    }
    Row r{c.coefficients, c.rhs / scale, c.relation == Relation::kEqual ? 0 : 1};
    for (double& v : r.a) v /= scale;
    if (r.rhs < 0.0) {
      for (double& v : r.a) v = -v;
      r.rhs = -r.rhs;
      r.sign = -r.sign;
    }
    work.push_back(std::move(r));
  }
  const int m = static_cast<int>(work.size());
  if (m == 0) return std::vector<double>(n, 0.0);

  // Column layout: [original | slacks | artificials | rhs]
  int num_slack = 0;
  int num_art = 0;
  for (const Row& r : work) {
    if (r.sign != 0) ++num_slack;
    if (r.sign <= 0) ++num_art;
  }
  const int cols = n + num_slack + num_art;
  const int rhs = cols;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  std::vector<int> basis(m, -1);
  std::vector<char> artificial(cols, 0);
  int next_slack = n;
  int next_art = n + num_slack;
  for (int r = 0; r < m; ++r) {
    std::copy(work[r].a.begin(), work[r].a.end(), t[r].begin());
    t[r][rhs] = work[r].rhs;
    if (work[r].sign != 0) {
      t[r][next_slack] = work[r].sign;
      if (work[r].sign > 0) basis[r] = next_slack;
      ++next_slack;
    }
    if (work[r].sign <= 0) {
      t[r][next_art] = 1.0;
      artificial[next_art] = 1;
      basis[r] = next_art;
      ++next_art;
    }
  }

  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<double> z(cols + 1, 0.0);
  for (int j = 0; j < cols; ++j) z[j] = artificial[j] ? 1.0 : 0.0;
  for (int r = 0; r < m; ++r) {
    if (!artificial[basis[r]]) continue;
    for (int j = 0; j <= cols; ++j) z[j] -= t[r][j];
  }

  for (int pivots = 0; pivots < kMaxPivots; ++pivots) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (z[j] < -kPivotEpsilon) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      if (t[r][enter] <= kPivotEpsilon) continue;
      const double ratio = t[r][rhs] / t[r][enter];
      if (leave < 0 || ratio < best_ratio - kPivotEpsilon ||
          (std::abs(ratio - best_ratio) <= kPivotEpsilon && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen for phase one

    const double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double f = t[r][enter];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) t[r][j] -= f * t[leave][j];
    }
    const double f = z[enter];
    for (int j = 0; j <= cols; ++j) z[j] -= f * t[leave][j];
    basis[leave] = enter;
  }

  double infeasibility = 0.0;
  for (int r = 0; r < m; ++r) {
    if (artificial[basis[r]]) infeasibility += std::max(0.0, t[r][rhs]);
  }
  if (infeasibility > tolerance) return std::nullopt;

  std::vector<double> x(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) x[basis[r]] = std::max(0.0, t[r][rhs]);
  }
  return x;
}

}  // namespace pbne
