// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the solver code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "pbne/game.hpp"
#include "pbne/static_solver.hpp"

namespace oracle {

// Exact fraction over 64-bit integers; payoffs in the tests are small, so
// the 3x3 systems solved here stay far from overflow.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
  friend Rational operator/(Rational a, Rational b) { return Rational(a.num * b.den, a.den * b.num); }
  friend bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

using Matrix = std::vector<std::vector<Rational>>;

// Solves A x = b exactly. Returns nullopt when inconsistent; `unique` is set
// to whether the solution is unique (free variables are set to 0).
inline std::optional<std::vector<Rational>> solve_linear(Matrix a, std::vector<Rational> b,
                                                         bool* unique = nullptr) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (!a[i][c].is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c] / a[r][c];
      for (int j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
      b[i] = b[i] - f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i) {
    if (!b[i].is_zero()) return std::nullopt;
  }
  if (unique) *unique = r == cols;
  std::vector<Rational> x(cols, Rational(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  return x;
}

struct Bimatrix {
  int m = 0;  // row actions
  int n = 0;  // column actions
  std::vector<std::vector<std::int64_t>> row;  // row player's payoff [i][j]
  std::vector<std::vector<std::int64_t>> col;  // column player's payoff [i][j]
};

struct MixedPair {
  std::vector<double> x;
  std::vector<double> y;
};

inline std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    out.push_back(s);
  }
  return out;
}

// Mixed strategy of the player owning `support` that makes the opponent
// indifferent across `reply`: sum over support of p_s * payoff(s, r) equal for
// every r in reply, probabilities summing to one. payoff(s, r) is read from
// `opp_payoff` with `transpose` selecting the index order.
inline std::optional<std::vector<Rational>> indifference_mix(
    const std::vector<std::vector<std::int64_t>>& opp_payoff, bool transpose,
    const std::vector<int>& support, const std::vector<int>& reply, bool* unique = nullptr) {
  const int k = static_cast<int>(support.size());
  Matrix a;
  std::vector<Rational> b;
  auto pay = [&](int s, int r) { return transpose ? opp_payoff[r][s] : opp_payoff[s][r]; };
  for (std::size_t q = 1; q < reply.size(); ++q) {
    std::vector<Rational> rowv(k);
    for (int c = 0; c < k; ++c) rowv[c] = Rational(pay(support[c], reply[q]) - pay(support[c], reply[0]));
    a.push_back(rowv);
    b.push_back(Rational(0));
  }
  a.push_back(std::vector<Rational>(k, Rational(1)));
  b.push_back(Rational(1));
  return solve_linear(a, b, unique);
}

// A bimatrix game is treated as nondegenerate when no mixed strategy on k
// actions leaves more than k pure best-response candidates tied; checked by
// asking whether any overdetermined indifference system has a nonnegative
// solution.
inline bool nondegenerate(const Bimatrix& g) {
  for (int side = 0; side < 2; ++side) {
    const int own = side == 0 ? g.m : g.n;
    const int opp = side == 0 ? g.n : g.m;
    for (int k = 1; k <= own; ++k) {
      for (const auto& support : subsets_of_size(own, k)) {
        for (const auto& reply : subsets_of_size(opp, k + 1)) {
          auto mix = side == 0 ? indifference_mix(g.col, false, support, reply)
                               : indifference_mix(g.row, true, support, reply);
          if (!mix) continue;
          bool nonneg = true;
          for (const Rational& p : *mix) nonneg = nonneg && !(p < Rational(0));
          if (nonneg) return false;
        }
      }
    }
  }
  return true;
}

// All Nash equilibria of a nondegenerate bimatrix game by equal-size
// support enumeration in exact arithmetic.
inline std::vector<MixedPair> bimatrix_equilibria(const Bimatrix& g) {
  std::vector<MixedPair> out;
  for (int k = 1; k <= std::min(g.m, g.n); ++k) {
    for (const auto& rows : subsets_of_size(g.m, k)) {
      for (const auto& cols : subsets_of_size(g.n, k)) {
        auto x = indifference_mix(g.col, false, rows, cols);
        auto y = indifference_mix(g.row, true, cols, rows);
        if (!x || !y) continue;
        bool positive = true;
        for (const Rational& p : *x) positive = positive && Rational(0) < p;
        for (const Rational& p : *y) positive = positive && Rational(0) < p;
        if (!positive) continue;
        std::vector<Rational> xf(g.m, Rational(0));
        std::vector<Rational> yf(g.n, Rational(0));
        for (int c = 0; c < k; ++c) xf[rows[c]] = (*x)[c];
        for (int c = 0; c < k; ++c) yf[cols[c]] = (*y)[c];
        // Best-response check against actions outside the supports.
        auto row_value = [&](int i) {
          Rational v(0);
          for (int j = 0; j < g.n; ++j) v = v + yf[j] * Rational(g.row[i][j]);
          return v;
        };
        auto col_value = [&](int j) {
          Rational v(0);
          for (int i = 0; i < g.m; ++i) v = v + xf[i] * Rational(g.col[i][j]);
          return v;
        };
        const Rational rv = row_value(rows[0]);
        const Rational cv = col_value(cols[0]);
        bool best = true;
        for (int i = 0; i < g.m; ++i) best = best && !(rv < row_value(i));
        for (int j = 0; j < g.n; ++j) best = best && !(cv < col_value(j));
        if (!best) continue;
        MixedPair p;
        for (const Rational& r : xf) p.x.push_back(r.value());
        for (const Rational& r : yf) p.y.push_back(r.value());
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

// Brute-force interim deviation gain, written independently of the solver:
// loops over (player, own type, deviation) and sums the full joint
// expectation.
inline double interim_gain(const pbne::StageGameView& v, const pbne::StrategyPair& s) {
  double worst = 0.0;
  for (int t1 = 0; t1 < v.num_types[0]; ++t1) {
    std::vector<double> dev(v.num_actions[0], 0.0);
    for (int a1 = 0; a1 < v.num_actions[0]; ++a1) {
      for (int t2 = 0; t2 < v.num_types[1]; ++t2) {
        for (int a2 = 0; a2 < v.num_actions[1]; ++a2) {
          dev[a1] += v.beliefs[0][t1 * v.num_types[1] + t2] * s[1][t2][a2] *
                     v.payoffs[v.payoff_index(a1, a2, t1, t2, 0)];
        }
      }
    }
    double cur = 0.0;
    for (int a1 = 0; a1 < v.num_actions[0]; ++a1) cur += s[0][t1][a1] * dev[a1];
    for (double d : dev) worst = std::max(worst, d - cur);
  }
  for (int t2 = 0; t2 < v.num_types[1]; ++t2) {
    std::vector<double> dev(v.num_actions[1], 0.0);
    for (int a2 = 0; a2 < v.num_actions[1]; ++a2) {
      for (int t1 = 0; t1 < v.num_types[0]; ++t1) {
        for (int a1 = 0; a1 < v.num_actions[0]; ++a1) {
          dev[a2] += v.beliefs[1][t2 * v.num_types[0] + t1] * s[0][t1][a1] *
                     v.payoffs[v.payoff_index(a1, a2, t1, t2, 1)];
        }
      }
    }
    double cur = 0.0;
    for (int a2 = 0; a2 < v.num_actions[1]; ++a2) cur += s[1][t2][a2] * dev[a2];
    for (double d : dev) worst = std::max(worst, d - cur);
  }
  return worst;
}

inline std::vector<double> random_distribution(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> d(n);
  double sum = 0.0;
  for (double& p : d) sum += p = u(rng);
  for (double& p : d) p /= sum;
  return d;
}

inline pbne::StageGameView random_view(std::mt19937_64& rng, int n1, int n2, int t1, int t2,
                                       int lo = -5, int hi = 5) {
  pbne::StageGameView v = pbne::StageGameView::make(n1, n2, t1, t2);
  std::uniform_int_distribution<int> pay(lo, hi);
  for (double& x : v.payoffs) x = pay(rng);
  for (int t = 0; t < t1; ++t) {
    auto d = random_distribution(rng, t2);
    for (int j = 0; j < t2; ++j) v.belief(0, t, j) = d[j];
  }
  for (int t = 0; t < t2; ++t) {
    auto d = random_distribution(rng, t1);
    for (int j = 0; j < t1; ++j) v.belief(1, t, j) = d[j];
  }
  return v;
}

// Random 2-type game with `stages` stages, up to max_states states and
// max_actions actions per player per stage, integer utilities in [-5, 5].
inline pbne::MultiStageGame random_game(std::mt19937_64& rng, int stages, int max_states,
                                        int max_actions, int defender_actions = 0) {
  using namespace pbne;
  std::uniform_int_distribution<int> ns(1, max_states);
  std::uniform_int_distribution<int> na(1, max_actions);
  std::uniform_int_distribution<int> pay(-5, 5);
  MultiStageGame g;
  g.horizon = stages - 1;
  g.types[0] = {"H", "L"};
  g.types[1] = {"b", "g"};
  for (int k = 0; k < stages; ++k) {
    Stage s;
    const int nx = ns(rng);
    for (int x = 0; x < nx; ++x) s.states.push_back("s" + std::to_string(x));
    const int n1 = defender_actions > 0 ? defender_actions : na(rng);
    const int n2 = na(rng);
    for (int a = 0; a < n1; ++a) s.actions[0].push_back("d" + std::to_string(a));
    for (int a = 0; a < n2; ++a) s.actions[1].push_back("u" + std::to_string(a));
    g.stages.push_back(s);
  }
  g.allocate();
  for (int k = 0; k < stages; ++k) {
    for (double& u : g.stages[k].utilities) u = pay(rng);
    if (k < g.horizon) {
      std::uniform_int_distribution<int> nx(0, g.num_states(k + 1) - 1);
      for (int& t : g.stages[k].transitions) t = nx(rng);
    }
  }
  for (int i = 0; i < 2; ++i) {
    g.priors[i].clear();
    for (int t = 0; t < 2; ++t) g.priors[i].push_back(random_distribution(rng, 2));
  }
  return g;
}

inline pbne::BeliefTable random_beliefs(std::mt19937_64& rng, const pbne::MultiStageGame& g) {
  pbne::BeliefTable b = pbne::BeliefTable::from_priors(g);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < g.num_stages(); ++k) {
      for (int x = 0; x < g.num_states(k); ++x) {
        for (int t = 0; t < g.num_types(i); ++t) {
          auto d = random_distribution(rng, g.num_types(1 - i));
          auto s = b.at(i, k, x, t);
          std::copy(d.begin(), d.end(), s.begin());
        }
      }
    }
  }
  return b;
}

// Expected cumulative utility by explicit recursion over the game tree
// (no memoization, no shared code with the table-based evaluator).
inline double tree_utility(const pbne::MultiStageGame& g, const pbne::StrategyProfile& s,
                           const pbne::BeliefTable& b, int k, int x, int i, int ti) {
  if (k > g.horizon) return 0.0;
  const int j = 1 - i;
  double total = 0.0;
  for (int tj = 0; tj < g.num_types(j); ++tj) {
    const double w = b.at(i, k, x, ti)[tj];
    const int t1 = i == 0 ? ti : tj;
    const int t2 = i == 0 ? tj : ti;
    for (int a1 = 0; a1 < g.num_actions(k, 0); ++a1) {
      for (int a2 = 0; a2 < g.num_actions(k, 1); ++a2) {
        const double p = s.at(0, k, x, t1)[a1] * s.at(1, k, x, t2)[a2];
        if (p == 0.0 || w == 0.0) continue;
        double cont = 0.0;
        if (k < g.horizon) cont = tree_utility(g, s, b, k + 1, g.next_state(k, x, a1, a2), i, ti);
        total += w * p * (g.utility(k, x, a1, a2, t1, t2, i) + cont);
      }
    }
  }
  return total;
}

// Finite-horizon value iteration for `player` when the opponent has a single
// action everywhere: V(k, x, t) = max_a sum_tj b * (J + V(k+1, f)).
inline std::vector<std::vector<std::vector<double>>> single_agent_values(
    const pbne::MultiStageGame& g, const pbne::BeliefTable& b, int player) {
  const int j = 1 - player;
  std::vector<std::vector<std::vector<double>>> v(g.num_stages() + 1);
  v[g.num_stages()] = {std::vector<double>(g.num_types(player), 0.0)};
  for (int k = g.horizon; k >= 0; --k) {
    v[k].assign(g.num_states(k), std::vector<double>(g.num_types(player), 0.0));
    for (int x = 0; x < g.num_states(k); ++x) {
      for (int ti = 0; ti < g.num_types(player); ++ti) {
        double best = -1e300;
        for (int a = 0; a < g.num_actions(k, player); ++a) {
          double q = 0.0;
          for (int tj = 0; tj < g.num_types(j); ++tj) {
            const int a1 = player == 0 ? a : 0;
            const int a2 = player == 0 ? 0 : a;
            const int t1 = player == 0 ? ti : tj;
            const int t2 = player == 0 ? tj : ti;
            const double next =
                k < g.horizon ? v[k + 1][g.next_state(k, x, a1, a2)][ti] : 0.0;
            q += b.at(player, k, x, ti)[tj] * (g.utility(k, x, a1, a2, t1, t2, player) + next);
          }
          best = std::max(best, q);
        }
        v[k][x][ti] = best;
      }
    }
  }
  return v;
}

}  // namespace oracle
