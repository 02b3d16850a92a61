#pragma once

/// Brute-force LP oracle: enumerates basic feasible solutions of a small
/// non-negative LP and decides unboundedness on the normalized recession cone.

#include <algorithm>
#include <optional>
#include <vector>

#include "bellbound/lp.hpp"
#include "bellbound/rational.hpp"

namespace oracle {

using bellbound::Constraint;
using bellbound::LpModel;
using bellbound::LpStatus;
using bellbound::Rational;
using bellbound::Relation;

struct Row {
  std::vector<Rational> a;
  Relation rel;
  Rational b;
};

struct Result {
  LpStatus status = LpStatus::Infeasible;
  std::optional<Rational> value;
  std::size_t vertices = 0;
};

/// Solves the square system; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

inline bool satisfies(const std::vector<Row>& rows, const std::vector<Rational>& x) {
  for (const auto& r : rows) {
    Rational v;
    for (std::size_t j = 0; j < x.size(); ++j) v += r.a[j] * x[j];
    if (r.rel == Relation::Equal && v != r.b) return false;
    if (r.rel == Relation::LessEqual && v > r.b) return false;
    if (r.rel == Relation::GreaterEqual && v < r.b) return false;
  }
  return true;
}

/// Every vertex of {rows, x >= 0}. Equalities are always active; the remaining
/// active set is drawn from inequalities and bounds.
inline std::vector<std::vector<Rational>> vertices(const std::vector<Row>& rows, std::size_t n) {
  std::vector<Row> all = rows;
  for (std::size_t j = 0; j < n; ++j) {
    Row b{std::vector<Rational>(n), Relation::GreaterEqual, Rational(0)};
    b.a[j] = 1;
    all.push_back(b);
  }
  std::vector<std::size_t> eq, ineq;
  for (std::size_t i = 0; i < all.size(); ++i) (all[i].rel == Relation::Equal ? eq : ineq).push_back(i);
  std::vector<std::vector<Rational>> out;
  if (eq.size() > n) {
    // Overdetermined equality block: any n of them, rest checked by feasibility.
    ineq.insert(ineq.end(), eq.begin(), eq.end());
    eq.clear();
  }
  const std::size_t pick = n - eq.size();
  if (pick > ineq.size()) return out;
  std::vector<bool> mask(ineq.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(pick), true);
  do {
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> rhs;
    for (auto i : eq) m.push_back(all[i].a), rhs.push_back(all[i].b);
    for (std::size_t k = 0; k < ineq.size(); ++k)
      if (mask[k]) m.push_back(all[ineq[k]].a), rhs.push_back(all[ineq[k]].b);
    auto x = solve_square(m, rhs);
    if (x && satisfies(all, *x) && std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

inline std::vector<Row> rows_of(const LpModel& model) {
  std::vector<Row> rows;
  for (const Constraint& c : model.constraints) {
    Row r{std::vector<Rational>(model.variableCount), c.relation, c.rhs - c.lhs.constant()};
    for (const auto& [j, coef] : c.lhs.terms()) r.a[j] += coef;
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Requires model.nonNegative, so the feasible set is pointed.
inline Result solve(const LpModel& model) {
  const std::size_t n = model.variableCount;
  const Rational sign = model.sense == bellbound::Sense::Maximize ? Rational(1) : Rational(-1);
  auto obj = [&](const std::vector<Rational>& x) {
    Rational v;
    for (const auto& [j, c] : model.objective.terms()) v += c * x[j];
    return v;
  };
  auto rows = rows_of(model);
  auto vs = vertices(rows, n);
  Result res;
  res.vertices = vs.size();
  if (vs.empty()) return res;

  // Recession cone: same rows with zero right-hand sides, plus sum(d) = 1.
  std::vector<Row> cone = rows;
  for (auto& r : cone) r.b = 0;
  cone.push_back({std::vector<Rational>(n, Rational(1)), Relation::Equal, Rational(1)});
  for (const auto& d : vertices(cone, n)) {
    if ((sign * obj(d)).sign() > 0) {
      res.status = LpStatus::Unbounded;
      return res;
    }
  }
  std::optional<Rational> best;
  for (const auto& x : vs) {
    Rational v = obj(x);
    if (!best || sign * v > sign * *best) best = v;
  }
  res.status = LpStatus::Optimal;
  res.value = *best + model.objective.constant();
  return res;
}

}  // namespace oracle
