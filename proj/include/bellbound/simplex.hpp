#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <vector>

#include "bellbound/errors.hpp"
#include "bellbound/lp.hpp"
#include "bellbound/rational.hpp"

namespace bellbound {

/// Hard limit on pivots per solve. Bland's rule cannot cycle, so hitting it means a bug.
inline constexpr std::size_t kPivotCap = 500000;

namespace detail {

/// Dense exact tableau for a maximization problem in standard form
/// (A x = b, x >= 0, b >= 0). Row `rows_` is the reduced-cost row.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1)), basis_(rows) {}

  mpq_class& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  [[nodiscard]] const mpq_class& at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  mpq_class& rhs(std::size_t r) { return at(r, cols_); }
  mpq_class& cost(std::size_t c) { return at(rows_, c); }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    mpq_class inv = 1 / at(pr, pc);
    nz_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      mpq_class& v = at(pr, j);
      if (sgn(v) != 0) {
        mpq_mul(v.get_mpq_t(), v.get_mpq_t(), inv.get_mpq_t());
        nz_.push_back(j);
      }
    }
    mpq_class f, t;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == pr) continue;
      mpq_class& e = at(i, pc);
      if (sgn(e) == 0) continue;
      f = e;
      for (std::size_t j : nz_) {
        mpq_mul(t.get_mpq_t(), f.get_mpq_t(), at(pr, j).get_mpq_t());
        mpq_class& dst = at(i, j);
        mpq_sub(dst.get_mpq_t(), dst.get_mpq_t(), t.get_mpq_t());
      }
    }
    basis_[pr] = pc;
  }

  /// Resets the reduced-cost row for objective `c` (maximize), given the current basis.
  void load_objective(const std::vector<mpq_class>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost(j) = j < cols_ ? mpq_class(-c[j]) : mpq_class(0);
    mpq_class t;
    for (std::size_t i = 0; i < rows_; ++i) {
      const mpq_class& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        const mpq_class& v = at(i, j);
        if (sgn(v) == 0) continue;
        mpq_mul(t.get_mpq_t(), cb.get_mpq_t(), v.get_mpq_t());
        mpq_add(cost(j).get_mpq_t(), cost(j).get_mpq_t(), t.get_mpq_t());
      }
    }
  }

  enum class Outcome { Optimal, Unbounded };

  /// Bland's rule: lowest-index improving column, ties in the ratio test
  /// broken by lowest basic-variable index.
  Outcome run(std::size_t eligible_cols, std::size_t& pivots) {
    mpq_class lhs, rhs_cmp;
    for (;;) {
      std::size_t enter = eligible_cols;
      for (std::size_t j = 0; j < eligible_cols; ++j) {
        if (sgn(cost(j)) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == eligible_cols) return Outcome::Optimal;
      std::size_t leave = rows_;
      for (std::size_t i = 0; i < rows_; ++i) {
        const mpq_class& e = at(i, enter);
        if (sgn(e) <= 0) continue;
        if (leave == rows_) {
          leave = i;
          continue;
        }
        // rhs(i)/e  vs  rhs(leave)/at(leave, enter), both denominators positive
        mpq_mul(lhs.get_mpq_t(), rhs(i).get_mpq_t(), at(leave, enter).get_mpq_t());
        mpq_mul(rhs_cmp.get_mpq_t(), rhs(leave).get_mpq_t(), e.get_mpq_t());
        int c = cmp(lhs, rhs_cmp);
        if (c < 0 || (c == 0 && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == rows_) return Outcome::Unbounded;
      if (++pivots > kPivotCap) throw ComputationError("simplex pivot cap exceeded");
      pivot(leave, enter);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpq_class> a_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nz_;
};

}  // namespace detail

/// Exact two-phase simplex with Bland's rule. Deterministic for identical input.
inline LpSolution solve(const LpModel& model) {
  model.validate();
  const std::size_t n = model.variableCount;
  const std::size_t m = model.constraints.size();
  const std::size_t structural = model.nonNegative ? n : 2 * n;

  // Normalize rows to rhs >= 0 and count auxiliary columns.
  std::vector<int> row_sign(m, 1);
  std::vector<Relation> rel(m);
  std::vector<Rational> b(m);
  std::size_t slack_count = 0, art_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = model.constraints[i];
    b[i] = c.rhs - c.lhs.constant();
    rel[i] = c.relation;
    if (b[i].sign() < 0) {
      row_sign[i] = -1;
      b[i] = -b[i];
      if (rel[i] == Relation::LessEqual)
        rel[i] = Relation::GreaterEqual;
      else if (rel[i] == Relation::GreaterEqual)
        rel[i] = Relation::LessEqual;
    }
    if (rel[i] != Relation::Equal) ++slack_count;
    if (rel[i] != Relation::LessEqual) ++art_count;
  }
  const std::size_t art_begin = structural + slack_count;
  const std::size_t cols = art_begin + art_count;

  detail::Tableau t(m, cols);
  std::vector<std::size_t> init_col(m);
  std::size_t next_slack = structural, next_art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = model.constraints[i];
    for (const auto& [j, coef] : c.lhs.terms()) {
      mpq_class v = coef.raw();
      if (row_sign[i] < 0) v = -v;
      if (model.nonNegative) {
        t.at(i, j) += v;
      } else {
        t.at(i, 2 * j) += v;
        t.at(i, 2 * j + 1) -= v;
      }
    }
    t.rhs(i) = b[i].raw();
    switch (rel[i]) {
      case Relation::LessEqual:
        t.at(i, next_slack) = 1;
        init_col[i] = next_slack++;
        break;
      case Relation::GreaterEqual:
        t.at(i, next_slack++) = -1;
        t.at(i, next_art) = 1;
        init_col[i] = next_art++;
        break;
      case Relation::Equal:
        t.at(i, next_art) = 1;
        init_col[i] = next_art++;
        break;
    }
    t.basis()[i] = init_col[i];
  }

  LpSolution sol;
  // Phase 1: maximize -(sum of artificials).
  if (art_count > 0) {
    std::vector<mpq_class> c1(cols);
    for (std::size_t j = art_begin; j < cols; ++j) c1[j] = -1;
    t.load_objective(c1);
    t.run(cols, sol.pivots);
    if (sgn(t.rhs(m)) < 0) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive zero-level artificials out of the basis; rows with no pivot are redundant.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (sgn(t.at(i, j)) != 0) {
          t.pivot(i, j);
          ++sol.pivots;
          break;
        }
      }
    }
  }

  // Phase 2 in maximization form.
  const bool minimize = model.sense == Sense::Minimize;
  std::vector<mpq_class> c2(cols);
  for (const auto& [j, coef] : model.objective.terms()) {
    mpq_class v = minimize ? mpq_class(-coef.raw()) : coef.raw();
    if (model.nonNegative) {
      c2[j] = v;
    } else {
      c2[2 * j] = v;
      c2[2 * j + 1] = -v;
    }
  }
  t.load_objective(c2);
  if (t.run(art_begin, sol.pivots) == detail::Tableau::Outcome::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  std::vector<mpq_class> x(cols);
  for (std::size_t i = 0; i < m; ++i) x[t.basis()[i]] = t.rhs(i);
  sol.vertex.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    sol.vertex[j] = model.nonNegative ? Rational(x[j]) : Rational(mpq_class(x[2 * j] - x[2 * j + 1]));

  sol.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    mpq_class y = t.cost(init_col[i]);
    if (row_sign[i] < 0) y = -y;
    if (minimize) y = -y;
    sol.dual[i] = Rational(y);
  }
  sol.status = LpStatus::Optimal;
  sol.value = model.objective.evaluate(sol.vertex);
  return sol;
}

/// Exact optimality certificate: primal feasibility, objective agreement,
/// dual feasibility and a zero duality gap.
inline bool certify(const LpModel& model, const LpSolution& solution) {
  try {
    model.validate();
  } catch (const StructuralError&) {
    return false;
  }
  if (solution.status != LpStatus::Optimal || !solution.value) return false;
  const std::size_t n = model.variableCount;
  const std::size_t m = model.constraints.size();
  if (solution.vertex.size() != n || solution.dual.size() != m) return false;
  const auto& x = solution.vertex;
  if (model.nonNegative)
    for (const auto& v : x)
      if (v.sign() < 0) return false;
  for (const auto& c : model.constraints)
    if (!c.satisfied_by(x)) return false;
  if (model.objective.evaluate(x) != *solution.value) return false;

  // Work in maximization form.
  const Rational flip = model.sense == Sense::Minimize ? Rational(-1) : Rational(1);
  std::vector<Rational> reduced(n);  // A^T y - c
  Rational dual_value = flip * model.objective.constant();
  for (const auto& [j, coef] : model.objective.terms()) reduced[j] -= flip * coef;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = model.constraints[i];
    Rational y = flip * solution.dual[i];
    if (c.relation == Relation::LessEqual && y.sign() < 0) return false;
    if (c.relation == Relation::GreaterEqual && y.sign() > 0) return false;
    if (y.is_zero()) continue;
    for (const auto& [j, coef] : c.lhs.terms()) reduced[j] += y * coef;
    dual_value += y * (c.rhs - c.lhs.constant());
  }
  for (const auto& r : reduced) {
    if (model.nonNegative ? r.sign() < 0 : !r.is_zero()) return false;
  }
  return dual_value == flip * *solution.value;
}

}  // namespace bellbound
