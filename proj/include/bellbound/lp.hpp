#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellbound/errors.hpp"
#include "bellbound/rational.hpp"

namespace bellbound {

/// Sparse affine form sum(coef_i * x_i) + constant. Zero coefficients are never stored.
class LinExpr {
 public:
  using Terms = std::map<std::size_t, Rational>;

  LinExpr() = default;
  explicit LinExpr(Rational constant) : constant_(std::move(constant)) {}

  static LinExpr var(std::size_t index, Rational coef = 1) {
    LinExpr e;
    e.add_term(index, std::move(coef));
    return e;
  }

  void add_term(std::size_t index, const Rational& coef) {
    if (coef.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(index, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] const Rational& constant() const { return constant_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] Rational coefficient(std::size_t index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  [[nodiscard]] std::optional<std::size_t> max_index() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }

  [[nodiscard]] Rational evaluate(std::span<const Rational> x) const {
    Rational v = constant_;
    for (const auto& [i, c] : terms_) {
      if (i >= x.size()) throw StructuralError("evaluation point too short for variable " + std::to_string(i));
      v += c * x[i];
    }
    return v;
  }

  LinExpr& operator+=(const LinExpr& o) {
    for (const auto& [i, c] : o.terms_) add_term(i, c);
    constant_ += o.constant_;
    return *this;
  }
  LinExpr& operator-=(const LinExpr& o) {
    for (const auto& [i, c] : o.terms_) add_term(i, -c);
    constant_ -= o.constant_;
    return *this;
  }
  LinExpr& operator*=(const Rational& k) {
    if (k.is_zero()) {
      terms_.clear();
      constant_ = 0;
      return *this;
    }
    for (auto& [i, c] : terms_) c *= k;
    constant_ *= k;
    return *this;
  }

  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, const Rational& k) { return a *= k; }
  friend LinExpr operator*(const Rational& k, LinExpr a) { return a *= k; }
  friend LinExpr operator-(LinExpr a) { return a *= Rational(-1); }

  friend bool operator==(const LinExpr&, const LinExpr&) = default;

 private:
  Terms terms_;
  Rational constant_;
};

enum class Relation { Equal, LessEqual, GreaterEqual };

struct Constraint {
  LinExpr lhs;
  Relation relation = Relation::Equal;
  Rational rhs;

  [[nodiscard]] bool satisfied_by(std::span<const Rational> x) const {
    Rational v = lhs.evaluate(x);
    switch (relation) {
      case Relation::Equal: return v == rhs;
      case Relation::LessEqual: return v <= rhs;
      case Relation::GreaterEqual: return v >= rhs;
    }
    return false;
  }
};

enum class Sense { Maximize, Minimize };

struct LpModel {
  std::size_t variableCount = 0;
  std::vector<Constraint> constraints;
  LinExpr objective;
  Sense sense = Sense::Maximize;
  bool nonNegative = true;

  /// Throws StructuralError on a dangling variable index.
  void validate() const {
    auto check = [&](const LinExpr& e, const std::string& where) {
      if (auto m = e.max_index(); m && *m >= variableCount)
        throw StructuralError(where + " references variable " + std::to_string(*m) + " but the model has " +
                              std::to_string(variableCount) + " variables");
    };
    check(objective, "objective");
    for (std::size_t i = 0; i < constraints.size(); ++i) check(constraints[i].lhs, "constraint " + std::to_string(i));
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::optional<Rational> value;
  std::vector<Rational> vertex;
  /// One multiplier per model constraint, in the model's own sense; empty unless optimal.
  std::vector<Rational> dual;
  std::size_t pivots = 0;

  friend bool operator==(const LpSolution&, const LpSolution&) = default;
};

}  // namespace bellbound
