#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>

#include "bellbound/errors.hpp"
#include "bellbound/lp.hpp"
#include "bellbound/outcomes.hpp"
#include "bellbound/qtforms.hpp"
#include "bellbound/quantity.hpp"
#include "bellbound/rational.hpp"
#include "bellbound/scenarios.hpp"

namespace bellbound {

/// Whether `q` has an LP objective on `family`. DeltaF never does (it is derived from two Delta solves).
inline bool compatible(BellQuantity q, Family family) {
  switch (q.kind) {
    case QuantityKind::S:
      return !is_removable(family);
    case QuantityKind::DeltaPrime:
      return !is_removable(family) && family != Family::Crosstalk && !q.normalized;
    case QuantityKind::Delta:
    case QuantityKind::DeltaF:
      return is_removable(family) || is_ideal(family);
  }
  return false;
}

namespace detail {

class ObjectiveBuilder {
 public:
  explicit ObjectiveBuilder(const ScenarioModel& m) : m_(m) {}

  /// p^{XY}_{ij} for outcome literals i, j.
  [[nodiscard]] LinExpr pair(std::string_view x, Selector i, std::string_view y, Selector j) const {
    if (m_.observedOffset) {
      std::size_t t = table_index(x, y);
      return LinExpr::var(tables::cell(*m_.observedOffset, t, i == Selector::Minus, j == Selector::Minus));
    }
    const auto& spec = m_.indexer->spec();
    Pattern p = Pattern::star(spec.size());
    p.set(spec.position(x), i);
    p.set(spec.position(y), j);
    return marginal_expr(*m_.indexer, p);
  }

  /// Single-record marginal p^X_+.
  [[nodiscard]] LinExpr single_plus(std::string_view x) const {
    if (m_.observedOffset) {
      // Read from a table that contains X; apparent locality makes the choice immaterial.
      bool a_side = x.front() == 'A';
      std::size_t t = a_side ? table_index(x, "B") : table_index("A", x);
      return a_side ? detail::table_marginal(*m_.observedOffset, t, 0, {})
                    : detail::table_marginal(*m_.observedOffset, t, {}, 0);
    }
    const auto& spec = m_.indexer->spec();
    Pattern p = Pattern::star(spec.size());
    p.set(spec.position(x), Selector::Plus);
    return marginal_expr(*m_.indexer, p);
  }

  [[nodiscard]] LinExpr correlation(std::string_view x, std::string_view y) const {
    return pair(x, Selector::Plus, y, Selector::Plus) + pair(x, Selector::Minus, y, Selector::Minus) -
           pair(x, Selector::Plus, y, Selector::Minus) - pair(x, Selector::Minus, y, Selector::Plus);
  }

  [[nodiscard]] LinExpr plus_plus(std::string_view x, std::string_view y) const {
    return pair(x, Selector::Plus, y, Selector::Plus);
  }

 private:
  static std::size_t table_index(std::string_view x, std::string_view y) {
    for (std::size_t t = 0; t < 4; ++t) {
      std::string name = std::string(x) + std::string(y);
      if (name == tables::kTableNames[t]) return t;
    }
    throw StructuralError("no observed table " + std::string(x) + std::string(y));
  }

  const ScenarioModel& m_;
};

}  // namespace detail

/// Linear functional of `q` over the model's variables (observed tables for the
/// crosstalk model). On the ideal families Delta coincides with Delta': with
/// ideal detection the analyzer-free records A'', B'' always register +.
inline LinExpr objective(BellQuantity q, const ScenarioModel& model) {
  if (q.kind == QuantityKind::DeltaF)
    throw DomainError("delta is derived from the extrema of Delta, not a single objective");
  if (!compatible(q, model.id.family))
    throw DomainError(to_string(q) + " is not defined on the " + to_string(model.id.family) + " scenario");
  detail::ObjectiveBuilder b(model);
  LinExpr e;
  switch (q.kind) {
    case QuantityKind::S:
      e = b.correlation("A", "B") - b.correlation("A", "B'") + b.correlation("A'", "B") + b.correlation("A'", "B'");
      break;
    case QuantityKind::DeltaPrime:
      e = b.plus_plus("A", "B") - b.plus_plus("A", "B'") + b.plus_plus("A'", "B") + b.plus_plus("A'", "B'") -
          b.single_plus("A'") - b.single_plus("B");
      break;
    case QuantityKind::Delta:
      e = b.plus_plus("A", "B") - b.plus_plus("A", "B'") + b.plus_plus("A'", "B") + b.plus_plus("A'", "B'");
      if (is_removable(model.id.family))
        e -= b.plus_plus("A'", "B''") + b.plus_plus("A''", "B");
      else
        e -= b.single_plus("A'") + b.single_plus("B");
      break;
    case QuantityKind::DeltaF: break;
  }
  return e;
}

/// Freedman quantity from the extrema of Delta.
inline Rational delta_from_extrema(const Rational& delta_max, const Rational& delta_min) {
  if (delta_max < delta_min)
    throw DomainError("delta_from_extrema: max " + delta_max.to_string() + " below min " + delta_min.to_string());
  return (delta_max - delta_min) / Rational(4);
}

/// Divides by eta^2 (symmetric) or etaA*etaB (asymmetric). Parameter sets without
/// an efficiency are ideal detection and normalize to themselves.
inline Rational normalize(const Rational& value, BellQuantity q, const Params& params) {
  if (q.kind == QuantityKind::DeltaPrime) throw DomainError("Delta' has no normalized form");
  Rational scale(1);
  if (params.eta)
    scale = *params.eta * *params.eta;
  else if (params.etaA && params.etaB)
    scale = *params.etaA * *params.etaB;
  if (scale.is_zero()) throw DomainError("normalization undefined at eta=0");
  return value / scale;
}

struct QtBound {
  BellQuantity quantity;
  std::optional<QtFormula> lowerForm, upperForm;
  std::optional<QtEvaluation> lower, upper;
};

/// Quantum-theory interval for `q` under `params`: normalized forms when q is
/// normalized, fair-sampling forms in eta, asymmetric S in etaA*etaB, ideal otherwise.
inline QtBound qt_bound(BellQuantity q, const Params& params) {
  QtKind kind = QtKind::Ideal;
  Rational v(1);
  if (q.normalized) {
    kind = QtKind::Normalized;
  } else if (params.eta) {
    kind = QtKind::FsSymmetric;
    v = *params.eta;
  } else if (params.etaA || params.etaB) {
    if (!params.etaA || !params.etaB) throw DomainError("asymmetric bound needs both etaA and etaB");
    kind = QtKind::AsymmetricS;
    v = *params.etaA * *params.etaB;
  }
  QtBound out{q, {}, {}, {}, {}};
  for (Side side : {Side::Lower, Side::Upper}) {
    try {
      QtFormula f = qt_formula(q, side, kind);
      auto val = evaluate(f, v);
      if (side == Side::Lower) {
        out.lowerForm = f;
        out.lower = val;
      } else {
        out.upperForm = f;
        out.upper = val;
      }
    } catch (const DomainError&) {
    }
  }
  if (!out.lower && !out.upper)
    throw DomainError("no quantum-theory bound for " + to_string(q) + " (" + to_string(kind) + ")");
  return out;
}

}  // namespace bellbound
