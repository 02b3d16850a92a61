#pragma once

#include <array>
#include <string>
#include <string_view>

#include "bellbound/errors.hpp"

namespace bellbound {

/// S (CHSH), DeltaPrime (CH, fixed analyzers), Delta (CH, removable analyzers),
/// DeltaF = (max Delta - min Delta) / 4 (Freedman).
enum class QuantityKind { S, DeltaPrime, Delta, DeltaF };

enum class Side { Upper, Lower };

struct BellQuantity {
  QuantityKind kind = QuantityKind::S;
  bool normalized = false;

  static constexpr BellQuantity S() { return {QuantityKind::S, false}; }
  static constexpr BellQuantity SN() { return {QuantityKind::S, true}; }
  static constexpr BellQuantity DeltaPrime() { return {QuantityKind::DeltaPrime, false}; }
  static constexpr BellQuantity Delta() { return {QuantityKind::Delta, false}; }
  static constexpr BellQuantity DeltaN() { return {QuantityKind::Delta, true}; }
  static constexpr BellQuantity deltaF() { return {QuantityKind::DeltaF, false}; }
  static constexpr BellQuantity deltaFN() { return {QuantityKind::DeltaF, true}; }

  [[nodiscard]] BellQuantity raw() const { return {kind, false}; }

  friend constexpr bool operator==(const BellQuantity&, const BellQuantity&) = default;
};

inline std::string to_string(BellQuantity q) {
  std::string base;
  switch (q.kind) {
    case QuantityKind::S: base = "S"; break;
    case QuantityKind::DeltaPrime: base = "DeltaPrime"; break;
    case QuantityKind::Delta: base = "Delta"; break;
    case QuantityKind::DeltaF: base = "delta"; break;
  }
  return q.normalized ? base + "N" : base;
}

inline BellQuantity parse_quantity(std::string_view s) {
  for (auto q : {BellQuantity::S(), BellQuantity::SN(), BellQuantity::DeltaPrime(), BellQuantity::Delta(),
                 BellQuantity::DeltaN(), BellQuantity::deltaF(), BellQuantity::deltaFN()})
    if (to_string(q) == s) return q;
  throw StructuralError("unknown Bell quantity '" + std::string(s) + "' (S, SN, DeltaPrime, Delta, DeltaN, delta, deltaN)");
}

inline std::string to_string(Side s) { return s == Side::Upper ? "upper" : "lower"; }

inline Side parse_side(std::string_view s) {
  if (s == "upper" || s == "max") return Side::Upper;
  if (s == "lower" || s == "min") return Side::Lower;
  throw StructuralError("unknown side '" + std::string(s) + "'");
}

}  // namespace bellbound
