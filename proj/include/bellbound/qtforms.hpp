#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellbound/errors.hpp"
#include "bellbound/quantity.hpp"
#include "bellbound/rational.hpp"
#include "bellbound/sqrt2.hpp"

namespace bellbound {

/// Ideal detection; fair-sampling with common efficiency eta (polynomial in eta);
/// efficiency-free normalized forms; asymmetric S as a polynomial in etaA*etaB.
enum class QtKind { Ideal, FsSymmetric, Normalized, AsymmetricS };

inline std::string to_string(QtKind k) {
  switch (k) {
    case QtKind::Ideal: return "ideal";
    case QtKind::FsSymmetric: return "fs-symmetric";
    case QtKind::Normalized: return "normalized";
    case QtKind::AsymmetricS: return "asymmetric-S";
  }
  return "?";
}

/// Quantum-theory bound: sum over terms of coef * v^exp, coef in Q(sqrt 2);
/// v is eta (FsSymmetric), etaA*etaB (AsymmetricS), unused otherwise.
struct QtFormula {
  BellQuantity quantity;
  Side side;
  QtKind kind;
  std::map<unsigned, SqrtTwoValue> terms;
  std::string label;

  [[nodiscard]] SqrtTwoValue evaluate(const Rational& v = 1) const {
    SqrtTwoValue out;
    for (const auto& [e, c] : terms) out += c * SqrtTwoValue(v.pow(e));
    return out;
  }

  /// Exact value at an argument in Q(sqrt 2).
  [[nodiscard]] SqrtTwoValue evaluate(const SqrtTwoValue& v) const {
    SqrtTwoValue out;
    for (const auto& [e, c] : terms) {
      SqrtTwoValue p(1);
      for (unsigned i = 0; i < e; ++i) p *= v;
      out += c * p;
    }
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += "(" + it->second.to_string() + ")";
      if (it->first == 1) s += "*v";
      if (it->first > 1) s += "*v^" + std::to_string(it->first);
    }
    return s.empty() ? "0" : s;
  }
};

namespace detail {

struct QtTerm {
  unsigned exp;
  const char* a;
  const char* b;
};

struct QtEntry {
  BellQuantity quantity;
  Side side;
  QtKind kind;
  std::array<QtTerm, 2> terms;
  unsigned term_count;
  const char* label;
};

// The audited table. Each term is (exponent, rational part, sqrt(2) part).
inline constexpr std::array<QtEntry, 22> kQtRegistry{{
    {BellQuantity::S(), Side::Upper, QtKind::Ideal, {{{0, "0", "2"}}}, 1, "S <= 2 sqrt2"},
    {BellQuantity::S(), Side::Lower, QtKind::Ideal, {{{0, "0", "-2"}}}, 1, "S >= -2 sqrt2"},
    {BellQuantity::DeltaPrime(), Side::Upper, QtKind::Ideal, {{{0, "-1/2", "1/2"}}}, 1, "Delta' <= (sqrt2-1)/2"},
    {BellQuantity::DeltaPrime(), Side::Lower, QtKind::Ideal, {{{0, "-1/2", "-1/2"}}}, 1, "Delta' >= -(1+sqrt2)/2"},
    {BellQuantity::Delta(), Side::Upper, QtKind::Ideal, {{{0, "-1/2", "1/2"}}}, 1, "Delta <= (sqrt2-1)/2"},
    {BellQuantity::Delta(), Side::Lower, QtKind::Ideal, {{{0, "-1/2", "-1/2"}}}, 1, "Delta >= -(1+sqrt2)/2"},
    {BellQuantity::deltaF(), Side::Upper, QtKind::Ideal, {{{0, "0", "1/4"}}}, 1, "delta <= sqrt2/4"},

    {BellQuantity::S(), Side::Upper, QtKind::FsSymmetric, {{{2, "0", "2"}}}, 1, "S <= 2 sqrt2 eta^2"},
    {BellQuantity::S(), Side::Lower, QtKind::FsSymmetric, {{{2, "0", "-2"}}}, 1, "S >= -2 sqrt2 eta^2"},
    {BellQuantity::DeltaPrime(), Side::Upper, QtKind::FsSymmetric, {{{2, "1/2", "1/2"}, {1, "-1", "0"}}}, 2,
     "Delta' <= (1+sqrt2)/2 eta^2 - eta"},
    {BellQuantity::DeltaPrime(), Side::Lower, QtKind::FsSymmetric, {{{2, "1/2", "-1/2"}, {1, "-1", "0"}}}, 2,
     "Delta' >= -(sqrt2-1)/2 eta^2 - eta"},
    {BellQuantity::Delta(), Side::Upper, QtKind::FsSymmetric, {{{2, "-1/2", "1/2"}}}, 1, "Delta <= (sqrt2-1)/2 eta^2"},
    {BellQuantity::Delta(), Side::Lower, QtKind::FsSymmetric, {{{2, "-1/2", "-1/2"}}}, 1,
     "Delta >= -(1+sqrt2)/2 eta^2"},
    {BellQuantity::deltaF(), Side::Upper, QtKind::FsSymmetric, {{{2, "0", "1/4"}}}, 1, "delta <= sqrt2/4 eta^2"},

    {BellQuantity::SN(), Side::Upper, QtKind::Normalized, {{{0, "0", "2"}}}, 1, "S_N <= 2 sqrt2"},
    {BellQuantity::SN(), Side::Lower, QtKind::Normalized, {{{0, "0", "-2"}}}, 1, "S_N >= -2 sqrt2"},
    {BellQuantity::DeltaN(), Side::Upper, QtKind::Normalized, {{{0, "-1/2", "1/2"}}}, 1, "Delta_N <= (sqrt2-1)/2"},
    {BellQuantity::DeltaN(), Side::Lower, QtKind::Normalized, {{{0, "-1/2", "-1/2"}}}, 1,
     "Delta_N >= -(1+sqrt2)/2"},
    {BellQuantity::deltaFN(), Side::Upper, QtKind::Normalized, {{{0, "0", "1/4"}}}, 1, "delta_N <= sqrt2/4"},

    {BellQuantity::S(), Side::Upper, QtKind::AsymmetricS, {{{1, "0", "2"}}}, 1, "S <= 2 sqrt2 etaA etaB"},
    {BellQuantity::S(), Side::Lower, QtKind::AsymmetricS, {{{1, "0", "-2"}}}, 1, "S >= -2 sqrt2 etaA etaB"},
    {BellQuantity::SN(), Side::Upper, QtKind::AsymmetricS, {{{0, "0", "2"}}}, 1, "S_N <= 2 sqrt2"},
}};

}  // namespace detail

/// Looks up the registered formula; throws DomainError for unregistered combinations.
inline QtFormula qt_formula(BellQuantity quantity, Side side, QtKind kind) {
  for (const auto& e : detail::kQtRegistry) {
    if (e.quantity != quantity || e.side != side || e.kind != kind) continue;
    QtFormula f{quantity, side, kind, {}, e.label};
    for (unsigned i = 0; i < e.term_count; ++i) {
      const auto& t = e.terms[i];
      f.terms[t.exp] += SqrtTwoValue(Rational::parse(t.a), Rational::parse(t.b));
    }
    return f;
  }
  throw DomainError("no quantum-theory formula registered for " + to_string(quantity) + " " + to_string(side) + " (" +
                    to_string(kind) + ")");
}

inline std::vector<QtFormula> qt_registry() {
  std::vector<QtFormula> out;
  for (const auto& e : detail::kQtRegistry) out.push_back(qt_formula(e.quantity, e.side, e.kind));
  return out;
}

struct QtEvaluation {
  SqrtTwoValue exact;
  std::string decimal;
};

/// Exact value plus a 15-digit decimal.
inline QtEvaluation evaluate(const QtFormula& f, const Rational& v = 1) {
  auto exact = f.evaluate(v);
  return {exact, exact.decimal(15)};
}

}  // namespace bellbound
