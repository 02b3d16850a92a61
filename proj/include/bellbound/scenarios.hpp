#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bellbound/errors.hpp"
#include "bellbound/lp.hpp"
#include "bellbound/outcomes.hpp"
#include "bellbound/rational.hpp"
#include "bellbound/scenario_tables.hpp"

namespace bellbound {

enum class Family {
  IdealApparentLocality,
  IdealLr,
  FsFixed,
  FsRemovable,
  PccdFixed,
  PccdRemovable,
  AsymFixed,
  AsymRemovable,
  Crosstalk,
};

/// Constraint stage; only the fair-sampling families use anything but Full.
enum class Level { MarginalOnly, FactualIndependence, Full };

inline constexpr std::array kAllFamilies{Family::IdealApparentLocality, Family::IdealLr,   Family::FsFixed,
                                         Family::FsRemovable,           Family::PccdFixed, Family::PccdRemovable,
                                         Family::AsymFixed,             Family::AsymRemovable, Family::Crosstalk};

inline std::string to_string(Family f) {
  switch (f) {
    case Family::IdealApparentLocality: return "ideal-apparent-locality";
    case Family::IdealLr: return "ideal-lr";
    case Family::FsFixed: return "fs-fixed";
    case Family::FsRemovable: return "fs-removable";
    case Family::PccdFixed: return "pccd-fixed";
    case Family::PccdRemovable: return "pccd-removable";
    case Family::AsymFixed: return "asym-fixed";
    case Family::AsymRemovable: return "asym-removable";
    case Family::Crosstalk: return "crosstalk";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  for (auto f : kAllFamilies)
    if (to_string(f) == s) return f;
  throw StructuralError("unknown scenario family '" + std::string(s) + "'");
}

inline std::string to_string(Level l) {
  switch (l) {
    case Level::MarginalOnly: return "marginal-only";
    case Level::FactualIndependence: return "factual-independence";
    case Level::Full: return "full";
  }
  return "?";
}

inline Level parse_level(std::string_view s) {
  for (auto l : {Level::MarginalOnly, Level::FactualIndependence, Level::Full})
    if (to_string(l) == s) return l;
  throw StructuralError("unknown constraint level '" + std::string(s) + "'");
}

inline bool is_fair_sampling(Family f) { return f == Family::FsFixed || f == Family::FsRemovable; }
inline bool is_asymmetric(Family f) { return f == Family::AsymFixed || f == Family::AsymRemovable; }
inline bool is_symmetric_efficiency(Family f) {
  return f == Family::FsFixed || f == Family::FsRemovable || f == Family::PccdFixed || f == Family::PccdRemovable;
}
inline bool is_removable(Family f) {
  return f == Family::FsRemovable || f == Family::PccdRemovable || f == Family::AsymRemovable;
}
inline bool is_ideal(Family f) { return f == Family::IdealApparentLocality || f == Family::IdealLr; }

struct ScenarioId {
  Family family = Family::IdealLr;
  Level level = Level::Full;

  void validate() const {
    if (level != Level::Full && !is_fair_sampling(family))
      throw DomainError("constraint level '" + to_string(level) + "' only applies to fs-fixed / fs-removable");
  }

  [[nodiscard]] std::string name() const {
    return is_fair_sampling(family) ? to_string(family) + "/" + to_string(level) : to_string(family);
  }

  friend bool operator==(const ScenarioId&, const ScenarioId&) = default;
};

struct Params {
  std::optional<Rational> eta;
  std::optional<Rational> etaA;
  std::optional<Rational> etaB;
  std::optional<Rational> pC;
  bool apparentLocality = false;

  static Params symmetric(Rational e) { return Params{.eta = std::move(e)}; }
  static Params asymmetric(Rational a, Rational b) { return Params{.etaA = std::move(a), .etaB = std::move(b)}; }
  static Params crosstalk(Rational p, bool apparent_locality = false) {
    return Params{.pC = std::move(p), .apparentLocality = apparent_locality};
  }

  friend bool operator==(const Params&, const Params&) = default;
};

inline void validate_params(Family family, const Params& p) {
  auto unit = [](const std::optional<Rational>& v, const char* name) {
    if (v && (v->sign() < 0 || *v > Rational(1)))
      throw DomainError(std::string(name) + " = " + v->to_string() + " outside [0,1]");
  };
  unit(p.eta, "eta");
  unit(p.etaA, "etaA");
  unit(p.etaB, "etaB");
  unit(p.pC, "pC");
  const bool sym = is_symmetric_efficiency(family), asym = is_asymmetric(family), xt = family == Family::Crosstalk;
  auto require = [&](bool needed, bool present, const char* name) {
    if (needed && !present) throw DomainError(to_string(family) + " requires parameter " + name);
    if (!needed && present) throw DomainError(to_string(family) + " does not take parameter " + name);
  };
  require(sym, p.eta.has_value(), "eta");
  require(asym, p.etaA.has_value(), "etaA");
  require(asym, p.etaB.has_value(), "etaB");
  require(xt, p.pC.has_value(), "pC");
  if (p.apparentLocality && !xt) throw DomainError("apparent-locality flag only applies to the crosstalk family");
}

/// Layout of four 2x2 observed tables p^{XY}_{ij}: table order AB, AB', A'B, A'B'; cells ++, +-, -+, --.
namespace tables {
inline constexpr std::array<const char*, 4> kTableNames{"AB", "AB'", "A'B", "A'B'"};
inline std::size_t cell(std::size_t offset, std::size_t table, int i, int j) {
  return offset + 4 * table + 2 * static_cast<std::size_t>(i) + static_cast<std::size_t>(j);
}
}  // namespace tables

struct ScenarioModel {
  ScenarioId id;
  Params params;
  /// Joint-distribution indexer; absent for the table-only apparent-locality model.
  std::optional<JointIndexer> indexer;
  std::size_t variableCount = 0;
  /// First variable of the observed 2x2 tables, when the model has them.
  std::optional<std::size_t> observedOffset;
  std::vector<Constraint> constraints;
  std::vector<std::string> variableCatalog;

  [[nodiscard]] LpModel to_lp(LinExpr objective, Sense sense) const {
    return LpModel{variableCount, constraints, std::move(objective), sense, true};
  }
};

namespace detail {

inline Constraint equality(LinExpr lhs, Rational rhs) { return Constraint{std::move(lhs), Relation::Equal, std::move(rhs)}; }

inline void add_table_totals(ScenarioModel& m, std::size_t offset) {
  for (std::size_t t = 0; t < 4; ++t) {
    LinExpr e;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) e.add_term(tables::cell(offset, t, i, j), 1);
    m.constraints.push_back(equality(std::move(e), 1));
  }
}

/// Row (first record fixed to `i`) or column (second record fixed to `j`) marginal of one observed table.
inline LinExpr table_marginal(std::size_t offset, std::size_t table, std::optional<int> i, std::optional<int> j) {
  LinExpr e;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if ((!i || *i == a) && (!j || *j == b)) e.add_term(tables::cell(offset, table, a, b), 1);
  return e;
}

/// Apparent-locality equalities between observed marginals. The third group is written
/// p^{AB}_{±s} = p^{A'B}_{±s} for both signs, mirroring the other three groups.
inline void add_apparent_locality(ScenarioModel& m, std::size_t offset) {
  constexpr std::size_t AB = 0, ABp = 1, ApB = 2, ApBp = 3;
  for (int s = 0; s < 2; ++s) {
    m.constraints.push_back(equality(table_marginal(offset, AB, s, {}) - table_marginal(offset, ABp, s, {}), 0));
    m.constraints.push_back(equality(table_marginal(offset, ApB, s, {}) - table_marginal(offset, ApBp, s, {}), 0));
    m.constraints.push_back(equality(table_marginal(offset, AB, {}, s) - table_marginal(offset, ApB, {}, s), 0));
    m.constraints.push_back(equality(table_marginal(offset, ABp, {}, s) - table_marginal(offset, ApBp, {}, s), 0));
  }
}

inline void catalog_tables(ScenarioModel& m, std::size_t offset) {
  for (std::size_t t = 0; t < 4; ++t)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        m.variableCatalog[tables::cell(offset, t, i, j)] =
            std::string("p^{") + tables::kTableNames[t] + "}_{" + (i ? '-' : '+') + (j ? '-' : '+') + "}";
}

inline void catalog_joint(ScenarioModel& m) {
  std::string sup;
  for (const auto& r : m.indexer->spec().records()) sup += r.name;
  for (std::size_t k = 0; k < m.indexer->size(); ++k)
    m.variableCatalog[k] = "p^{" + sup + "}_{" + m.indexer->tuple_string(k) + "}";
}

template <std::size_t N>
void add_sym_rows(ScenarioModel& m, const std::array<tables::SymRow, N>& rows, const Rational& eta) {
  for (const auto& row : rows)
    m.constraints.push_back(equality(marginal_expr(*m.indexer, Pattern::parse(row.pattern)), eta.pow(row.exp)));
}

template <std::size_t N>
void add_asym_rows(ScenarioModel& m, const std::array<tables::AsymRow, N>& rows, const Rational& etaA,
                   const Rational& etaB) {
  for (const auto& row : rows)
    m.constraints.push_back(
        equality(marginal_expr(*m.indexer, Pattern::parse(row.pattern)), etaA.pow(row.expA) * etaB.pow(row.expB)));
}

/// Joint pattern selecting outcome `i` on record `x` and `j` on record `y`, '~' elsewhere.
inline Pattern pair_pattern(std::size_t length, std::size_t x, Selector i, std::size_t y, Selector j, Selector rest) {
  Pattern p(std::vector<Selector>(length, rest));
  p.set(x, i);
  p.set(y, j);
  return p;
}

}  // namespace detail

inline ScenarioModel build(const ScenarioId& id, const Params& params) {
  id.validate();
  validate_params(id.family, params);
  ScenarioModel m{.id = id, .params = params};
  const Rational one(1);

  switch (id.family) {
    case Family::IdealApparentLocality: {
      m.variableCount = 16;
      m.observedOffset = 0;
      m.variableCatalog.resize(16);
      detail::catalog_tables(m, 0);
      detail::add_table_totals(m, 0);
      detail::add_apparent_locality(m, 0);
      break;
    }
    case Family::IdealLr: {
      m.indexer.emplace(ideal_records());
      m.variableCount = m.indexer->size();
      m.variableCatalog.resize(m.variableCount);
      detail::catalog_joint(m);
      m.constraints.push_back(detail::equality(marginal_expr(*m.indexer, Pattern::star(4)), one));
      break;
    }
    case Family::FsFixed:
    case Family::FsRemovable: {
      const bool removable = id.family == Family::FsRemovable;
      m.indexer.emplace(removable ? removable_records() : fixed_records());
      m.variableCount = m.indexer->size();
      m.variableCatalog.resize(m.variableCount);
      detail::catalog_joint(m);
      const Rational& eta = *params.eta;
      if (removable) {
        detail::add_sym_rows(m, tables::kFsRemovableMarginal, eta);
        if (id.level != Level::MarginalOnly) detail::add_sym_rows(m, tables::kFsRemovableFactual, eta);
        if (id.level == Level::Full) detail::add_sym_rows(m, tables::kFsRemovableFull, eta);
      } else {
        detail::add_sym_rows(m, tables::kFsFixedMarginal, eta);
        if (id.level != Level::MarginalOnly) detail::add_sym_rows(m, tables::kFsFixedFactual, eta);
        if (id.level == Level::Full) detail::add_sym_rows(m, tables::kFsFixedFull, eta);
      }
      break;
    }
    case Family::PccdFixed:
    case Family::PccdRemovable: {
      const bool removable = id.family == Family::PccdRemovable;
      m.indexer.emplace(removable ? removable_records() : fixed_records());
      m.variableCount = m.indexer->size();
      m.variableCatalog.resize(m.variableCount);
      detail::catalog_joint(m);
      if (removable)
        detail::add_sym_rows(m, tables::kPccdRemovable, *params.eta);
      else
        detail::add_sym_rows(m, tables::kPccdFixed, *params.eta);
      break;
    }
    case Family::AsymFixed:
    case Family::AsymRemovable: {
      const bool removable = id.family == Family::AsymRemovable;
      m.indexer.emplace(removable ? removable_records() : fixed_records());
      m.variableCount = m.indexer->size();
      m.variableCatalog.resize(m.variableCount);
      detail::catalog_joint(m);
      if (removable)
        detail::add_asym_rows(m, tables::kAsymRemovable, *params.etaA, *params.etaB);
      else
        detail::add_asym_rows(m, tables::kAsymFixed, *params.etaA, *params.etaB);
      break;
    }
    case Family::Crosstalk: {
      m.indexer.emplace(ideal_records());
      const std::size_t offset = m.indexer->size();
      m.observedOffset = offset;
      m.variableCount = offset + 16;
      m.variableCatalog.resize(m.variableCount);
      detail::catalog_joint(m);
      detail::catalog_tables(m, offset);
      m.constraints.push_back(detail::equality(marginal_expr(*m.indexer, Pattern::star(4)), one));
      detail::add_table_totals(m, offset);
      // |p^{XY}_{ij} - joint marginal| <= pC, as two one-sided rows each.
      constexpr std::array<std::pair<std::size_t, std::size_t>, 4> kXY{{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
      const Rational& pc = *params.pC;
      for (std::size_t t = 0; t < 4; ++t) {
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            auto si = i ? Selector::Minus : Selector::Plus;
            auto sj = j ? Selector::Minus : Selector::Plus;
            LinExpr diff = LinExpr::var(tables::cell(offset, t, i, j)) -
                           marginal_expr(*m.indexer, detail::pair_pattern(4, kXY[t].first, si, kXY[t].second, sj,
                                                                           Selector::PlusMinus));
            m.constraints.push_back(Constraint{diff, Relation::LessEqual, pc});
            m.constraints.push_back(Constraint{diff, Relation::GreaterEqual, -pc});
          }
        }
      }
      if (params.apparentLocality) detail::add_apparent_locality(m, offset);
      break;
    }
  }
  return m;
}

/// Product-measure assignment that satisfies every constraint of build(id, params).
/// Fair-sampling and asymmetric families: each analyzer record is + or - with
/// probability eta/2 and 0 otherwise, independently; A''/B'' are + with probability eta.
/// Perfectly correlated families: one detectability token per arm, detected with
/// probability eta, shared by all records of that arm, outcomes +/- uniform.
inline std::vector<Rational> feasibility_witness(const ScenarioId& id, const Params& params) {
  const ScenarioModel m = build(id, params);
  std::vector<Rational> x(m.variableCount);
  const Rational half(1, 2), quarter(1, 4);

  switch (id.family) {
    case Family::IdealApparentLocality:
      for (auto& v : x) v = quarter;
      return x;
    case Family::Crosstalk:
      for (std::size_t k = 0; k < 16; ++k) x[k] = Rational(1, 16);
      for (std::size_t k = 16; k < 32; ++k) x[k] = quarter;
      return x;
    case Family::IdealLr:
      for (auto& v : x) v = Rational(1, 16);
      return x;
    default: break;
  }

  const auto& spec = m.indexer->spec();
  auto side_eta = [&](std::size_t record) -> const Rational& {
    bool a_side = spec[record].name.front() == 'A';
    if (is_asymmetric(id.family)) return a_side ? *params.etaA : *params.etaB;
    return *params.eta;
  };

  for (std::size_t k = 0; k < m.variableCount; ++k) {
    auto t = m.indexer->tuple(k);
    Rational p(1);
    if (id.family == Family::PccdFixed || id.family == Family::PccdRemovable) {
      for (char arm : {'A', 'B'}) {
        bool all_zero = true, all_detected = true;
        std::size_t analyzers = 0;
        for (std::size_t r = 0; r < spec.size(); ++r) {
          if (spec[r].name.front() != arm) continue;
          bool detected = t[r] != Symbol::Zero;
          all_zero = all_zero && !detected;
          all_detected = all_detected && detected;
          if (spec[r].alphabet == Alphabet::Ternary) ++analyzers;
        }
        if (all_zero)
          p *= Rational(1) - *params.eta;
        else if (all_detected)
          p *= *params.eta * half.pow(static_cast<unsigned>(analyzers));
        else
          p = 0;
      }
    } else {
      for (std::size_t r = 0; r < spec.size(); ++r) {
        const Rational& e = side_eta(r);
        if (t[r] == Symbol::Zero)
          p *= Rational(1) - e;
        else if (spec[r].alphabet == Alphabet::BinaryRemoved)
          p *= e;
        else
          p *= e * half;
      }
    }
    x[k] = p;
  }
  return x;
}

}  // namespace bellbound
