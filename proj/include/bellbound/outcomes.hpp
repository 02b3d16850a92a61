#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bellbound/errors.hpp"
#include "bellbound/lp.hpp"

namespace bellbound {

enum class Symbol { Plus, Minus, Zero };

/// binary-ideal {+,-}; ternary {+,-,0}; binary-removed {+,0} (direct detection, no analyzer).
enum class Alphabet { BinaryIdeal, Ternary, BinaryRemoved };

inline std::vector<Symbol> letters(Alphabet a) {
  switch (a) {
    case Alphabet::BinaryIdeal: return {Symbol::Plus, Symbol::Minus};
    case Alphabet::Ternary: return {Symbol::Plus, Symbol::Minus, Symbol::Zero};
    case Alphabet::BinaryRemoved: return {Symbol::Plus, Symbol::Zero};
  }
  return {};
}

inline std::size_t cardinality(Alphabet a) { return letters(a).size(); }

inline char symbol_char(Symbol s) {
  switch (s) {
    case Symbol::Plus: return '+';
    case Symbol::Minus: return '-';
    case Symbol::Zero: return '0';
  }
  return '?';
}

struct Record {
  std::string name;
  Alphabet alphabet;
};

class RecordSpec {
 public:
  RecordSpec() = default;
  RecordSpec(std::initializer_list<Record> records) : RecordSpec(std::vector<Record>(records)) {}
  explicit RecordSpec(std::vector<Record> records) : records_(std::move(records)) {
    std::set<std::string> seen;
    for (const auto& r : records_)
      if (!seen.insert(r.name).second) throw StructuralError("duplicate record name '" + r.name + "'");
  }

  [[nodiscard]] const std::vector<Record>& records() const { return records_; }
  [[nodiscard]] std::size_t size() const { return records_.size(); }
  [[nodiscard]] const Record& operator[](std::size_t i) const { return records_[i]; }

  [[nodiscard]] std::size_t position(std::string_view name) const {
    for (std::size_t i = 0; i < records_.size(); ++i)
      if (records_[i].name == name) return i;
    throw StructuralError("no record named '" + std::string(name) + "'");
  }

 private:
  std::vector<Record> records_;
};

inline std::size_t space_size(const RecordSpec& spec) {
  std::size_t n = 1;
  for (const auto& r : spec.records()) n *= cardinality(r.alphabet);
  return n;
}

/// Record orders used throughout: (A, A', B, B') and (A, A', A'', B, B', B'').
inline RecordSpec ideal_records() {
  return {{"A", Alphabet::BinaryIdeal}, {"A'", Alphabet::BinaryIdeal}, {"B", Alphabet::BinaryIdeal}, {"B'", Alphabet::BinaryIdeal}};
}
inline RecordSpec fixed_records() {
  return {{"A", Alphabet::Ternary}, {"A'", Alphabet::Ternary}, {"B", Alphabet::Ternary}, {"B'", Alphabet::Ternary}};
}
inline RecordSpec removable_records() {
  return {{"A", Alphabet::Ternary},  {"A'", Alphabet::Ternary},  {"A''", Alphabet::BinaryRemoved},
          {"B", Alphabet::Ternary},  {"B'", Alphabet::Ternary},  {"B''", Alphabet::BinaryRemoved}};
}

/// One subscript position: a literal outcome, '~' (sum over + and -) or '*' (sum over the whole alphabet).
enum class Selector { Plus, Minus, Zero, PlusMinus, Star };

/// Subscript pattern in text form: '+', '-', '0', '~' (for the +/- sum), '*'.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<Selector> selectors) : selectors_(std::move(selectors)) {}

  static Pattern parse(std::string_view text) {
    std::vector<Selector> sel;
    for (char c : text) {
      switch (c) {
        case '+': sel.push_back(Selector::Plus); break;
        case '-': sel.push_back(Selector::Minus); break;
        case '0': sel.push_back(Selector::Zero); break;
        case '~': sel.push_back(Selector::PlusMinus); break;
        case '*': sel.push_back(Selector::Star); break;
        default: throw StructuralError("bad pattern character '" + std::string(1, c) + "' in '" + std::string(text) + "'");
      }
    }
    return Pattern(std::move(sel));
  }

  /// All-star pattern of the given length.
  static Pattern star(std::size_t length) { return Pattern(std::vector<Selector>(length, Selector::Star)); }

  Pattern& set(std::size_t position, Selector s) {
    selectors_.at(position) = s;
    return *this;
  }

  [[nodiscard]] const std::vector<Selector>& selectors() const { return selectors_; }
  [[nodiscard]] std::size_t size() const { return selectors_.size(); }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (auto sel : selectors_) {
      switch (sel) {
        case Selector::Plus: s += '+'; break;
        case Selector::Minus: s += '-'; break;
        case Selector::Zero: s += '0'; break;
        case Selector::PlusMinus: s += '~'; break;
        case Selector::Star: s += '*'; break;
      }
    }
    return s;
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<Selector> selectors_;
};

/// Letters of `alphabet` selected by `sel`. Throws when a literal is foreign to the alphabet.
/// '~' on a binary-removed record selects '+', its only detection letter.
inline std::vector<Symbol> selected_letters(Alphabet alphabet, Selector sel) {
  auto alpha = letters(alphabet);
  auto has = [&](Symbol s) { return std::find(alpha.begin(), alpha.end(), s) != alpha.end(); };
  auto literal = [&](Symbol s) -> std::vector<Symbol> {
    if (!has(s)) throw StructuralError(std::string("literal '") + symbol_char(s) + "' not in record alphabet");
    return {s};
  };
  switch (sel) {
    case Selector::Plus: return literal(Symbol::Plus);
    case Selector::Minus: return literal(Symbol::Minus);
    case Selector::Zero: return literal(Symbol::Zero);
    case Selector::PlusMinus: {
      std::vector<Symbol> out;
      for (auto s : alpha)
        if (s != Symbol::Zero) out.push_back(s);
      return out;
    }
    case Selector::Star: return alpha;
  }
  return {};
}

/// Mixed-radix bijection between outcome tuples and variable indices; the first record is most significant.
class JointIndexer {
 public:
  explicit JointIndexer(RecordSpec spec) : spec_(std::move(spec)), size_(space_size(spec_)) {}

  [[nodiscard]] const RecordSpec& spec() const { return spec_; }
  [[nodiscard]] std::size_t size() const { return size_; }

  [[nodiscard]] std::size_t index(const std::vector<Symbol>& tuple) const {
    if (tuple.size() != spec_.size()) throw StructuralError("tuple length does not match record count");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      auto alpha = letters(spec_[k].alphabet);
      auto it = std::find(alpha.begin(), alpha.end(), tuple[k]);
      if (it == alpha.end()) throw StructuralError("symbol not in alphabet of record " + spec_[k].name);
      idx = idx * alpha.size() + static_cast<std::size_t>(it - alpha.begin());
    }
    return idx;
  }

  [[nodiscard]] std::vector<Symbol> tuple(std::size_t index) const {
    if (index >= size_) throw StructuralError("index outside joint space");
    std::vector<Symbol> t(spec_.size());
    for (std::size_t k = spec_.size(); k-- > 0;) {
      auto alpha = letters(spec_[k].alphabet);
      t[k] = alpha[index % alpha.size()];
      index /= alpha.size();
    }
    return t;
  }

  [[nodiscard]] std::string tuple_string(std::size_t index) const {
    std::string s;
    for (auto sym : tuple(index)) s += symbol_char(sym);
    return s;
  }

 private:
  RecordSpec spec_;
  std::size_t size_;
};

inline LinExpr marginal_expr(const JointIndexer& indexer, const Pattern& pattern) {
  const auto& spec = indexer.spec();
  if (pattern.size() != spec.size())
    throw StructuralError("pattern '" + pattern.to_string() + "' has wrong length for a " + std::to_string(spec.size()) + "-record space");
  std::vector<std::vector<Symbol>> choices;
  for (std::size_t k = 0; k < spec.size(); ++k) choices.push_back(selected_letters(spec[k].alphabet, pattern.selectors()[k]));

  LinExpr expr;
  std::vector<std::size_t> pos(spec.size(), 0);
  std::vector<Symbol> t(spec.size());
  for (;;) {
    for (std::size_t k = 0; k < spec.size(); ++k) t[k] = choices[k][pos[k]];
    expr.add_term(indexer.index(t), 1);
    std::size_t k = spec.size();
    while (k-- > 0) {
      if (++pos[k] < choices[k].size()) break;
      pos[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return expr;
}

inline std::size_t match_count(const JointIndexer& indexer, const Pattern& pattern) {
  return marginal_expr(indexer, pattern).size();
}

}  // namespace bellbound
