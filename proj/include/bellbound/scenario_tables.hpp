#pragma once

#include <array>
#include <span>

// Marginal-detection constraint lists, one row per displayed member.
// Patterns use record order (A, A', B, B') or (A, A', A'', B, B', B'');
// '~' is the +/- sum, '*' the full-alphabet sum. The right-hand side of a
// row is eta^exp (symmetric lists) or etaA^a * etaB^b (asymmetric lists).

namespace bellbound::tables {

struct SymRow {
  const char* pattern;
  unsigned exp;
};

struct AsymRow {
  const char* pattern;
  unsigned expA;
  unsigned expB;
};

// ---- fair-sampling detection, fixed analyzers ----

inline constexpr std::array<SymRow, 5> kFsFixedMarginal{{
    {"****", 0},
    {"~***", 1}, {"*~**", 1},
    {"**~*", 1}, {"***~", 1},
}};

inline constexpr std::array<SymRow, 4> kFsFixedFactual{{
    {"~*~*", 2}, {"~**~", 2}, {"*~~*", 2}, {"*~*~", 2},
}};

inline constexpr std::array<SymRow, 7> kFsFixedFull{{
    {"~~**", 2}, {"**~~", 2},
    {"~*~~", 3}, {"*~~~", 3}, {"~~~*", 3}, {"~~*~", 3},
    {"~~~~", 4},
}};

// ---- fair-sampling detection, removable analyzers ----

inline constexpr std::array<SymRow, 7> kFsRemovableMarginal{{
    {"******", 0},
    {"~*****", 1}, {"*~****", 1},
    {"***~**", 1}, {"****~*", 1},
    {"**+***", 1}, {"*****+", 1},
}};

inline constexpr std::array<SymRow, 9> kFsRemovableFactual{{
    {"~**~**", 2}, {"~***~*", 2}, {"~****+", 2},
    {"*~*~**", 2}, {"*~**~*", 2}, {"*~***+", 2},
    {"**+~**", 2}, {"**+*~*", 2}, {"**+**+", 2},
}};

inline constexpr std::array<SymRow, 48> kFsRemovableFull{{
    {"~~****", 2}, {"~*+***", 2}, {"*~+***", 2},
    {"***~~*", 2}, {"***~*+", 2}, {"****~+", 2},
    {"~~+***", 3}, {"~~*~**", 3}, {"~~**~*", 3},
    {"~~***+", 3}, {"~*+~**", 3}, {"~*+*~*", 3},
    {"~*+**+", 3}, {"~**~~*", 3}, {"~**~*+", 3},
    {"~***~+", 3}, {"*~+~**", 3}, {"*~+*~*", 3},
    {"*~+**+", 3}, {"*~*~~*", 3}, {"*~*~*+", 3},
    {"*~**~+", 3}, {"**+~~*", 3}, {"**+~*+", 3},
    {"**+*~+", 3}, {"***~~+", 3},
    {"~~+~**", 4}, {"~~+*~*", 4}, {"~~+**+", 4},
    {"~~*~~*", 4}, {"~~*~*+", 4}, {"~~**~+", 4},
    {"~*+~~*", 4}, {"~*+~*+", 4}, {"~*+*~+", 4},
    {"~**~~+", 4}, {"*~+~~*", 4}, {"*~+~*+", 4},
    {"*~+*~+", 4}, {"*~*~~+", 4}, {"**+~~+", 4},
    {"~~+~~*", 5}, {"~~+~*+", 5}, {"~~+*~+", 5},
    {"~~*~~+", 5}, {"~*+~~+", 5}, {"*~+~~+", 5},
    {"~~+~~+", 6},
}};

// ---- perfectly correlated counterfactual detection ----

inline constexpr std::array<SymRow, 16> kPccdFixed{{
    {"****", 0},
    {"~***", 1}, {"*~**", 1}, {"**~*", 1}, {"***~", 1},
    {"~*~*", 2}, {"~**~", 2}, {"*~~*", 2}, {"*~*~", 2},
    {"~~**", 1}, {"**~~", 1},
    {"~*~~", 2}, {"*~~~", 2}, {"~~~*", 2}, {"~~*~", 2},
    {"~~~~", 2},
}};

inline constexpr std::array<SymRow, 64> kPccdRemovable{{
    {"******", 0},
    {"~*****", 1}, {"*~****", 1}, {"**+***", 1},
    {"***~**", 1}, {"****~*", 1}, {"*****+", 1},
    {"~**~**", 2}, {"~***~*", 2}, {"~****+", 2},
    {"*~*~**", 2}, {"*~**~*", 2}, {"*~***+", 2},
    {"**+~**", 2}, {"**+*~*", 2}, {"**+**+", 2},
    {"~~****", 1}, {"~*+***", 1}, {"*~+***", 1},
    {"***~~*", 1}, {"***~*+", 1}, {"****~+", 1},
    {"~~*~**", 2}, {"~~**~*", 2}, {"~~***+", 2},
    {"~*+~**", 2}, {"~*+*~*", 2}, {"~*+**+", 2},
    {"~**~~*", 2}, {"~**~*+", 2}, {"~***~+", 2},
    {"*~+~**", 2}, {"*~+*~*", 2}, {"*~+**+", 2},
    {"*~*~~*", 2}, {"*~*~*+", 2}, {"*~**~+", 2},
    {"**+~~*", 2}, {"**+~*+", 2}, {"**+*~+", 2},
    {"~~+***", 1}, {"***~~+", 1},
    {"~~+~**", 2}, {"~~+*~*", 2}, {"~~+**+", 2},
    {"~~*~~*", 2}, {"~~*~*+", 2}, {"~~**~+", 2},
    {"~*+~~*", 2}, {"~*+~*+", 2}, {"~*+*~+", 2},
    {"~**~~+", 2}, {"*~+~~*", 2}, {"*~+~*+", 2},
    {"*~+*~+", 2}, {"*~*~~+", 2}, {"**+~~+", 2},
    {"~~+~~*", 2}, {"~~+~*+", 2}, {"~~+*~+", 2},
    {"~~*~~+", 2}, {"~*+~~+", 2}, {"*~+~~+", 2},
    {"~~+~~+", 2},
}};

// ---- asymmetric detection efficiencies ----

inline constexpr std::array<AsymRow, 16> kAsymFixed{{
    {"****", 0, 0},
    {"~***", 1, 0}, {"*~**", 1, 0},
    {"**~*", 0, 1}, {"***~", 0, 1},
    {"~*~*", 1, 1}, {"~**~", 1, 1}, {"*~~*", 1, 1}, {"*~*~", 1, 1},
    {"~~**", 2, 0},
    {"**~~", 0, 2},
    {"~*~~", 1, 2}, {"*~~~", 1, 2},
    {"~~~*", 2, 1}, {"~~*~", 2, 1},
    {"~~~~", 2, 2},
}};

inline constexpr std::array<AsymRow, 64> kAsymRemovable{{
    {"******", 0, 0},
    {"~*****", 1, 0}, {"*~****", 1, 0}, {"**+***", 1, 0},
    {"***~**", 0, 1}, {"****~*", 0, 1}, {"*****+", 0, 1},
    {"~**~**", 1, 1}, {"~***~*", 1, 1}, {"~****+", 1, 1},
    {"*~*~**", 1, 1}, {"*~**~*", 1, 1}, {"*~***+", 1, 1},
    {"**+~**", 1, 1}, {"**+*~*", 1, 1}, {"**+**+", 1, 1},
    {"~~****", 2, 0}, {"~*+***", 2, 0}, {"*~+***", 2, 0},
    {"***~~*", 0, 2}, {"***~*+", 0, 2}, {"****~+", 0, 2},
    {"~~*~**", 2, 1}, {"~~**~*", 2, 1}, {"~~***+", 2, 1},
    {"~*+~**", 2, 1}, {"~*+*~*", 2, 1}, {"~*+**+", 2, 1},
    {"~**~~*", 1, 2}, {"~**~*+", 1, 2}, {"~***~+", 1, 2},
    {"*~+~**", 2, 1}, {"*~+*~*", 2, 1}, {"*~+**+", 2, 1},
    {"*~*~~*", 1, 2}, {"*~*~*+", 1, 2}, {"*~**~+", 1, 2},
    {"**+~~*", 1, 2}, {"**+~*+", 1, 2}, {"**+*~+", 1, 2},
    {"~~+***", 3, 0},
    {"***~~+", 0, 3},
    {"~~+~**", 3, 1}, {"~~+*~*", 3, 1}, {"~~+**+", 3, 1},
    {"~~*~~*", 2, 2}, {"~~*~*+", 2, 2}, {"~~**~+", 2, 2},
    {"~*+~~*", 2, 2}, {"~*+~*+", 2, 2}, {"~*+*~+", 2, 2},
    {"~**~~+", 1, 3}, {"*~*~~+", 1, 3}, {"**+~~+", 1, 3},
    {"*~+~~*", 2, 2}, {"*~+~*+", 2, 2}, {"*~+*~+", 2, 2},
    {"~~+~~*", 3, 2}, {"~~+~*+", 3, 2}, {"~~+*~+", 3, 2},
    {"~~*~~+", 2, 3}, {"~*+~~+", 2, 3}, {"*~+~~+", 2, 3},
    {"~~+~~+", 3, 3},
}};

}  // namespace bellbound::tables
