#pragma once

#include <string>
#include <vector>

#include "bellbound/lp.hpp"
#include "bellbound/polynomial.hpp"
#include "bellbound/quantity.hpp"
#include "bellbound/rational.hpp"
#include "bellbound/scenarios.hpp"

namespace bellbound {

/// Published local-realistic bound, as exact reference data.
struct ReferenceForm {
  std::string anchor;
  ScenarioId scenario;
  BellQuantity quantity;
  Sense sense;
  PiecewiseBound bound;
};

struct IdealReference {
  std::string anchor;
  ScenarioId scenario;
  BellQuantity quantity;
  Sense sense;
  Rational value;
};

struct BivariateReference {
  std::string anchor;
  ScenarioId scenario;
  BellQuantity quantity;
  Sense sense;
  Polynomial2 form;
};

namespace forms {

inline Rational r(long n, long d = 1) { return Rational(n, d); }

inline PiecewiseBound piece(Polynomial p) { return single_piece(std::move(p)); }

inline PiecewiseBound two_pieces(Polynomial left, Rational cut, Polynomial right, std::string var = "eta") {
  PiecewiseBound b;
  b.variable = std::move(var);
  b.segments.push_back({Rational(0), cut, std::move(left)});
  b.segments.push_back({cut, Rational(1), std::move(right)});
  return b;
}

inline PiecewiseBound negated(PiecewiseBound b) {
  for (auto& s : b.segments) s.poly = -s.poly;
  return b;
}

// LR + fair-sampling detection.
inline Polynomial fs_s_upper() { return {{4, r(-2)}, {2, r(4)}}; }
inline Polynomial fs_dprime_lower() { return {{4, r(-1)}, {3, r(2)}, {1, r(-2)}}; }
inline Polynomial fs_delta_upper() { return {{6, r(1)}, {5, r(-2)}, {4, r(2)}, {3, r(-4)}, {2, r(3)}}; }
inline Polynomial fs_delta_lower() { return {{6, r(-1)}, {4, r(3)}, {2, r(-3)}}; }
inline Polynomial fs_deltaf_upper() { return {{6, r(1, 2)}, {5, r(-1, 2)}, {4, r(-1, 4)}, {3, r(-1)}, {2, r(3, 2)}}; }

}  // namespace forms

/// Fair-sampling displays, raw and normalized, plus the Garg-Mermin intermediate level.
inline std::vector<ReferenceForm> lr_fsd_forms() {
  using namespace forms;
  const ScenarioId fixed{Family::FsFixed, Level::Full}, removable{Family::FsRemovable, Level::Full};
  const ScenarioId gm{Family::FsFixed, Level::FactualIndependence};
  std::vector<ReferenceForm> out{
      {"LR+FSD S upper", fixed, BellQuantity::S(), Sense::Maximize, piece(fs_s_upper())},
      {"LR+FSD S lower", fixed, BellQuantity::S(), Sense::Minimize, piece(-fs_s_upper())},
      {"LR+FSD Delta' upper", fixed, BellQuantity::DeltaPrime(), Sense::Maximize, piece({})},
      {"LR+FSD Delta' lower", fixed, BellQuantity::DeltaPrime(), Sense::Minimize, piece(fs_dprime_lower())},
      {"LR+FSD Delta upper", removable, BellQuantity::Delta(), Sense::Maximize, piece(fs_delta_upper())},
      {"LR+FSD Delta lower", removable, BellQuantity::Delta(), Sense::Minimize, piece(fs_delta_lower())},
      {"LR+FSD delta upper", removable, BellQuantity::deltaF(), Sense::Maximize, piece(fs_deltaf_upper())},
      {"LR+FSD S_N upper", fixed, BellQuantity::SN(), Sense::Maximize, piece({{2, r(-2)}, {0, r(4)}})},
      {"LR+FSD S_N lower", fixed, BellQuantity::SN(), Sense::Minimize, piece({{2, r(2)}, {0, r(-4)}})},
      {"LR+FSD Delta_N upper", removable, BellQuantity::DeltaN(), Sense::Maximize,
       piece({{4, r(1)}, {3, r(-2)}, {2, r(2)}, {1, r(-4)}, {0, r(3)}})},
      {"LR+FSD Delta_N lower", removable, BellQuantity::DeltaN(), Sense::Minimize,
       piece({{4, r(-1)}, {2, r(3)}, {0, r(-3)}})},
      {"LR+FSD delta_N upper", removable, BellQuantity::deltaFN(), Sense::Maximize,
       piece({{4, r(1, 2)}, {3, r(-1, 2)}, {2, r(-1, 4)}, {1, r(-1)}, {0, r(3, 2)}})},
      {"Garg-Mermin S_N upper", gm, BellQuantity::SN(), Sense::Maximize,
       two_pieces({{0, r(4)}}, r(2, 3), {{-1, r(4)}, {0, r(-2)}})},
      {"Garg-Mermin S_N lower", gm, BellQuantity::SN(), Sense::Minimize,
       two_pieces({{0, r(-4)}}, r(2, 3), {{-1, r(-4)}, {0, r(2)}})},
  };
  return out;
}

/// Perfectly correlated counterfactual detection displays.
inline std::vector<ReferenceForm> lr_pccd_forms() {
  using namespace forms;
  const ScenarioId fixed{Family::PccdFixed, Level::Full}, removable{Family::PccdRemovable, Level::Full};
  return {
      {"LR+PCCD S upper", fixed, BellQuantity::S(), Sense::Maximize, piece({{2, r(2)}})},
      {"LR+PCCD S lower", fixed, BellQuantity::S(), Sense::Minimize, piece({{2, r(-2)}})},
      {"LR+PCCD Delta' upper", fixed, BellQuantity::DeltaPrime(), Sense::Maximize, piece({})},
      {"LR+PCCD Delta' lower", fixed, BellQuantity::DeltaPrime(), Sense::Minimize, piece({{2, r(1)}, {1, r(-2)}})},
      {"LR+PCCD Delta upper", removable, BellQuantity::Delta(), Sense::Maximize, piece({})},
      {"LR+PCCD Delta lower", removable, BellQuantity::Delta(), Sense::Minimize, piece({{2, r(-1)}})},
      {"LR+PCCD delta upper", removable, BellQuantity::deltaF(), Sense::Maximize, piece({{2, r(1, 4)}})},
      {"LR+PCCD S_N upper", fixed, BellQuantity::SN(), Sense::Maximize, piece({{0, r(2)}})},
      {"LR+PCCD S_N lower", fixed, BellQuantity::SN(), Sense::Minimize, piece({{0, r(-2)}})},
      {"LR+PCCD Delta_N upper", removable, BellQuantity::DeltaN(), Sense::Maximize, piece({})},
      {"LR+PCCD Delta_N lower", removable, BellQuantity::DeltaN(), Sense::Minimize, piece({{0, r(-1)}})},
      {"LR+PCCD delta_N upper", removable, BellQuantity::deltaFN(), Sense::Maximize, piece({{0, r(1, 4)}})},
  };
}

/// |S| <= 2 + 16 pC, capped at 4 from pC = 1/8.
inline std::vector<ReferenceForm> crosstalk_forms() {
  using namespace forms;
  const ScenarioId xt{Family::Crosstalk, Level::Full};
  PiecewiseBound up = two_pieces({{0, r(2)}, {1, r(16)}}, r(1, 8), {{0, r(4)}}, "pC");
  return {
      {"crosstalk S upper", xt, BellQuantity::S(), Sense::Maximize, up},
      {"crosstalk S lower", xt, BellQuantity::S(), Sense::Minimize, negated(up)},
  };
}

/// Ideal-detection bounds under apparent locality alone and under local realism.
inline std::vector<IdealReference> ideal_forms() {
  using forms::r;
  const ScenarioId al{Family::IdealApparentLocality, Level::Full}, lr{Family::IdealLr, Level::Full};
  return {
      {"apparent locality S upper", al, BellQuantity::S(), Sense::Maximize, r(4)},
      {"apparent locality S lower", al, BellQuantity::S(), Sense::Minimize, r(-4)},
      {"apparent locality Delta' upper", al, BellQuantity::DeltaPrime(), Sense::Maximize, r(1, 2)},
      {"apparent locality Delta' lower", al, BellQuantity::DeltaPrime(), Sense::Minimize, r(-3, 2)},
      {"apparent locality Delta upper", al, BellQuantity::Delta(), Sense::Maximize, r(1, 2)},
      {"apparent locality Delta lower", al, BellQuantity::Delta(), Sense::Minimize, r(-3, 2)},
      {"apparent locality delta upper", al, BellQuantity::deltaF(), Sense::Maximize, r(1, 2)},
      {"local realism S upper", lr, BellQuantity::S(), Sense::Maximize, r(2)},
      {"local realism S lower", lr, BellQuantity::S(), Sense::Minimize, r(-2)},
      {"local realism Delta' upper", lr, BellQuantity::DeltaPrime(), Sense::Maximize, r(0)},
      {"local realism Delta' lower", lr, BellQuantity::DeltaPrime(), Sense::Minimize, r(-1)},
      {"local realism Delta upper", lr, BellQuantity::Delta(), Sense::Maximize, r(0)},
      {"local realism Delta lower", lr, BellQuantity::Delta(), Sense::Minimize, r(-1)},
      {"local realism delta upper", lr, BellQuantity::deltaF(), Sense::Maximize, r(1, 4)},
  };
}

/// Bivariate bounds for unequal arm efficiencies. The printed Delta' lower form
/// omits the single-arm terms -etaA - etaB; they are restored here so that the
/// form reduces to the symmetric one on the diagonal.
inline std::vector<BivariateReference> asym_forms() {
  using forms::r;
  const ScenarioId fixed{Family::AsymFixed, Level::Full}, removable{Family::AsymRemovable, Level::Full};
  // x = etaA*etaB; (i, j) is etaA^i etaB^j.
  Polynomial2 s_up{{{2, 2}, r(-2)}, {{1, 1}, r(4)}};
  Polynomial2 s_lo{{{2, 2}, r(2)}, {{1, 1}, r(-4)}};
  Polynomial2 dp_lo{{{2, 2}, r(-1)}, {{2, 1}, r(1)}, {{1, 2}, r(1)}, {{1, 0}, r(-1)}, {{0, 1}, r(-1)}};
  Polynomial2 d_up{{{3, 3}, r(1)},  {{3, 2}, r(-1)}, {{2, 3}, r(-1)}, {{3, 1}, r(1)}, {{1, 3}, r(1)},
                   {{2, 1}, r(-2)}, {{1, 2}, r(-2)}, {{1, 1}, r(3)}};
  Polynomial2 d_lo{{{3, 3}, r(-1)}, {{2, 2}, r(3)}, {{1, 1}, r(-3)}};
  Polynomial2 df_up{{{3, 3}, r(1, 2)},  {{3, 2}, r(-1, 4)}, {{2, 3}, r(-1, 4)}, {{2, 2}, r(-3, 4)},
                    {{3, 1}, r(1, 4)},  {{1, 3}, r(1, 4)},  {{2, 1}, r(-1, 2)}, {{1, 2}, r(-1, 2)},
                    {{1, 1}, r(3, 2)}};
  return {
      {"asymmetric S upper", fixed, BellQuantity::S(), Sense::Maximize, s_up},
      {"asymmetric S lower", fixed, BellQuantity::S(), Sense::Minimize, s_lo},
      {"asymmetric Delta' upper", fixed, BellQuantity::DeltaPrime(), Sense::Maximize, {}},
      {"asymmetric Delta' lower", fixed, BellQuantity::DeltaPrime(), Sense::Minimize, dp_lo},
      {"asymmetric Delta upper", removable, BellQuantity::Delta(), Sense::Maximize, d_up},
      {"asymmetric Delta lower", removable, BellQuantity::Delta(), Sense::Minimize, d_lo},
      {"asymmetric delta upper", removable, BellQuantity::deltaF(), Sense::Maximize, df_up},
      {"asymmetric S_N upper", fixed, BellQuantity::SN(), Sense::Maximize, s_up.normalized()},
      {"asymmetric S_N lower", fixed, BellQuantity::SN(), Sense::Minimize, s_lo.normalized()},
      {"asymmetric Delta_N upper", removable, BellQuantity::DeltaN(), Sense::Maximize, d_up.normalized()},
      {"asymmetric Delta_N lower", removable, BellQuantity::DeltaN(), Sense::Minimize, d_lo.normalized()},
      {"asymmetric delta_N upper", removable, BellQuantity::deltaFN(), Sense::Maximize, df_up.normalized()},
  };
}

}  // namespace bellbound
