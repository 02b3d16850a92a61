#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bellbound/bellq.hpp"
#include "bellbound/errors.hpp"
#include "bellbound/lr_forms.hpp"
#include "bellbound/polynomial.hpp"
#include "bellbound/qtforms.hpp"
#include "bellbound/rational.hpp"
#include "bellbound/sqrt2.hpp"
#include "bellbound/sweep.hpp"

namespace bellbound {

/// Rational interval [lo, hi] on which a sign change has been verified.
struct Enclosure {
  Rational lo, hi;
  int signLo = 0, signHi = 0;

  [[nodiscard]] Rational width() const { return hi - lo; }
  [[nodiscard]] Rational midpoint() const { return (lo + hi) / Rational(2); }
};

/// Bisects a sign change of `sign_at` on [lo, hi] until the width is at most `width`.
inline Enclosure bisect_sign_change(const std::function<int(const Rational&)>& sign_at, Rational lo, Rational hi,
                                    const Rational& width) {
  int slo = sign_at(lo), shi = sign_at(hi);
  if (slo == 0) return {lo, lo, 0, 0};
  if (shi == 0) return {hi, hi, 0, 0};
  if (slo == shi) throw DomainError("no critical threshold in (0,1)");
  while (hi - lo > width) {
    Rational mid = (lo + hi) / Rational(2);
    int s = sign_at(mid);
    if (s == 0) return {mid, mid, 0, 0};
    (s == slo ? lo : hi) = mid;
  }
  return {lo, hi, slo, shi};
}

inline const Rational& critical_width() {
  static const Rational w(1, 100000000);
  return w;
}

struct CriticalThreshold {
  BellQuantity quantity;
  Side side = Side::Upper;
  Enclosure enclosure;
  /// Midpoint rendered to 10 decimals; `rounded` mirrors the 4-decimal table.
  std::string etaCritical;
  std::string rounded;
};

/// Root of LR - QT on (0, 1], located by exact sign-change bisection. The left end
/// starts at 2^-10 since normalized bounds are undefined at 0.
inline CriticalThreshold critical_efficiency(BellQuantity q, Side side, const PiecewiseBound& lrBound,
                                             const QtFormula& qtForm) {
  auto sign_at = [&](const Rational& eta) {
    SqrtTwoValue lr(lrBound.evaluate(eta));
    return (lr - qtForm.evaluate(eta)).sign();
  };
  Enclosure e = bisect_sign_change(sign_at, Rational(1, 1024), Rational(1), critical_width());
  SqrtTwoValue mid(e.midpoint());
  return {q, side, e, mid.decimal(10), mid.decimal(4)};
}

/// One row of the critical-efficiency table.
struct CriticalRow {
  std::string label;
  ScenarioId scenario;
  BellQuantity quantity;
  Side side;
  QtKind qtKind;
  std::string printed;
};

inline std::vector<CriticalRow> critical_rows() {
  const ScenarioId fixed{Family::FsFixed, Level::Full}, removable{Family::FsRemovable, Level::Full};
  return {
      {"S, S_N", fixed, BellQuantity::SN(), Side::Upper, QtKind::Normalized, "0.7654"},
      {"Delta' upper", fixed, BellQuantity::DeltaPrime(), Side::Upper, QtKind::FsSymmetric, "0.8284"},
      {"Delta' lower", fixed, BellQuantity::DeltaPrime(), Side::Lower, QtKind::FsSymmetric, "0.8452"},
      {"Delta, Delta_N upper", removable, BellQuantity::DeltaN(), Side::Upper, QtKind::Normalized, "0.9047"},
      {"Delta, Delta_N lower", removable, BellQuantity::DeltaN(), Side::Lower, QtKind::Normalized, "0.9077"},
      {"delta, delta_N", removable, BellQuantity::deltaFN(), Side::Upper, QtKind::Normalized, "0.9062"},
  };
}

struct CriticalTableEntry {
  CriticalRow row;
  PiecewiseBound lrBound;
  CriticalThreshold threshold;
};

/// Derives each LR bound by LP sweep + reconstruction and intersects it with the QT form.
inline std::vector<CriticalTableEntry> critical_table(unsigned workers = 1) {
  std::vector<CriticalTableEntry> out;
  for (const auto& row : critical_rows()) {
    Sense sense = row.side == Side::Upper ? Sense::Maximize : Sense::Minimize;
    PiecewiseBound lr = derive_bound(row.scenario, row.quantity, sense, default_grid(), 6, workers);
    QtFormula qt = qt_formula(row.quantity, row.side, row.qtKind);
    out.push_back({row, lr, critical_efficiency(row.quantity, row.side, lr, qt)});
  }
  return out;
}

struct AsymCriticalProduct {
  SqrtTwoValue exact;
  std::string decimal;
};

/// Largest etaA*etaB compatible with the quantum bound: -2x + 4 = 2 sqrt2.
inline AsymCriticalProduct asym_critical_product() {
  SqrtTwoValue x = (SqrtTwoValue(4) - SqrtTwoValue(0, 2)) / SqrtTwoValue(2);
  return {x, x.decimal(10)};
}

/// Critical etaB for a given etaA: (2 - sqrt2)/etaA.
inline AsymCriticalProduct asym_critical_eta_b(const Rational& etaA) {
  if (etaA.is_zero()) throw DomainError("no critical etaB at etaA = 0");
  SqrtTwoValue x = asym_critical_product().exact / SqrtTwoValue(etaA);
  return {x, x.decimal(10)};
}

/// The same threshold located from LP optima: bisect S_N max at (etaA = 1, etaB = x) against 2 sqrt2.
inline Enclosure asym_critical_product_lp(const Rational& width = critical_width()) {
  const ScenarioId id{Family::AsymFixed, Level::Full};
  auto sign_at = [&](const Rational& x) {
    SqrtTwoValue lr(bound_at(id, BellQuantity::SN(), Sense::Maximize, Params::asymmetric(1, x)));
    return (lr - SqrtTwoValue(0, 2)).sign();
  };
  return bisect_sign_change(sign_at, Rational(1, 1024), Rational(1), width);
}

/// Lower bound on crosstalk probability from an observed marginal difference.
inline Rational crosstalk_floor(const Rational& deltaP) {
  if (deltaP.sign() < 0 || deltaP > Rational(1)) throw DomainError("deltaP outside [0,1]");
  return deltaP / Rational(4);
}

inline Rational crosstalk_s_bound(const Rational& pC) {
  if (pC.sign() < 0 || pC > Rational(1)) throw DomainError("pC outside [0,1]");
  return min(Rational(2) + Rational(16) * pC, Rational(4));
}

inline SqrtTwoValue crosstalk_s_bound(const SqrtTwoValue& pC) {
  if (pC.sign() < 0 || pC > SqrtTwoValue(1)) throw DomainError("pC outside [0,1]");
  return std::min(SqrtTwoValue(2) + SqrtTwoValue(16) * pC, SqrtTwoValue(4));
}

/// Critical pC where the LP bound on S reaches 2 sqrt2.
inline Enclosure crosstalk_critical_pc(const Rational& width = critical_width()) {
  const ScenarioId id{Family::Crosstalk, Level::Full};
  auto sign_at = [&](const Rational& p) {
    SqrtTwoValue lr(bound_at(id, BellQuantity::S(), Sense::Maximize, Params::crosstalk(p)));
    return (lr - SqrtTwoValue(0, 2)).sign();
  };
  return bisect_sign_change(sign_at, Rational(0), Rational(1, 4), width);
}

/// Standard normal CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

enum class ZVerdict { Statistical, ExactCompliance, ExactExceedance };

inline std::string to_string(ZVerdict v) {
  switch (v) {
    case ZVerdict::Statistical: return "statistical";
    case ZVerdict::ExactCompliance: return "exact compliance";
    case ZVerdict::ExactExceedance: return "exact exceedance";
  }
  return "?";
}

struct CrosstalkReport {
  Rational sExp, sigExp, pCMean, pCSig;
  std::optional<Rational> pCFloor;
  Rational ubMean, ubSigma;
  double z = 0;
  double alpha = 1;
  ZVerdict verdict = ZVerdict::Statistical;
};

/// Two-sided test of the measured S against 2 + 16 pC with independent errors.
/// Zero combined variance gives an exact verdict instead of a z score.
inline CrosstalkReport crosstalk_ztest(const Rational& sExp, const Rational& sigExp, const Rational& pCMean,
                                       const Rational& pCSig, std::optional<Rational> deltaP = std::nullopt) {
  if (sigExp.sign() < 0 || pCSig.sign() < 0) throw DomainError("standard deviations must be non-negative");
  if (pCMean.sign() < 0) throw DomainError("pC mean must be non-negative");
  if (pCMean > Rational(1, 8))
    throw DomainError("pC mean " + pCMean.decimal() + " exceeds 1/8: the bound 2 + 16 pC is capped at 4 there");
  CrosstalkReport r{sExp, sigExp, pCMean, pCSig, std::nullopt, Rational(2) + Rational(16) * pCMean,
                    Rational(16) * pCSig};
  if (deltaP) r.pCFloor = crosstalk_floor(*deltaP);
  Rational diff = sExp - r.ubMean;
  Rational var = sigExp * sigExp + r.ubSigma * r.ubSigma;
  if (var.is_zero()) {
    r.verdict = diff.sign() > 0 ? ZVerdict::ExactExceedance : ZVerdict::ExactCompliance;
    r.z = diff.is_zero() ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff.to_double());
    r.alpha = diff.is_zero() ? 1.0 : 0.0;
    return r;
  }
  mpf_class num(diff.raw(), 256), v(var.raw(), 256);
  mpf_class z = num / sqrt(v);
  r.z = z.get_d();
  r.alpha = std::erfc(std::fabs(r.z) / std::sqrt(2.0));
  return r;
}

struct LhvSampleReport {
  ScenarioId scenario;
  BellQuantity quantity;
  Params params;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Rational maxObserved, minObserved;
  std::optional<Rational> upperBound, lowerBound;

  [[nodiscard]] bool sound() const {
    return (!upperBound || maxObserved <= *upperBound) && (!lowerBound || minObserved >= *lowerBound);
  }
};

namespace detail {

/// Expected Bell quantity of one deterministic strategy under the detection model.
/// Records are lettered A, A', B, B'; +1 is the + channel. Analyzer-free records
/// A'', B'' answer + whenever detected. Each pair probability involves one record
/// per arm, so fair sampling and per-arm detectability give the same expectation.
inline Rational lhv_expectation(BellQuantity q, bool removable, const std::array<int, 4>& s, const Rational& eta) {
  const Rational eta2 = eta * eta;
  auto pp = [&](int x, int y) { return (x > 0 && y > 0) ? eta2 : Rational(0); };
  auto corr = [&](int x, int y) { return eta2 * Rational(x * y); };
  auto single = [&](int x) { return x > 0 ? eta : Rational(0); };
  const int a = s[0], ap = s[1], b = s[2], bp = s[3];
  Rational v;
  switch (q.kind) {
    case QuantityKind::S: v = corr(a, b) - corr(a, bp) + corr(ap, b) + corr(ap, bp); break;
    case QuantityKind::DeltaPrime:
      v = pp(a, b) - pp(a, bp) + pp(ap, b) + pp(ap, bp) - single(ap) - single(b);
      break;
    case QuantityKind::Delta:
    case QuantityKind::DeltaF:
      v = pp(a, b) - pp(a, bp) + pp(ap, b) + pp(ap, bp);
      v -= removable ? pp(ap, 1) + pp(1, b) : single(ap) + single(b);
      break;
  }
  return v;
}

}  // namespace detail

/// Samples `nStrategies` local deterministic strategies and compares their exact
/// expected values with the LP bounds. delta is compared through the spread of
/// sampled Delta values.
inline LhvSampleReport lhv_oracle(const ScenarioId& id, BellQuantity q, const Params& params, std::size_t nStrategies,
                                  std::uint64_t seed) {
  const Family f = id.family;
  if (!(f == Family::IdealLr || is_fair_sampling(f) || f == Family::PccdFixed || f == Family::PccdRemovable))
    throw DomainError("LHV oracle covers ideal-lr, fs and pccd scenarios");
  if (nStrategies == 0) throw DomainError("LHV oracle needs at least one strategy");
  validate_params(f, params);
  if (!compatible(q, f)) throw DomainError(to_string(q) + " is not defined on the " + to_string(f) + " scenario");
  const Rational eta = params.eta ? *params.eta : Rational(1);
  if (q.normalized && eta.is_zero()) throw DomainError("normalization undefined at eta=0");
  const bool removable = is_removable(f);
  const BellQuantity base = q.kind == QuantityKind::DeltaF ? BellQuantity::Delta() : q.raw();

  constexpr std::size_t kBatch = 1024;
  std::optional<Rational> hi, lo;
  for (std::size_t start = 0, batch = 0; start < nStrategies; start += kBatch, ++batch) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch)};
    std::mt19937_64 rng(seq);
    for (std::size_t i = start; i < std::min(nStrategies, start + kBatch); ++i) {
      std::uint64_t bits = rng();
      std::array<int, 4> s{};
      for (int k = 0; k < 4; ++k) s[k] = ((bits >> k) & 1U) ? 1 : -1;
      Rational v = detail::lhv_expectation(base, removable, s, eta);
      if (!hi || v > *hi) hi = v;
      if (!lo || v < *lo) lo = v;
    }
  }

  LhvSampleReport r{id, q, params, nStrategies, seed, *hi, *lo, std::nullopt, std::nullopt};
  if (q.kind == QuantityKind::DeltaF) {
    r.maxObserved = r.minObserved = (*hi - *lo) / Rational(4);
  }
  if (q.normalized) {
    r.maxObserved /= eta * eta;
    r.minObserved /= eta * eta;
  }
  r.upperBound = bound_at(id, q, Sense::Maximize, params);
  if (q.kind != QuantityKind::DeltaF) r.lowerBound = bound_at(id, q, Sense::Minimize, params);
  return r;
}

}  // namespace bellbound
