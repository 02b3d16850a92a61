#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bellbound/bellq.hpp"
#include "bellbound/errors.hpp"
#include "bellbound/polynomial.hpp"
#include "bellbound/rational.hpp"
#include "bellbound/scenarios.hpp"
#include "bellbound/simplex.hpp"

namespace bellbound {

/// The scenario's constraint set admits no distribution at these parameters.
class InfeasibleScenario : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Piecewise reconstruction could not explain the samples within the degree cap.
class ReconstructionError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

inline std::string to_string(Sense s) { return s == Sense::Maximize ? "max" : "min"; }

inline Sense parse_sense(std::string_view s) {
  if (s == "max" || s == "upper") return Sense::Maximize;
  if (s == "min" || s == "lower") return Sense::Minimize;
  throw StructuralError("unknown sense '" + std::string(s) + "'");
}

namespace detail {

inline Rational solve_certified(const ScenarioId& id, BellQuantity raw, Sense sense, const Params& params) {
  ScenarioModel model = build(id, params);
  LpModel lp = model.to_lp(objective(raw, model), sense);
  LpSolution sol = solve(lp);
  if (sol.status == LpStatus::Infeasible)
    throw InfeasibleScenario(id.name() + " is infeasible at the given parameters");
  if (sol.status != LpStatus::Optimal) throw ComputationError(id.name() + ": LP " + to_string(sol.status));
  if (!certify(lp, sol)) throw ComputationError(id.name() + ": optimum failed certification");
  return *sol.value;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Exceptions must be handled inside fn.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
}

}  // namespace detail

/// Certified optimum of `q` over scenario `id`. Normalized quantities divide the raw
/// optimum; delta combines the two Delta extrema and only has an upper side.
inline Rational bound_at(const ScenarioId& id, BellQuantity q, Sense sense, const Params& params) {
  id.validate();
  validate_params(id.family, params);
  if (!compatible(q, id.family))
    throw DomainError(to_string(q) + " is not defined on the " + to_string(id.family) + " scenario");
  Rational raw;
  if (q.kind == QuantityKind::DeltaF) {
    if (sense != Sense::Maximize) throw DomainError("delta has an upper bound only");
    raw = delta_from_extrema(detail::solve_certified(id, BellQuantity::Delta(), Sense::Maximize, params),
                             detail::solve_certified(id, BellQuantity::Delta(), Sense::Minimize, params));
  } else {
    raw = detail::solve_certified(id, q.raw(), sense, params);
  }
  return q.normalized ? normalize(raw, q, params) : raw;
}

/// Sweep variable of a one-parameter family.
inline std::string sweep_variable(Family f) {
  if (f == Family::Crosstalk) return "pC";
  if (is_symmetric_efficiency(f)) return "eta";
  throw DomainError(to_string(f) + " has no single sweep parameter");
}

inline const Rational& sweep_coordinate(const Params& p) {
  if (p.eta) return *p.eta;
  if (p.pC) return *p.pC;
  throw DomainError("parameter set has no sweep coordinate");
}

struct SweepSample {
  Params params;
  Rational value;
  friend bool operator==(const SweepSample&, const SweepSample&) = default;
};

struct SweepError {
  Params params;
  std::string message;
};

struct SweepResult {
  ScenarioId scenario;
  BellQuantity quantity;
  Sense sense = Sense::Maximize;
  std::string variable = "eta";
  std::vector<SweepSample> samples;
  std::vector<SweepError> errors;
};

/// eta = k/n, k = 0..n.
inline std::vector<Params> default_grid(unsigned n = 64) {
  std::vector<Params> g;
  for (unsigned k = 0; k <= n; ++k) g.push_back(Params::symmetric(Rational(k, n)));
  return g;
}

inline std::vector<Params> pc_grid(const std::vector<Rational>& values, bool apparent_locality = false) {
  std::vector<Params> g;
  for (const auto& v : values) g.push_back(Params::crosstalk(v, apparent_locality));
  return g;
}

/// One certified optimum per grid point, sorted by parameter. Failing points are
/// collected in `errors` and do not abort the sweep.
inline SweepResult sweep(const ScenarioId& id, BellQuantity q, Sense sense, const std::vector<Params>& grid,
                         unsigned workers = 1) {
  SweepResult r{id, q, sense, sweep_variable(id.family), {}, {}};
  std::vector<std::optional<Rational>> values(grid.size());
  std::vector<std::string> messages(grid.size());
  detail::parallel_for(grid.size(), workers, [&](std::size_t i) {
    try {
      values[i] = bound_at(id, q, sense, grid[i]);
    } catch (const std::exception& e) {
      messages[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i])
      r.samples.push_back({grid[i], *values[i]});
    else
      r.errors.push_back({grid[i], messages[i]});
  }
  std::ranges::stable_sort(r.samples, {}, [](const SweepSample& s) { return sweep_coordinate(s.params); });
  return r;
}

/// Exact evaluator used to localize breakpoints between samples.
using BoundEvaluator = std::function<Rational(const Rational&)>;

namespace detail {

inline std::string sample_dump(const std::vector<Rational>& xs, const std::vector<Rational>& ys, std::size_t from,
                               std::size_t to) {
  std::string s;
  for (std::size_t i = from; i < to && i < xs.size(); ++i) s += " (" + xs[i].to_string() + ", " + ys[i].to_string() + ")";
  return s;
}

/// Smallest-denominator rational in [lo, hi] with denominator <= 64 satisfying `ok`.
inline std::optional<Rational> snap(const Rational& lo, const Rational& hi, const std::function<bool(const Rational&)>& ok) {
  for (long d = 1; d <= 64; ++d) {
    Rational scaled_lo = lo * Rational(d), scaled_hi = hi * Rational(d);
    mpz_class n0 = scaled_lo.num() / scaled_lo.den();  // truncation toward zero; lo >= 0 here
    if (Rational(n0, 1) < scaled_lo) n0 += 1;
    for (mpz_class n = n0; Rational(n, 1) <= scaled_hi; ++n) {
      Rational r(n, mpz_class(d));
      if (ok(r)) return r;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Splits sorted samples into maximal runs explained by one polynomial of degree
/// <= maxDegree, then pins each breakpoint. With an evaluator the gap between runs
/// is bisected down to width 2^-20; the breakpoint snaps to a rational of
/// denominator <= 64 where both neighbours agree (and the evaluator confirms),
/// otherwise the bracket is kept.
inline PiecewiseBound reconstruct(const SweepResult& result, unsigned maxDegree = 6,
                                  const std::optional<BoundEvaluator>& evaluator = std::nullopt) {
  std::vector<Rational> xs, ys;
  for (const auto& s : result.samples) {
    xs.push_back(sweep_coordinate(s.params));
    ys.push_back(s.value);
  }
  const std::size_t n = xs.size(), w = maxDegree + 1;
  if (n < w + 1)
    throw ReconstructionError("reconstruct: " + std::to_string(n) + " samples cannot validate a degree-" +
                              std::to_string(maxDegree) + " fit");

  struct Run {
    std::size_t first, last;
    Polynomial poly;
  };
  std::vector<Run> runs;
  for (std::size_t s = 0; s < n;) {
    if (n - s < w + 1)
      throw ReconstructionError("reconstruct: trailing segment from " + result.variable + " = " + xs[s].to_string() +
                                " too short to validate; samples:" + detail::sample_dump(xs, ys, s, n));
    Polynomial p = Polynomial::interpolate(std::span(xs).subspan(s, w), std::span(ys).subspan(s, w));
    std::size_t e = s + w;
    while (e < n && p.evaluate(xs[e]) == ys[e]) ++e;
    if (e == s + w)
      throw ReconstructionError("reconstruct: no polynomial of degree <= " + std::to_string(maxDegree) +
                                " explains the samples near " + result.variable + " = " + xs[s].to_string() +
                                "; samples:" + detail::sample_dump(xs, ys, s, s + w + 1));
    runs.push_back({s, e - 1, std::move(p)});
    s = e;
  }

  PiecewiseBound pb;
  pb.variable = result.variable;
  for (const auto& r : runs) pb.segments.push_back({xs[r.first], xs[r.last], r.poly});

  for (std::size_t k = 0; k + 1 < pb.segments.size(); ++k) {
    const Polynomial& p = pb.segments[k].poly;
    const Polynomial& q = pb.segments[k + 1].poly;
    Rational lo = pb.segments[k].hi, hi = pb.segments[k + 1].lo;
    if (evaluator) {
      const Rational limit(1, 1 << 20);
      while (hi - lo > limit) {
        Rational mid = (lo + hi) / Rational(2);
        Rational v = (*evaluator)(mid);
        if (v == p.evaluate(mid))
          lo = mid;
        else if (v == q.evaluate(mid))
          hi = mid;
        else
          throw ReconstructionError("reconstruct: value " + v.to_string() + " at " + result.variable + " = " +
                                    mid.to_string() + " matches neither neighbouring piece");
      }
    }
    auto joins = [&](const Rational& r) {
      if (p.evaluate(r) != q.evaluate(r)) return false;
      return !evaluator || (*evaluator)(r) == p.evaluate(r);
    };
    if (auto r = detail::snap(lo, hi, joins)) {
      pb.segments[k].hi = *r;
      pb.segments[k + 1].lo = *r;
    } else {
      pb.segments[k].hi = lo;
      pb.segments[k + 1].lo = hi;
      pb.brackets.push_back({lo, hi});
    }
  }
  return pb;
}

/// Sweeps the raw quantity, reconstructs with LP-backed breakpoint bisection and
/// normalizes afterwards (normalized values are undefined at eta = 0).
inline PiecewiseBound derive_bound(const ScenarioId& id, BellQuantity q, Sense sense,
                                   const std::vector<Params>& grid = default_grid(), unsigned maxDegree = 6,
                                   unsigned workers = 1) {
  BellQuantity raw = q.raw();
  SweepResult r = sweep(id, raw, sense, grid, workers);
  if (!r.errors.empty())
    throw ComputationError("sweep failed at " + r.variable + " = " + sweep_coordinate(r.errors.front().params).to_string() +
                           ": " + r.errors.front().message);
  const std::string var = r.variable;
  BoundEvaluator eval = [&](const Rational& x) {
    Params p = var == "pC" ? Params::crosstalk(x, grid.front().apparentLocality) : Params::symmetric(x);
    return bound_at(id, raw, sense, p);
  };
  PiecewiseBound pb = reconstruct(r, maxDegree, eval);
  if (!q.normalized) return pb;
  if (var != "eta") throw DomainError("normalization needs an efficiency variable");
  return pb.normalized(2);
}

struct BivariateSample {
  Rational etaA, etaB, value;
};

struct BivariateBoundGrid {
  ScenarioId scenario;
  BellQuantity quantity;
  Sense sense = Sense::Maximize;
  std::vector<BivariateSample> samples;
  std::vector<SweepError> errors;
  std::optional<Polynomial2> closedForm;
  /// Samples where the closed form disagrees (or cannot be evaluated).
  std::vector<BivariateSample> mismatches;

  [[nodiscard]] bool closed_form_holds() const { return closedForm && errors.empty() && mismatches.empty(); }
};

/// Grid over etaA x etaB for an asymmetric family, checked against `closedForm` when given.
inline BivariateBoundGrid sweep2(const ScenarioId& id, BellQuantity q, Sense sense, const std::vector<Rational>& gridA,
                                 const std::vector<Rational>& gridB, std::optional<Polynomial2> closedForm = std::nullopt,
                                 unsigned workers = 1) {
  if (!is_asymmetric(id.family)) throw DomainError("sweep2 needs an asymmetric family");
  BivariateBoundGrid g{id, q, sense, {}, {}, std::move(closedForm), {}};
  std::vector<std::pair<Rational, Rational>> points;
  for (const auto& a : gridA)
    for (const auto& b : gridB) points.emplace_back(a, b);
  std::vector<std::optional<Rational>> values(points.size());
  std::vector<std::string> messages(points.size());
  detail::parallel_for(points.size(), workers, [&](std::size_t i) {
    try {
      values[i] = bound_at(id, q, sense, Params::asymmetric(points[i].first, points[i].second));
    } catch (const std::exception& e) {
      messages[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!values[i]) {
      g.errors.push_back({Params::asymmetric(points[i].first, points[i].second), messages[i]});
      continue;
    }
    BivariateSample s{points[i].first, points[i].second, *values[i]};
    if (g.closedForm) {
      bool ok = false;
      try {
        ok = g.closedForm->evaluate(s.etaA, s.etaB) == s.value;
      } catch (const DomainError&) {
      }
      if (!ok) g.mismatches.push_back(s);
    }
    g.samples.push_back(std::move(s));
  }
  return g;
}

}  // namespace bellbound
