#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellbound/analysis.hpp"
#include "bellbound/io.hpp"
#include "bellbound/lr_forms.hpp"
#include "bellbound/qtforms.hpp"
#include "bellbound/sweep.hpp"

namespace bellbound {

struct ManifestLine {
  std::string anchor, expected, computed;
  bool pass = false;
};

struct Reproduction {
  std::vector<ManifestLine> lines;
  /// File name -> contents, written in name order.
  std::map<std::string, std::string> files;

  [[nodiscard]] bool all_pass() const {
    return std::ranges::all_of(lines, [](const ManifestLine& l) { return l.pass; });
  }

  [[nodiscard]] std::string manifest() const {
    std::string out = "# anchor | expected | computed | verdict\n";
    for (const auto& l : lines)
      out += l.anchor + " | " + l.expected + " | " + l.computed + " | " + (l.pass ? "PASS" : "FAIL") + "\n";
    return out;
  }

  void write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& text) {
      std::ofstream f(dir / name, std::ios::binary);
      if (!f) throw ComputationError("cannot write " + (dir / name).string());
      f << text;
    };
    for (const auto& [name, text] : files) put(name, text);
    put("manifest.txt", manifest());
  }
};

namespace detail {

/// Raw LP sweeps shared between manifest checks and figure files.
class SweepCache {
 public:
  explicit SweepCache(unsigned workers) : workers_(workers) {}

  const SweepResult& get(const ScenarioId& id, BellQuantity raw, Sense sense, const std::vector<Params>& grid,
                         const std::string& grid_key) {
    std::string key = id.name() + "|" + to_string(raw) + "|" + to_string(sense) + "|" + grid_key;
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, sweep(id, raw, sense, grid, workers_)).first;
    return it->second;
  }

  const SweepResult& eta(const ScenarioId& id, BellQuantity raw, Sense sense) {
    static const std::vector<Params> grid = default_grid();
    return get(id, raw, sense, grid, "eta64");
  }

  [[nodiscard]] unsigned workers() const { return workers_; }

 private:
  unsigned workers_;
  std::map<std::string, SweepResult> cache_;
};

inline PiecewiseBound derive_cached(SweepCache& cache, const ScenarioId& id, BellQuantity q, Sense sense,
                                    const std::vector<Params>& grid, const std::string& grid_key) {
  const BellQuantity raw = q.raw();
  const SweepResult& r = cache.get(id, raw, sense, grid, grid_key);
  if (!r.errors.empty()) throw ComputationError(r.errors.front().message);
  const bool xt = r.variable == "pC";
  const bool al = grid.front().apparentLocality;
  BoundEvaluator eval = [&](const Rational& x) {
    return bound_at(id, raw, sense, xt ? Params::crosstalk(x, al) : Params::symmetric(x));
  };
  PiecewiseBound pb = reconstruct(r, 6, eval);
  return q.normalized ? pb.normalized(2) : pb;
}

inline std::string cell(const std::optional<Rational>& v) { return v ? v->decimal(12) : std::string(); }

/// Value of a cached raw sweep at sample k, normalized on request (blank where undefined).
inline std::optional<Rational> figure_value(const SweepResult& r, std::size_t k, bool normalized) {
  const Rational& v = r.samples.at(k).value;
  if (!normalized) return v;
  const Rational& eta = *r.samples[k].params.eta;
  if (eta.is_zero()) return std::nullopt;
  return v / (eta * eta);
}

struct Curve {
  std::string column;
  std::function<std::optional<Rational>(std::size_t)> lr;
};

}  // namespace detail

/// Recomputes every published display from LP optima and writes the figure datasets.
inline Reproduction reproduce_all(unsigned workers = 1) {
  Reproduction rep;
  detail::SweepCache cache(workers);
  auto line = [&](std::string anchor, std::string expected, std::string computed, bool pass) {
    rep.lines.push_back({std::move(anchor), std::move(expected), std::move(computed), pass});
  };
  auto guarded = [&](const std::string& anchor, const std::string& expected, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      line(anchor, expected, std::string("error: ") + e.what(), false);
    }
  };

  // Ideal detection.
  for (const auto& f : ideal_forms())
    guarded(f.anchor, f.value.to_string(), [&] {
      Rational v = bound_at(f.scenario, f.quantity, f.sense, {});
      line(f.anchor, f.value.to_string(), v.to_string(), v == f.value);
    });

  // Univariate closed forms.
  std::vector<ReferenceForm> uni = lr_fsd_forms();
  for (auto& f : lr_pccd_forms()) uni.push_back(f);
  for (const auto& f : uni)
    guarded(f.anchor, f.bound.to_string(), [&] {
      PiecewiseBound pb = detail::derive_cached(cache, f.scenario, f.quantity, f.sense, default_grid(), "eta64");
      line(f.anchor, f.bound.to_string(), pb.to_string(), verify_closed_form(pb, f.bound));
    });

  // Unequal efficiencies.
  std::vector<Rational> raw_grid, norm_grid;
  for (int k = 0; k <= 8; ++k) raw_grid.emplace_back(k, 8);
  for (int k = 1; k <= 9; ++k) norm_grid.emplace_back(k, 9);
  const auto syms = lr_fsd_forms();
  for (const auto& f : asym_forms()) {
    guarded(f.anchor, f.form.to_string(), [&] {
      const auto& g = f.quantity.normalized ? norm_grid : raw_grid;
      BivariateBoundGrid b = sweep2(f.scenario, f.quantity, f.sense, g, g, f.form, workers);
      line(f.anchor, f.form.to_string(),
           std::to_string(b.samples.size() - b.mismatches.size()) + "/" + std::to_string(g.size() * g.size()) +
               " grid points match",
           b.closed_form_holds() && b.samples.size() == g.size() * g.size());
    });
    // Diagonal specialization against the symmetric display of the same quantity and side.
    std::string sym_anchor = "LR+FSD " + f.anchor.substr(std::string("asymmetric ").size());
    for (const auto& s : syms) {
      if (s.anchor != sym_anchor) continue;
      Polynomial diag = f.form.diagonal();
      const Polynomial& expect = s.bound.segments.front().poly;
      line(f.anchor + " on etaA = etaB", expect.to_string(), diag.to_string(), diag == expect);
    }
  }
  {
    auto p = asym_critical_product();
    guarded("asymmetric critical product", "2 - sqrt(2) = 0.5858", [&] {
      Enclosure e = asym_critical_product_lp();
      bool inside = SqrtTwoValue(e.lo) <= p.exact && p.exact <= SqrtTwoValue(e.hi);
      line("asymmetric critical product", "2 - sqrt(2) = 0.5858",
           p.exact.to_string() + " = " + p.exact.decimal(4) + ", LP enclosure [" + e.lo.decimal(10) + ", " +
               e.hi.decimal(10) + "]",
           inside && e.width() <= critical_width() && p.exact == SqrtTwoValue(2, -1));
    });
    auto eb = asym_critical_eta_b(1);
    line("asymmetric critical etaB at etaA = 1", "0.5858", eb.exact.decimal(4), eb.exact.decimal(4) == "0.5858");
  }

  // Crosstalk.
  for (bool al : {false, true}) {
    for (const Rational& p : {Rational(0), Rational(1, 32), Rational(1, 16), Rational(1, 8), Rational(1, 4)}) {
      std::string anchor = std::string("crosstalk S extrema") + (al ? " with apparent locality" : "") + " at pC = " + p.to_string();
      Rational expect = crosstalk_s_bound(p);
      guarded(anchor, expect.to_string(), [&] {
        Rational hi = bound_at({Family::Crosstalk}, BellQuantity::S(), Sense::Maximize, Params::crosstalk(p, al));
        Rational lo = bound_at({Family::Crosstalk}, BellQuantity::S(), Sense::Minimize, Params::crosstalk(p, al));
        line(anchor, expect.to_string() + " / " + (-expect).to_string(), hi.to_string() + " / " + lo.to_string(),
             hi == expect && lo == -expect);
      });
    }
  }
  {
    std::vector<Params> grid;
    for (int k = 0; k <= 64; ++k) grid.push_back(Params::crosstalk(Rational(k, 64)));
    for (const auto& f : crosstalk_forms())
      guarded(f.anchor, f.bound.to_string(), [&] {
        PiecewiseBound pb = detail::derive_cached(cache, f.scenario, f.quantity, f.sense, grid, "pc64");
        line(f.anchor, f.bound.to_string(), pb.to_string(), verify_closed_form(pb, f.bound));
      });
    guarded("crosstalk critical pC", "(sqrt(2)-1)/8 = 0.0518", [&] {
      Enclosure e = crosstalk_critical_pc();
      SqrtTwoValue exact(Rational(-1, 8), Rational(1, 8));
      bool inside = SqrtTwoValue(e.lo) <= exact && exact <= SqrtTwoValue(e.hi);
      line("crosstalk critical pC", "(sqrt(2)-1)/8 = 0.0518",
           "[" + e.lo.decimal(10) + ", " + e.hi.decimal(10) + "]", inside && e.width() <= critical_width());
    });
  }

  // Critical efficiencies.
  std::vector<CriticalTableEntry> table;
  for (const auto& row : critical_rows()) {
    std::string anchor = "critical efficiency " + row.label;
    guarded(anchor, row.printed, [&] {
      Sense sense = row.side == Side::Upper ? Sense::Maximize : Sense::Minimize;
      PiecewiseBound lr = detail::derive_cached(cache, row.scenario, row.quantity, sense, default_grid(), "eta64");
      QtFormula qt = qt_formula(row.quantity, row.side, row.qtKind);
      CriticalThreshold t = critical_efficiency(row.quantity, row.side, lr, qt);
      table.push_back({row, lr, t});
      Rational printed = Rational::parse_decimal(row.printed), tol(5, 100000);
      bool close = (t.enclosure.lo - printed).abs() <= tol && (t.enclosure.hi - printed).abs() <= tol;
      bool certified = t.enclosure.width() <= critical_width() && t.enclosure.signLo * t.enclosure.signHi < 0;
      line(anchor, row.printed,
           t.rounded + " in [" + t.enclosure.lo.decimal(10) + ", " + t.enclosure.hi.decimal(10) + "]",
           close && certified);
    });
  }
  rep.files["table-iv.txt"] = io::format_table_iv(table);
  rep.files["table-iv.csv"] = io::format_table_iv_csv(table);

  // Crosstalk hypothesis test.
  {
    auto d = [](const char* s) { return Rational::parse_decimal(s); };
    CrosstalkReport r = crosstalk_ztest(d("2.0732"), d("0.0003"), d("0.0045"), d("0.0014"), d("0.0088"));
    line("crosstalk S upper bound", "2.0720 +- 0.0224",
         io::detail::fixed(r.ubMean.to_double(), 4) + " +- " + io::detail::fixed(r.ubSigma.to_double(), 4),
         r.ubMean == d("2.072") && r.ubSigma == d("0.0224"));
    line("crosstalk z score", "0.0536", io::format_z(r), std::abs(r.z - 0.0536) <= 0.0005);
    line("crosstalk alpha", "0.9573", io::detail::fixed(r.alpha, 4), std::abs(r.alpha - 0.9573) <= 0.001);
    line("crosstalk pC floor", "0.22%", (*r.pCFloor * Rational(100)).decimal() + "%", *r.pCFloor == d("0.0022"));
    rep.files["table-v.txt"] = io::format_table_v(r);
    rep.files["table-v.csv"] = io::format_table_v_csv(r);
  }

  // Figure datasets over eta = k/64.
  const ScenarioId fsF{Family::FsFixed}, fsR{Family::FsRemovable}, pcF{Family::PccdFixed}, pcR{Family::PccdRemovable};
  const ScenarioId gm{Family::FsFixed, Level::FactualIndependence};
  auto lr_curve = [&](const std::string& col, const ScenarioId& id, BellQuantity q, Sense sense) {
    return detail::Curve{col, [&cache, id, q, sense](std::size_t k) {
                           return detail::figure_value(cache.eta(id, q.raw(), sense), k, q.normalized);
                         }};
  };
  auto figure = [&](const std::string& name, BellQuantity q, std::vector<detail::Curve> curves) {
    std::string out = "eta";
    for (const auto& c : curves) out += "," + c.column;
    std::vector<std::pair<std::string, QtFormula>> qt;
    for (Side side : {Side::Upper, Side::Lower}) {
      try {
        qt.emplace_back(std::string("QT_") + (side == Side::Upper ? "upper" : "lower"),
                        qt_formula(q, side, q.normalized ? QtKind::Normalized : QtKind::FsSymmetric));
      } catch (const DomainError&) {
      }
    }
    for (const auto& [col, f] : qt) out += "," + col;
    out += "\n";
    for (std::size_t k = 0; k <= 64; ++k) {
      Rational eta(static_cast<long>(k), 64);
      out += eta.to_string();
      for (const auto& c : curves) out += "," + detail::cell(c.lr(k));
      for (const auto& [col, f] : qt) out += "," + f.evaluate(eta).decimal(12);
      out += "\n";
    }
    rep.files[name + ".csv"] = out;
  };
  guarded("figure datasets", "written", [&] {
    using Q = BellQuantity;
    const Sense mx = Sense::Maximize, mn = Sense::Minimize;
    figure("fig-S", Q::S(),
           {lr_curve("LRFSD_upper", fsF, Q::S(), mx), lr_curve("LRFSD_lower", fsF, Q::S(), mn),
            lr_curve("LRPCCD_upper", pcF, Q::S(), mx), lr_curve("LRPCCD_lower", pcF, Q::S(), mn)});
    figure("fig-SN", Q::SN(),
           {lr_curve("LRFSD_upper", fsF, Q::SN(), mx), lr_curve("LRFSD_lower", fsF, Q::SN(), mn),
            lr_curve("GM_upper", gm, Q::SN(), mx), lr_curve("GM_lower", gm, Q::SN(), mn),
            lr_curve("LRPCCD_upper", pcF, Q::SN(), mx), lr_curve("LRPCCD_lower", pcF, Q::SN(), mn)});
    figure("fig-DeltaPrime", Q::DeltaPrime(),
           {lr_curve("LRFSD_upper", fsF, Q::DeltaPrime(), mx), lr_curve("LRFSD_lower", fsF, Q::DeltaPrime(), mn),
            lr_curve("LRPCCD_upper", pcF, Q::DeltaPrime(), mx), lr_curve("LRPCCD_lower", pcF, Q::DeltaPrime(), mn)});
    figure("fig-Delta", Q::Delta(),
           {lr_curve("LRFSD_upper", fsR, Q::Delta(), mx), lr_curve("LRFSD_lower", fsR, Q::Delta(), mn),
            lr_curve("LRPCCD_upper", pcR, Q::Delta(), mx), lr_curve("LRPCCD_lower", pcR, Q::Delta(), mn)});
    figure("fig-DeltaN", Q::DeltaN(),
           {lr_curve("LRFSD_upper", fsR, Q::DeltaN(), mx), lr_curve("LRFSD_lower", fsR, Q::DeltaN(), mn),
            lr_curve("LRPCCD_upper", pcR, Q::DeltaN(), mx), lr_curve("LRPCCD_lower", pcR, Q::DeltaN(), mn)});
    figure("fig-delta", Q::deltaF(), {lr_curve("LRFSD_upper", fsR, Q::deltaF(), mx), lr_curve("LRPCCD_upper", pcR, Q::deltaF(), mx)});
    figure("fig-deltaN", Q::deltaFN(),
           {lr_curve("LRFSD_upper", fsR, Q::deltaFN(), mx), lr_curve("LRPCCD_upper", pcR, Q::deltaFN(), mx)});

    // Surfaces over etaA, etaB = k/16, k = 1..16 (normalized values need both efficiencies positive).
    std::vector<Rational> g;
    for (int k = 1; k <= 16; ++k) g.emplace_back(k, 16);
    const ScenarioId asF{Family::AsymFixed}, asR{Family::AsymRemovable};
    auto surface = [&](const std::string& name, const ScenarioId& id, BellQuantity q, Sense sense, Side side) {
      BivariateBoundGrid b = sweep2(id, q, sense, g, g, std::nullopt, workers);
      if (!b.errors.empty()) throw ComputationError(b.errors.front().message);
      SqrtTwoValue qt = qt_formula(q, side, QtKind::Normalized).evaluate();
      std::string out = "etaA,etaB,LRFSD,QT\n";
      for (const auto& s : b.samples)
        out += s.etaA.to_string() + "," + s.etaB.to_string() + "," + s.value.decimal(12) + "," + qt.decimal(12) + "\n";
      rep.files[name + ".csv"] = out;
    };
    surface("fig-SN-UB", asF, Q::SN(), mx, Side::Upper);
    surface("fig-SN-LB", asF, Q::SN(), mn, Side::Lower);
    surface("fig-DeltaN-UB", asR, Q::DeltaN(), mx, Side::Upper);
    surface("fig-DeltaN-LB", asR, Q::DeltaN(), mn, Side::Lower);
    surface("fig-deltaN-UB", asR, Q::deltaFN(), mx, Side::Upper);
    std::size_t figs = 0;
    for (const auto& [name, text] : rep.files) figs += name.starts_with("fig-");
    line("figure datasets", "12 files", std::to_string(figs) + " files", figs == 12);
  });
  return rep;
}

}  // namespace bellbound
