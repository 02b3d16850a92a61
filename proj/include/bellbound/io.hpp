#pragma once

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellbound/analysis.hpp"
#include "bellbound/errors.hpp"
#include "bellbound/polynomial.hpp"
#include "bellbound/rational.hpp"
#include "bellbound/scenarios.hpp"
#include "bellbound/sweep.hpp"

namespace bellbound::io {

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace detail

// ---- scenario descriptors ------------------------------------------------

struct Descriptor {
  ScenarioId id;
  Params params;
  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

/// "key = value" lines in canonical order; parameters as exact fractions.
inline std::string format_descriptor(const Descriptor& d) {
  std::ostringstream os;
  os << "family = " << to_string(d.id.family) << "\n";
  os << "level = " << to_string(d.id.level) << "\n";
  if (d.params.eta) os << "eta = " << *d.params.eta << "\n";
  if (d.params.etaA) os << "etaA = " << *d.params.etaA << "\n";
  if (d.params.etaB) os << "etaB = " << *d.params.etaB << "\n";
  if (d.params.pC) os << "pC = " << *d.params.pC << "\n";
  if (d.id.family == Family::Crosstalk) os << "apparent-locality = " << (d.params.apparentLocality ? "true" : "false") << "\n";
  return os.str();
}

inline Descriptor parse_descriptor(std::string_view text) {
  Descriptor d;
  bool have_family = false;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    std::string t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw StructuralError("descriptor line without '=': " + t);
    std::string key = detail::trim(std::string_view(t).substr(0, eq));
    std::string value = detail::trim(std::string_view(t).substr(eq + 1));
    if (key == "family") {
      d.id.family = parse_family(value);
      have_family = true;
    } else if (key == "level") {
      d.id.level = parse_level(value);
    } else if (key == "eta") {
      d.params.eta = Rational::parse(value);
    } else if (key == "etaA") {
      d.params.etaA = Rational::parse(value);
    } else if (key == "etaB") {
      d.params.etaB = Rational::parse(value);
    } else if (key == "pC") {
      d.params.pC = Rational::parse(value);
    } else if (key == "apparent-locality") {
      if (value != "true" && value != "false") throw StructuralError("apparent-locality must be true or false");
      d.params.apparentLocality = value == "true";
    } else {
      throw StructuralError("unknown descriptor key '" + key + "'");
    }
  }
  if (!have_family) throw StructuralError("descriptor lacks a family");
  d.id.validate();
  validate_params(d.id.family, d.params);
  return d;
}

// ---- sweep CSV -------------------------------------------------------------

struct CsvRow {
  std::vector<Rational> params;
  Rational value;
  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

inline std::string csv_value(const Rational& v) {
  return v.num().get_str() + "," + v.den().get_str() + "," + v.decimal(12);
}

inline std::string format_sweep_csv(const SweepResult& r) {
  std::string out = r.variable + ",value_num,value_den,value_decimal\n";
  for (const auto& s : r.samples) out += sweep_coordinate(s.params).to_string() + "," + csv_value(s.value) + "\n";
  return out;
}

inline std::string format_sweep2_csv(const BivariateBoundGrid& g) {
  std::string out = "etaA,etaB,value_num,value_den,value_decimal\n";
  for (const auto& s : g.samples) out += s.etaA.to_string() + "," + s.etaB.to_string() + "," + csv_value(s.value) + "\n";
  return out;
}

/// Reads either CSV layout back; the exact columns must agree with each other.
inline std::vector<CsvRow> parse_sweep_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header)) throw StructuralError("empty CSV");
  auto cols = detail::split(header, ',');
  if (cols.size() < 4 || cols[cols.size() - 3] != "value_num" || cols[cols.size() - 2] != "value_den" ||
      cols.back() != "value_decimal")
    throw StructuralError("unexpected CSV header: " + header);
  const std::size_t nparams = cols.size() - 3;
  std::vector<CsvRow> rows;
  for (std::string line; std::getline(in, line);) {
    if (detail::trim(line).empty()) continue;
    auto f = detail::split(line, ',');
    if (f.size() != cols.size()) throw StructuralError("CSV row has " + std::to_string(f.size()) + " fields: " + line);
    CsvRow row;
    for (std::size_t i = 0; i < nparams; ++i) row.params.push_back(Rational::parse(f[i]));
    row.value = Rational::parse(f[nparams] + "/" + f[nparams + 1]);
    if (row.value.num().get_str() != f[nparams] || row.value.den().get_str() != f[nparams + 1])
      throw StructuralError("CSV value not in lowest terms: " + line);
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- piecewise bounds ------------------------------------------------------

/// variable <name>
/// segment <lo> <hi> <exp>:<coef> ...
/// bracket <lo> <hi>
inline std::string format_piecewise(const PiecewiseBound& pb) {
  std::string out = "variable " + pb.variable + "\n";
  for (const auto& s : pb.segments) {
    out += "segment " + s.lo.to_string() + " " + s.hi.to_string();
    for (auto it = s.poly.terms().rbegin(); it != s.poly.terms().rend(); ++it)
      out += " " + std::to_string(it->first) + ":" + it->second.to_string();
    out += "\n";
  }
  for (const auto& b : pb.brackets) out += "bracket " + b.lo.to_string() + " " + b.hi.to_string() + "\n";
  return out;
}

inline PiecewiseBound parse_piecewise(std::string_view text) {
  PiecewiseBound pb;
  bool have_var = false;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    auto w = detail::words(line);
    if (w.empty() || w[0].front() == '#') continue;
    if (w[0] == "variable" && w.size() == 2) {
      pb.variable = w[1];
      have_var = true;
    } else if (w[0] == "segment" && w.size() >= 3) {
      PiecewiseBound::Segment s{Rational::parse(w[1]), Rational::parse(w[2]), {}};
      for (std::size_t i = 3; i < w.size(); ++i) {
        auto colon = w[i].find(':');
        if (colon == std::string::npos) throw StructuralError("bad term '" + w[i] + "'");
        int exp = 0;
        try {
          exp = std::stoi(w[i].substr(0, colon));
        } catch (const std::exception&) {
          throw StructuralError("bad exponent in '" + w[i] + "'");
        }
        s.poly.add(exp, Rational::parse(w[i].substr(colon + 1)));
      }
      pb.segments.push_back(std::move(s));
    } else if (w[0] == "bracket" && w.size() == 3) {
      pb.brackets.push_back({Rational::parse(w[1]), Rational::parse(w[2])});
    } else {
      throw StructuralError("unrecognized piecewise line: " + line);
    }
  }
  if (!have_var) throw StructuralError("piecewise text lacks a variable line");
  return pb;
}

// ---- reports ---------------------------------------------------------------

inline std::string format_table_iv(const std::vector<CriticalTableEntry>& rows) {
  std::ostringstream os;
  os << "Critical detection efficiencies\n";
  os << std::left << std::setw(22) << "quantity" << std::setw(8) << "eta_c" << std::setw(14) << "eta_c (10dp)"
     << std::setw(40) << "enclosure" << "printed\n";
  for (const auto& e : rows) {
    const auto& t = e.threshold;
    os << std::left << std::setw(22) << e.row.label << std::setw(8) << t.rounded << std::setw(14) << t.etaCritical
       << std::setw(40) << ("[" + t.enclosure.lo.decimal(12) + ", " + t.enclosure.hi.decimal(12) + "]") << e.row.printed
       << "\n";
  }
  return os.str();
}

inline std::string format_table_iv_csv(const std::vector<CriticalTableEntry>& rows) {
  std::string out = "quantity,side,eta_c,eta_c_rounded,enclosure_lo,enclosure_hi,printed\n";
  for (const auto& e : rows) {
    const auto& t = e.threshold;
    out += to_string(e.row.quantity) + "," + to_string(e.row.side) + "," + t.etaCritical + "," + t.rounded + "," +
           t.enclosure.lo.to_string() + "," + t.enclosure.hi.to_string() + "," + e.row.printed + "\n";
  }
  return out;
}

inline std::string format_z(const CrosstalkReport& r) {
  if (std::isinf(r.z)) return r.z > 0 ? "+inf" : "-inf";
  return detail::fixed(r.z, 4);
}

inline std::string format_table_v(const CrosstalkReport& r) {
  std::ostringstream os;
  os << "S_exp     " << r.sExp.decimal() << " +- " << r.sigExp.decimal() << "\n";
  os << "pC mean   " << r.pCMean.decimal() << " +- " << r.pCSig.decimal() << "\n";
  os << "S_UB      " << detail::fixed(r.ubMean.to_double(), 4) << " +- " << detail::fixed(r.ubSigma.to_double(), 4) << "\n";
  os << "z         " << format_z(r) << "\n";
  os << "alpha     " << detail::fixed(r.alpha, 4) << "\n";
  os << "verdict   " << to_string(r.verdict) << "\n";
  if (r.pCFloor) os << "pC floor  " << (*r.pCFloor * Rational(100)).decimal() << "%\n";
  return os.str();
}

inline std::string format_table_v_csv(const CrosstalkReport& r) {
  std::string out = "s_exp,s_sig,pc_mean,pc_sig,s_ub,s_ub_sig,z,alpha,verdict,pc_floor\n";
  out += r.sExp.decimal() + "," + r.sigExp.decimal() + "," + r.pCMean.decimal() + "," + r.pCSig.decimal() + "," +
         r.ubMean.decimal() + "," + r.ubSigma.decimal() + "," + format_z(r) + "," + detail::fixed(r.alpha, 6) + "," +
         to_string(r.verdict) + "," + (r.pCFloor ? r.pCFloor->decimal() : std::string()) + "\n";
  return out;
}

inline std::string format_lhv(const LhvSampleReport& r) {
  std::ostringstream os;
  os << "scenario    " << r.scenario.name() << "\n";
  os << "quantity    " << to_string(r.quantity) << "\n";
  if (r.params.eta) os << "eta         " << *r.params.eta << "\n";
  os << "strategies  " << r.samples << "\n";
  os << "seed        " << r.seed << "\n";
  os << "max         " << r.maxObserved << "\n";
  os << "min         " << r.minObserved << "\n";
  if (r.upperBound) os << "upper bound " << *r.upperBound << "\n";
  if (r.lowerBound) os << "lower bound " << *r.lowerBound << "\n";
  os << "verdict     " << (r.sound() ? "within bounds" : "BOUND EXCEEDED") << "\n";
  return os.str();
}

}  // namespace bellbound::io
