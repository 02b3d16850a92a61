#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bellbound/errors.hpp"
#include "bellbound/rational.hpp"

namespace bellbound {

/// Sparse univariate polynomial with exact coefficients. Negative exponents are
/// allowed so that normalized bounds (value / eta^2) stay exact.
class Polynomial {
 public:
  using Terms = std::map<int, Rational>;

  Polynomial() = default;

  /// From (exponent, coefficient) pairs.
  Polynomial(std::initializer_list<std::pair<int, Rational>> terms) {
    for (const auto& [e, c] : terms) add(e, c);
  }

  static Polynomial constant(const Rational& c) { return Polynomial{{0, c}}; }

  void add(int exp, const Rational& coef) {
    if (coef.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exp, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] int degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  [[nodiscard]] int low_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }

  [[nodiscard]] Rational coefficient(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  [[nodiscard]] Rational evaluate(const Rational& x) const {
    if (x.is_zero()) {
      if (low_exponent() < 0) throw DomainError("negative power evaluated at 0");
      return coefficient(0);
    }
    Rational v;
    Rational inv = Rational(1) / x;
    for (const auto& [e, c] : terms_) v += c * (e >= 0 ? x.pow(static_cast<unsigned>(e)) : inv.pow(static_cast<unsigned>(-e)));
    return v;
  }

  /// Multiplies by x^k.
  [[nodiscard]] Polynomial shifted(int k) const {
    Polynomial p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e + k, c);
    return p;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& k) {
    if (k.is_zero()) terms_.clear();
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& k) { return a *= k; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) p.add(ea + eb, ca * cb);
    return p;
  }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Unique interpolant of degree < xs.size() through (xs[i], ys[i]) (Newton form, exact).
  static Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
    if (xs.size() != ys.size() || xs.empty()) throw DomainError("interpolate: mismatched or empty samples");
    const std::size_t n = xs.size();
    std::vector<Rational> dd(ys.begin(), ys.end());
    for (std::size_t level = 1; level < n; ++level)
      for (std::size_t i = n - 1; i >= level; --i) {
        Rational dx = xs[i] - xs[i - level];
        if (dx.is_zero()) throw DomainError("interpolate: repeated abscissa");
        dd[i] = (dd[i] - dd[i - 1]) / dx;
      }
    Polynomial p = constant(dd[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;) {
      p = p * Polynomial{{1, 1}, {0, -xs[k]}};
      p.add(0, dd[k]);
    }
    return p;
  }

  /// "-2*eta^4 + 4*eta^2"; highest power first.
  [[nodiscard]] std::string to_string(const std::string& var = "eta") const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = c.abs();
      if (s.empty())
        s += c.sign() < 0 ? "-" : "";
      else
        s += c.sign() < 0 ? " - " : " + ";
      std::string m;
      if (e == 0)
        m = mag.to_string();
      else {
        m = mag == Rational(1) ? "" : mag.to_string() + "*";
        m += var;
        if (e != 1) m += "^" + std::to_string(e);
      }
      s += m;
    }
    return s;
  }

 private:
  Terms terms_;
};

/// Sparse polynomial in two variables (etaA, etaB).
class Polynomial2 {
 public:
  using Terms = std::map<std::pair<int, int>, Rational>;

  Polynomial2() = default;
  /// From ((expA, expB), coefficient) entries; repeated monomials accumulate.
  Polynomial2(std::initializer_list<std::pair<std::pair<int, int>, Rational>> terms) {
    for (const auto& [e, c] : terms) add(e.first, e.second, c);
  }

  void add(int ea, int eb, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({ea, eb}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] const Terms& terms() const { return terms_; }

  [[nodiscard]] Rational evaluate(const Rational& a, const Rational& b) const {
    Rational v;
    for (const auto& [e, c] : terms_) {
      if ((e.first < 0 && a.is_zero()) || (e.second < 0 && b.is_zero()))
        throw DomainError("negative power evaluated at 0");
      auto pw = [](const Rational& x, int k) { return k >= 0 ? x.pow(static_cast<unsigned>(k)) : (Rational(1) / x).pow(static_cast<unsigned>(-k)); };
      v += c * pw(a, e.first) * pw(b, e.second);
    }
    return v;
  }

  /// Divides by (etaA*etaB)^k.
  [[nodiscard]] Polynomial2 normalized(int k = 1) const {
    Polynomial2 p;
    for (const auto& [e, c] : terms_) p.add(e.first - k, e.second - k, c);
    return p;
  }

  /// Restriction to etaA = etaB = eta.
  [[nodiscard]] Polynomial diagonal() const {
    Polynomial p;
    for (const auto& [e, c] : terms_) p.add(e.first + e.second, c);
    return p;
  }

  [[nodiscard]] std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")";
      if (e.first != 0) s += "*etaA^" + std::to_string(e.first);
      if (e.second != 0) s += "*etaB^" + std::to_string(e.second);
    }
    return s;
  }

  friend bool operator==(const Polynomial2&, const Polynomial2&) = default;

 private:
  Terms terms_;
};

/// Contiguous exact pieces over an interval. Breakpoints that could not be pinned
/// to an exact rational are kept as brackets between neighbouring segments.
struct PiecewiseBound {
  struct Segment {
    Rational lo, hi;
    Polynomial poly;
    friend bool operator==(const Segment&, const Segment&) = default;
  };
  struct Bracket {
    Rational lo, hi;
    friend bool operator==(const Bracket&, const Bracket&) = default;
  };

  std::string variable = "eta";
  std::vector<Segment> segments;
  std::vector<Bracket> brackets;

  [[nodiscard]] Rational evaluate(const Rational& x) const {
    for (const auto& s : segments)
      if (s.lo <= x && x <= s.hi) return s.poly.evaluate(x);
    throw DomainError("piecewise bound undefined at " + variable + " = " + x.to_string());
  }

  /// Divides every piece by variable^k.
  [[nodiscard]] PiecewiseBound normalized(int k = 2) const {
    PiecewiseBound out = *this;
    for (auto& s : out.segments) s.poly = s.poly.shifted(-k);
    return out;
  }

  [[nodiscard]] int max_degree() const {
    int d = 0;
    for (const auto& s : segments) d = std::max(d, s.poly.degree());
    return d;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (i) out += "; ";
      out += "[" + segments[i].lo.to_string() + "," + segments[i].hi.to_string() + "]: " +
             segments[i].poly.to_string(variable);
    }
    return out;
  }

  friend bool operator==(const PiecewiseBound&, const PiecewiseBound&) = default;
};

/// Single-piece bound over [lo, hi].
inline PiecewiseBound single_piece(Polynomial p, Rational lo = 0, Rational hi = 1, std::string variable = "eta") {
  PiecewiseBound b;
  b.variable = std::move(variable);
  b.segments.push_back({std::move(lo), std::move(hi), std::move(p)});
  return b;
}

/// True iff both bounds carry identical segment structure and polynomials as rational data.
inline bool verify_closed_form(const PiecewiseBound& pb, const PiecewiseBound& reference) {
  return pb.variable == reference.variable && pb.segments == reference.segments && pb.brackets == reference.brackets;
}

}  // namespace bellbound
