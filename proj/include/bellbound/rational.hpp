#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "bellbound/errors.hpp"

namespace bellbound {

/// Exact arbitrary-precision fraction, always in canonical form
/// (positive denominator, coprime numerator and denominator).
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)

  template <std::integral I, std::integral J>
  Rational(I n, J d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
    q_.canonicalize();
  }

  Rational(mpz_class num, mpz_class den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(std::move(num), std::move(den));
    q_.canonicalize();
  }

  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p/q" or "p" with optional sign. Decimal points are rejected.
  static Rational parse(std::string_view text) {
    auto valid_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto strip_plus = [](std::string_view s) {
      if (!s.empty() && s.front() == '+') s.remove_prefix(1);
      return std::string(s);
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
      throw StructuralError("not an exact fraction: '" + std::string(text) + "'");
    mpz_class n(strip_plus(num), 10), d(std::string(den), 10);
    return Rational(std::move(n), std::move(d));
  }

  /// Parses a plain decimal literal ("0.0088", "-2.5", "3") exactly.
  static Rational parse_decimal(std::string_view text) {
    std::string s(text);
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      neg = s[0] == '-';
      s.erase(0, 1);
    }
    auto dot = s.find('.');
    std::string digits = s;
    std::size_t scale = 0;
    if (dot != std::string::npos) {
      digits = s.substr(0, dot) + s.substr(dot + 1);
      scale = s.size() - dot - 1;
    }
    if (digits.empty()) throw StructuralError("not a decimal: '" + std::string(text) + "'");
    for (char c : digits)
      if (c < '0' || c > '9') throw StructuralError("not a decimal: '" + std::string(text) + "'");
    mpz_class n(digits, 10), d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, scale);
    if (neg) n = -n;
    return Rational(std::move(n), std::move(d));
  }

  [[nodiscard]] mpz_class num() const { return q_.get_num(); }
  [[nodiscard]] mpz_class den() const { return q_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }

  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] double to_double() const { return q_.get_d(); }

  [[nodiscard]] std::string to_string() const { return q_.get_str(); }

  /// Decimal rendering with `sig` significant digits, trailing zeros trimmed.
  [[nodiscard]] std::string decimal(int sig = 12) const {
    if (is_zero()) return "0";
    mpf_class f(q_, 512);
    mp_exp_t exp = 0;
    std::string digits = f.get_str(exp, 10, static_cast<std::size_t>(sig));
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(0, 1);
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    std::string out;
    if (exp <= 0) {
      out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
    } else if (static_cast<std::size_t>(exp) >= digits.size()) {
      out = digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
    } else {
      out = digits.substr(0, static_cast<std::size_t>(exp)) + "." + digits.substr(static_cast<std::size_t>(exp));
    }
    return neg ? "-" + out : out;
  }

  [[nodiscard]] Rational abs() const { return Rational(::abs(q_)); }

  [[nodiscard]] Rational pow(unsigned k) const {
    Rational r(1);
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), o.q_.get_mpq_t());
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(q_.get_mpq_t(), q_.get_mpq_t(), o.q_.get_mpq_t());
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(q_.get_mpq_t(), q_.get_mpq_t(), o.q_.get_mpq_t());
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    mpq_div(q_.get_mpq_t(), q_.get_mpq_t(), o.q_.get_mpq_t());
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(Rational a) {
    mpq_neg(a.q_.get_mpq_t(), a.q_.get_mpq_t());
    return a;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class q_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace bellbound

template <>
struct std::hash<bellbound::Rational> {
  std::size_t operator()(const bellbound::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.to_string());
  }
};
