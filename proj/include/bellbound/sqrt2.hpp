#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

#include "bellbound/rational.hpp"

namespace bellbound {

/// Exact element a + b*sqrt(2) of Q(sqrt 2).
class SqrtTwoValue {
 public:
  SqrtTwoValue() = default;
  SqrtTwoValue(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT(google-explicit-constructor)

  static SqrtTwoValue sqrt2() { return {0, 1}; }

  [[nodiscard]] const Rational& rational_part() const { return a_; }
  [[nodiscard]] const Rational& sqrt2_part() const { return b_; }

  /// Exact sign, using a^2 vs 2 b^2 when the parts disagree.
  [[nodiscard]] int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
    if (sa <= 0 && sb <= 0) return -1;
    Rational aa = a_ * a_, bb = Rational(2) * b_ * b_;
    if (aa == bb) return 0;
    // |a| dominates when a^2 > 2 b^2
    return aa > bb ? sa : sb;
  }

  SqrtTwoValue& operator+=(const SqrtTwoValue& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  SqrtTwoValue& operator-=(const SqrtTwoValue& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  SqrtTwoValue& operator*=(const SqrtTwoValue& o) {
    Rational a = a_ * o.a_ + Rational(2) * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  SqrtTwoValue& operator/=(const SqrtTwoValue& o) {
    Rational norm = o.a_ * o.a_ - Rational(2) * o.b_ * o.b_;
    if (norm.is_zero()) throw DomainError("division by zero in Q(sqrt 2)");
    *this *= SqrtTwoValue(o.a_ / norm, -o.b_ / norm);
    return *this;
  }

  friend SqrtTwoValue operator+(SqrtTwoValue x, const SqrtTwoValue& y) { return x += y; }
  friend SqrtTwoValue operator-(SqrtTwoValue x, const SqrtTwoValue& y) { return x -= y; }
  friend SqrtTwoValue operator*(SqrtTwoValue x, const SqrtTwoValue& y) { return x *= y; }
  friend SqrtTwoValue operator/(SqrtTwoValue x, const SqrtTwoValue& y) { return x /= y; }
  friend SqrtTwoValue operator-(const SqrtTwoValue& x) { return {-x.a_, -x.b_}; }

  friend bool operator==(const SqrtTwoValue&, const SqrtTwoValue&) = default;
  friend std::strong_ordering operator<=>(const SqrtTwoValue& x, const SqrtTwoValue& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  [[nodiscard]] mpf_class to_mpf(mp_bitcnt_t bits = 512) const {
    mpf_class r(sqrt(mpf_class(2, bits)), bits);
    r *= mpf_class(b_.raw(), bits);
    r += mpf_class(a_.raw(), bits);
    return r;
  }

  [[nodiscard]] double to_double() const { return to_mpf().get_d(); }

  /// Decimal with `digits` digits after the point.
  [[nodiscard]] std::string decimal(int digits = 12) const { return format_fixed(to_mpf(), digits); }

  /// "a + b*sqrt(2)" with zero parts omitted.
  [[nodiscard]] std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    std::string s = b_ == Rational(1) ? "sqrt(2)" : b_ == Rational(-1) ? "-sqrt(2)" : b_.to_string() + "*sqrt(2)";
    if (a_.is_zero()) return s;
    return a_.to_string() + (s.front() == '-' ? " - " + s.substr(1) : " + " + s);
  }

  static std::string format_fixed(const mpf_class& v, int digits) {
    mpf_class scale(1, v.get_prec());
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpf_class scaled = v * scale;
    bool neg = sgn(scaled) < 0;
    if (neg) scaled = -scaled;
    scaled += 0.5;
    mpz_class n(floor(scaled));
    std::string s = n.get_str();
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    if (neg && n != 0) s.insert(0, "-");
    return s;
  }

 private:
  Rational a_;
  Rational b_;
};

}  // namespace bellbound
