#include <gtest/gtest.h>

#include "bellbound/errors.hpp"
#include "bellbound/polynomial.hpp"
#include "bellbound/rational.hpp"
#include "bellbound/sqrt2.hpp"

using namespace bellbound;

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  Rational r(3, -6);
  EXPECT_EQ(r.num(), -1);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.to_string(), "-1/2");
  EXPECT_EQ(Rational(6, 3).to_string(), "2");
}

TEST(Rational, ParseFractions) {
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-2"), Rational(-2));
  EXPECT_EQ(Rational::parse("+5/10"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("007/010"), Rational(7, 10));
  for (const char* bad : {"0.75", "1/0.5", "", "3/", "/4", "1/-2", "x", "1e3"})
    EXPECT_THROW(Rational::parse(bad), StructuralError) << bad;
  EXPECT_THROW(Rational::parse("1/0"), std::exception);
}

TEST(Rational, ParseDecimal) {
  EXPECT_EQ(Rational::parse_decimal("0.0088"), Rational(11, 1250));
  EXPECT_EQ(Rational::parse_decimal("2.0732"), Rational(20732, 10000));
  EXPECT_EQ(Rational::parse_decimal("-2.5"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse_decimal("3"), Rational(3));
  EXPECT_THROW(Rational::parse_decimal("1/2"), StructuralError);
  EXPECT_THROW(Rational::parse_decimal("."), StructuralError);
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(Rational(207, 128).decimal(12), "1.6171875");
  EXPECT_EQ(Rational(1, 3).decimal(4), "0.3333");
  EXPECT_EQ(Rational(-1, 8).decimal(), "-0.125");
  EXPECT_EQ(Rational(0).decimal(), "0");
  EXPECT_EQ(Rational(1, 1000).decimal(), "0.001");
}

TEST(Rational, OrderingAndArithmetic) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(3, 4).pow(2), Rational(9, 16));
  EXPECT_EQ(min(Rational(1), Rational(2)), Rational(1));
}

TEST(SqrtTwo, ExactSign) {
  EXPECT_EQ(SqrtTwoValue(0, 1).sign(), 1);
  EXPECT_EQ(SqrtTwoValue(3, -2).sign(), 1);   // 3 - 2.828...
  EXPECT_EQ(SqrtTwoValue(-3, 2).sign(), -1);
  EXPECT_EQ(SqrtTwoValue(1, -1).sign(), -1);
  EXPECT_EQ(SqrtTwoValue(0, 0).sign(), 0);
  SqrtTwoValue r2(0, 1);
  EXPECT_EQ(r2 * r2, SqrtTwoValue(2));
  EXPECT_EQ(SqrtTwoValue(1) / r2, SqrtTwoValue(0, Rational(1, 2)));
}

TEST(SqrtTwo, OrderingAndDecimal) {
  SqrtTwoValue two(2), qt(0, 2), four(4);
  EXPECT_LT(two, qt);
  EXPECT_LT(qt, four);
  EXPECT_EQ(qt.decimal(11), "2.82842712475");
  EXPECT_EQ(SqrtTwoValue(2, -1).decimal(4), "0.5858");
  EXPECT_EQ(SqrtTwoValue(Rational(-1, 2), Rational(1, 2)).decimal(4), "0.2071");
}

TEST(Polynomial, InterpolationIsExact) {
  Polynomial p{{4, Rational(-2)}, {2, Rational(4)}};
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= 5; ++k) {
    xs.emplace_back(k, 5);
    ys.push_back(p.evaluate(xs.back()));
  }
  EXPECT_EQ(Polynomial::interpolate(xs, ys), p);
  EXPECT_EQ(p.to_string(), "-2*eta^4 + 4*eta^2");
  EXPECT_EQ(p.degree(), 4);
}

TEST(Polynomial, LaurentTerms) {
  Polynomial p{{1, Rational(4)}, {2, Rational(-2)}};
  Polynomial n = p.shifted(-2);
  EXPECT_EQ(n.low_exponent(), -1);
  EXPECT_EQ(n.evaluate(Rational(2, 3)), Rational(4));
  EXPECT_THROW((void)n.evaluate(Rational(0)), DomainError);
}

TEST(Polynomial, PiecewiseNormalization) {
  PiecewiseBound pb;
  pb.segments.push_back({Rational(0), Rational(2, 3), Polynomial{{2, Rational(4)}}});
  pb.segments.push_back({Rational(2, 3), Rational(1), Polynomial{{1, Rational(4)}, {2, Rational(-2)}}});
  PiecewiseBound n = pb.normalized();
  EXPECT_EQ(n.to_string(), "[0,2/3]: 4; [2/3,1]: -2 + 4*eta^-1");
  EXPECT_EQ(n.evaluate(Rational(1, 2)), Rational(4));
  EXPECT_TRUE(verify_closed_form(pb, pb));
  EXPECT_FALSE(verify_closed_form(pb, n));
}

TEST(Polynomial, BivariateDiagonal) {
  Polynomial2 s;
  s.add(2, 2, Rational(-2));
  s.add(1, 1, Rational(4));
  EXPECT_EQ(s.evaluate(Rational(1), Rational(1, 2)), Rational(3, 2));
  EXPECT_EQ(s.diagonal(), (Polynomial{{4, Rational(-2)}, {2, Rational(4)}}));
  EXPECT_EQ(s.normalized().evaluate(Rational(1), Rational(1, 2)), Rational(3));
}
