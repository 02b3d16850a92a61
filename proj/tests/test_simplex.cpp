#include <gtest/gtest.h>

#include <random>

#include "bellbound/bellq.hpp"
#include "bellbound/scenarios.hpp"
#include "bellbound/simplex.hpp"
#include "vertex_oracle.hpp"

using namespace bellbound;

namespace {

LpModel box(Relation lo_rel, Rational lo, Rational hi) {
  LpModel m;
  m.variableCount = 1;
  m.constraints.push_back({LinExpr::var(0), Relation::LessEqual, hi});
  m.constraints.push_back({LinExpr::var(0), lo_rel, lo});
  m.objective = LinExpr::var(0);
  return m;
}

LpModel scenario_lp(Family f, BellQuantity q, Sense s, const Params& p = {}) {
  auto model = build({f, Level::Full}, p);
  return model.to_lp(objective(q, model), s);
}

LpModel random_lp(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  LpModel m;
  m.variableCount = static_cast<std::size_t>(pick(1, 5));
  const int rows = pick(1, 6);
  for (int i = 0; i < rows; ++i) {
    LinExpr e;
    for (std::size_t j = 0; j < m.variableCount; ++j)
      if (int c = pick(-3, 3)) e.add_term(j, Rational(c));
    Relation rel = static_cast<Relation>(pick(0, 2));
    if (rel == Relation::Equal && pick(0, 1)) rel = Relation::LessEqual;
    m.constraints.push_back({e, rel, Rational(pick(-2, 6))});
  }
  for (std::size_t j = 0; j < m.variableCount; ++j)
    if (int c = pick(-3, 3)) m.objective.add_term(j, Rational(c));
  m.sense = pick(0, 1) ? Sense::Maximize : Sense::Minimize;
  return m;
}

}  // namespace

TEST(Simplex, UnitBox) {
  auto s = solve(box(Relation::GreaterEqual, 0, 1));
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(*s.value, Rational(1));
}

TEST(Simplex, ContradictoryBox) {
  EXPECT_EQ(solve(box(Relation::GreaterEqual, 2, 1)).status, LpStatus::Infeasible);
}

TEST(Simplex, Unbounded) {
  LpModel m;
  m.variableCount = 2;
  m.constraints.push_back({LinExpr::var(0) - LinExpr::var(1), Relation::LessEqual, Rational(1)});
  m.objective = LinExpr::var(0);
  EXPECT_EQ(solve(m).status, LpStatus::Unbounded);
}

TEST(Simplex, IdealLrChsh) {
  auto m = scenario_lp(Family::IdealLr, BellQuantity::S(), Sense::Maximize);
  auto s = solve(m);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(*s.value, Rational(2));
  EXPECT_TRUE(certify(m, s));
}

TEST(Simplex, CertifyRejectsTamperedValue) {
  auto m = scenario_lp(Family::IdealLr, BellQuantity::S(), Sense::Maximize);
  auto s = solve(m);
  s.value = Rational(3);
  EXPECT_FALSE(certify(m, s));
}

TEST(Simplex, CertifyApparentLocality) {
  auto m = scenario_lp(Family::IdealApparentLocality, BellQuantity::S(), Sense::Maximize);
  auto s = solve(m);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(*s.value, Rational(4));
  EXPECT_TRUE(certify(m, s));
}

TEST(Simplex, CertifyRejectsInfeasibleVertex) {
  auto m = scenario_lp(Family::IdealLr, BellQuantity::S(), Sense::Maximize);
  auto s = solve(m);
  s.vertex[0] += Rational(1, 2);
  EXPECT_FALSE(certify(m, s));
}

TEST(Simplex, MatchesVertexEnumeration) {
  std::mt19937_64 rng(20240611);
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int trial = 0; trial < 400; ++trial) {
    LpModel m = random_lp(rng);
    auto got = solve(m);
    auto want = oracle::solve(m);
    ASSERT_EQ(got.status, want.status) << "trial " << trial;
    if (got.status == LpStatus::Optimal) {
      ++optimal;
      ASSERT_EQ(*got.value, *want.value) << "trial " << trial;
      EXPECT_TRUE(certify(m, got)) << "trial " << trial;
    } else {
      (got.status == LpStatus::Infeasible ? infeasible : unbounded)++;
    }
  }
  // The generator should exercise every outcome.
  EXPECT_GT(optimal, 50);
  EXPECT_GT(infeasible, 5);
  EXPECT_GT(unbounded, 5);
}

TEST(Simplex, Deterministic) {
  auto m = scenario_lp(Family::FsFixed, BellQuantity::S(), Sense::Maximize, Params::symmetric(Rational(3, 4)));
  EXPECT_EQ(solve(m), solve(m));
}

TEST(Simplex, ScalingInvariance) {
  auto m = scenario_lp(Family::FsFixed, BellQuantity::DeltaPrime(), Sense::Minimize, Params::symmetric(Rational(1, 2)));
  auto base = solve(m);
  m.objective *= Rational(7, 3);
  auto scaled = solve(m);
  ASSERT_EQ(scaled.status, LpStatus::Optimal);
  EXPECT_EQ(*scaled.value, *base.value * Rational(7, 3));
  EXPECT_EQ(scaled.vertex, base.vertex);
}

TEST(Simplex, DegenerateModelsTerminate) {
  auto m = scenario_lp(Family::PccdRemovable, BellQuantity::Delta(), Sense::Minimize, Params::symmetric(Rational(1, 2)));
  auto s = solve(m);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_LT(s.pivots, kPivotCap);
  EXPECT_EQ(*s.value, -Rational(1, 4));
}

TEST(Simplex, RedundantRowsTolerated) {
  LpModel m = box(Relation::GreaterEqual, 0, 1);
  m.constraints.push_back(m.constraints[0]);
  m.constraints.push_back({LinExpr::var(0) * Rational(2), Relation::LessEqual, Rational(2)});
  auto s = solve(m);
  EXPECT_EQ(*s.value, Rational(1));
  EXPECT_TRUE(certify(m, s));
}

TEST(Simplex, DanglingIndexIsStructuralError) {
  LpModel m = box(Relation::GreaterEqual, 0, 1);
  m.objective = LinExpr::var(3);
  EXPECT_THROW(solve(m), StructuralError);
}

TEST(Simplex, FreeVariables) {
  LpModel m;
  m.variableCount = 1;
  m.nonNegative = false;
  m.constraints.push_back({LinExpr::var(0), Relation::GreaterEqual, Rational(-5, 2)});
  m.objective = LinExpr::var(0);
  m.sense = Sense::Minimize;
  auto s = solve(m);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(*s.value, Rational(-5, 2));
}
