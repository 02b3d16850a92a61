#include <gtest/gtest.h>

#include "bellbound/lr_forms.hpp"
#include "bellbound/sweep.hpp"

using namespace bellbound;

namespace {

const ScenarioId kFixed{Family::FsFixed, Level::Full};
const ScenarioId kFactual{Family::FsFixed, Level::FactualIndependence};
const ScenarioId kMarginal{Family::FsFixed, Level::MarginalOnly};
const ScenarioId kRemovable{Family::FsRemovable, Level::Full};
const ScenarioId kPccdFixed{Family::PccdFixed, Level::Full};
const ScenarioId kPccdRemovable{Family::PccdRemovable, Level::Full};
const ScenarioId kIdealLr{Family::IdealLr, Level::Full};

Polynomial poly(std::initializer_list<std::pair<int, Rational>> t) { return Polynomial(t); }

std::vector<Rational> values(const SweepResult& r) {
  std::vector<Rational> v;
  for (const auto& s : r.samples) v.push_back(s.value);
  return v;
}

void expect_sound(const PiecewiseBound& pb, const SweepResult& r) {
  for (const auto& s : r.samples)
    EXPECT_EQ(pb.evaluate(sweep_coordinate(s.params)), s.value) << sweep_coordinate(s.params);
  for (std::size_t k = 0; k + 1 < pb.segments.size(); ++k) {
    const auto& a = pb.segments[k];
    const auto& b = pb.segments[k + 1];
    EXPECT_EQ(a.hi, b.lo);
    EXPECT_EQ(a.poly.evaluate(a.hi), b.poly.evaluate(b.lo));
  }
  EXPECT_EQ(pb.segments.front().lo, sweep_coordinate(r.samples.front().params));
  EXPECT_EQ(pb.segments.back().hi, sweep_coordinate(r.samples.back().params));
}

SweepResult synthetic(const std::function<Rational(const Rational&)>& f, unsigned n = 64) {
  SweepResult r{kFixed, BellQuantity::S(), Sense::Maximize, "eta", {}, {}};
  for (unsigned k = 0; k <= n; ++k) r.samples.push_back({Params::symmetric(Rational(k, n)), f(Rational(k, n))});
  return r;
}

std::vector<Params> grid8() { return default_grid(8); }

}  // namespace

TEST(BoundAt, Examples) {
  EXPECT_EQ(bound_at({Family::IdealApparentLocality, Level::Full}, BellQuantity::S(), Sense::Maximize, {}), Rational(4));
  EXPECT_EQ(bound_at(kFixed, BellQuantity::S(), Sense::Maximize, Params::symmetric(Rational(3, 4))), Rational(207, 128));
  EXPECT_EQ(bound_at(kFactual, BellQuantity::SN(), Sense::Maximize, Params::symmetric(Rational(2, 3))), Rational(4));
  EXPECT_EQ(bound_at(kPccdFixed, BellQuantity::S(), Sense::Maximize, Params::symmetric(Rational(1, 2))), Rational(1, 2));
}

TEST(BoundAt, Errors) {
  EXPECT_THROW(bound_at(kFixed, BellQuantity::Delta(), Sense::Maximize, Params::symmetric(1)), DomainError);
  EXPECT_THROW(bound_at(kRemovable, BellQuantity::deltaF(), Sense::Minimize, Params::symmetric(1)), DomainError);
  EXPECT_THROW(bound_at(kFixed, BellQuantity::SN(), Sense::Maximize, Params::symmetric(0)), DomainError);
  EXPECT_THROW(bound_at(kFixed, BellQuantity::S(), Sense::Maximize, Params::symmetric(2)), DomainError);
}

TEST(Sweep, FairSamplingChsh) {
  auto r = sweep(kFixed, BellQuantity::S(), Sense::Maximize, default_grid(4));
  EXPECT_TRUE(r.errors.empty());
  EXPECT_EQ(values(r), (std::vector<Rational>{0, Rational(31, 128), Rational(7, 8), Rational(207, 128), 2}));
}

TEST(Sweep, PerfectlyCorrelatedFreedman) {
  auto r = sweep(kPccdRemovable, BellQuantity::deltaF(), Sense::Maximize, default_grid(4));
  ASSERT_EQ(r.samples.size(), 5u);
  for (const auto& s : r.samples) EXPECT_EQ(s.value, s.params.eta->pow(2) / Rational(4));
}

TEST(Sweep, Crosstalk) {
  auto r = sweep({Family::Crosstalk, Level::Full}, BellQuantity::S(), Sense::Maximize,
                 pc_grid({0, Rational(1, 16), Rational(1, 8), Rational(1, 4)}));
  EXPECT_EQ(r.variable, "pC");
  EXPECT_EQ(values(r), (std::vector<Rational>{2, 3, 4, 4}));
}

TEST(Sweep, ErrorsAreCollectedPerPoint) {
  auto g = default_grid(2);
  g.push_back(Params::symmetric(Rational(5, 4)));
  auto r = sweep(kFixed, BellQuantity::S(), Sense::Maximize, g);
  EXPECT_EQ(r.samples.size(), 3u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(*r.errors[0].params.eta, Rational(5, 4));
}

TEST(Sweep, SortedAndWorkerIndependent) {
  auto g = grid8();
  std::reverse(g.begin(), g.end());
  auto one = sweep(kPccdFixed, BellQuantity::DeltaPrime(), Sense::Minimize, g, 1);
  auto two = sweep(kPccdFixed, BellQuantity::DeltaPrime(), Sense::Minimize, g, 3);
  EXPECT_EQ(one.samples, two.samples);
  for (std::size_t i = 1; i < one.samples.size(); ++i)
    EXPECT_LT(*one.samples[i - 1].params.eta, *one.samples[i].params.eta);
}

TEST(Reconstruct, FairSamplingChsh) {
  auto r = sweep(kFixed, BellQuantity::S(), Sense::Maximize, default_grid());
  auto pb = reconstruct(r);
  ASSERT_EQ(pb.segments.size(), 1u);
  EXPECT_EQ(pb.segments[0].poly, poly({{4, -2}, {2, 4}}));
  EXPECT_EQ(pb.segments[0].lo, Rational(0));
  EXPECT_EQ(pb.segments[0].hi, Rational(1));
  expect_sound(pb, r);
}

TEST(Reconstruct, GargMerminBreakpoint) {
  auto raw = sweep(kFactual, BellQuantity::S(), Sense::Maximize, default_grid());
  auto pb = derive_bound(kFactual, BellQuantity::S(), Sense::Maximize);
  expect_sound(pb, raw);
  PiecewiseBound expected;
  expected.segments.push_back({0, Rational(2, 3), poly({{2, 4}})});
  expected.segments.push_back({Rational(2, 3), 1, poly({{1, 4}, {2, -2}})});
  EXPECT_TRUE(verify_closed_form(pb, expected)) << pb.to_string();
  auto normalized = derive_bound(kFactual, BellQuantity::SN(), Sense::Maximize);
  EXPECT_EQ(normalized.to_string(), "[0,2/3]: 4; [2/3,1]: -2 + 4*eta^-1");
}

TEST(Reconstruct, ConstantNormalizedBound) {
  auto pb = derive_bound(kPccdRemovable, BellQuantity::deltaFN(), Sense::Maximize, default_grid(16));
  ASSERT_EQ(pb.segments.size(), 1u);
  EXPECT_EQ(pb.max_degree(), 0);
  EXPECT_EQ(pb.segments[0].poly, Polynomial::constant(Rational(1, 4)));
}

TEST(Reconstruct, ClauserHorneLower) {
  auto r = sweep(kFixed, BellQuantity::DeltaPrime(), Sense::Minimize, default_grid());
  auto pb = reconstruct(r);
  expect_sound(pb, r);
  EXPECT_TRUE(verify_closed_form(pb, single_piece(poly({{4, -1}, {3, 2}, {1, -2}}))));
}

TEST(Reconstruct, RemovableDeltaUpper) {
  auto r = sweep(kRemovable, BellQuantity::Delta(), Sense::Maximize, default_grid());
  auto pb = reconstruct(r);
  expect_sound(pb, r);
  EXPECT_TRUE(verify_closed_form(pb, single_piece(poly({{6, 1}, {5, -2}, {4, 2}, {3, -4}, {2, 3}}))));
  EXPECT_EQ(pb.max_degree(), 6);
}

TEST(Reconstruct, VerifyClosedFormReflexive) {
  auto pb = single_piece(poly({{2, Rational(1, 3)}}));
  EXPECT_TRUE(verify_closed_form(pb, pb));
  EXPECT_FALSE(verify_closed_form(pb, single_piece(poly({{2, Rational(1, 2)}}))));
  EXPECT_FALSE(verify_closed_form(pb, single_piece(poly({{2, Rational(1, 3)}}), 0, 1, "pC")));
}

TEST(Reconstruct, DegreeCapExceeded) {
  auto r = synthetic([](const Rational& x) { return x.pow(7); });
  EXPECT_THROW(reconstruct(r, 6), ReconstructionError);
  EXPECT_NO_THROW(reconstruct(r, 7));
  try {
    reconstruct(r, 6);
  } catch (const ReconstructionError& e) {
    EXPECT_NE(std::string(e.what()).find("samples:"), std::string::npos);
  }
}

TEST(Reconstruct, TooFewSamples) {
  EXPECT_THROW(reconstruct(synthetic([](const Rational& x) { return x; }, 4)), ReconstructionError);
}

TEST(Reconstruct, IrrationalBreakpointKeepsBracket) {
  auto f = [](const Rational& x) { return max(x * x, Rational(1, 2)); };
  auto pb = reconstruct(synthetic(f), 6, BoundEvaluator(f));
  ASSERT_EQ(pb.segments.size(), 2u);
  ASSERT_EQ(pb.brackets.size(), 1u);
  const auto& b = pb.brackets[0];
  EXPECT_LE(b.hi - b.lo, Rational(1, 1 << 20));
  EXPECT_LT(b.lo * b.lo, Rational(1, 2));
  EXPECT_GT(b.hi * b.hi, Rational(1, 2));
}

TEST(Reconstruct, RationalBreakpointSnaps) {
  auto f = [](const Rational& x) { return max(Rational(3) * x - Rational(1), Rational(0)); };
  auto pb = reconstruct(synthetic(f, 10), 1, BoundEvaluator(f));
  ASSERT_EQ(pb.segments.size(), 2u);
  EXPECT_TRUE(pb.brackets.empty());
  EXPECT_EQ(pb.segments[0].hi, Rational(1, 3));
}

TEST(Sweep, ChshSymmetry) {
  for (const auto& id : {kFixed, kFactual, kMarginal, kPccdFixed}) {
    auto hi = sweep(id, BellQuantity::S(), Sense::Maximize, grid8());
    auto lo = sweep(id, BellQuantity::S(), Sense::Minimize, grid8());
    ASSERT_EQ(hi.samples.size(), lo.samples.size());
    for (std::size_t i = 0; i < hi.samples.size(); ++i) EXPECT_EQ(lo.samples[i].value, -hi.samples[i].value) << id.name();
  }
}

TEST(Sweep, MonotoneTightening) {
  auto full = values(sweep(kFixed, BellQuantity::S(), Sense::Maximize, grid8()));
  auto fact = values(sweep(kFactual, BellQuantity::S(), Sense::Maximize, grid8()));
  auto marg = values(sweep(kMarginal, BellQuantity::S(), Sense::Maximize, grid8()));
  for (std::size_t i = 0; i < full.size(); ++i) {
    EXPECT_LE(full[i], fact[i]);
    EXPECT_LE(fact[i], marg[i]);
  }
}

TEST(Sweep, EndpointAnchoring) {
  struct Case {
    ScenarioId id;
    BellQuantity q;
    Sense s;
  };
  const std::vector<Case> cases{
      {kFixed, BellQuantity::S(), Sense::Maximize},          {kFixed, BellQuantity::S(), Sense::Minimize},
      {kFixed, BellQuantity::DeltaPrime(), Sense::Minimize}, {kFixed, BellQuantity::DeltaPrime(), Sense::Maximize},
      {kRemovable, BellQuantity::Delta(), Sense::Maximize},  {kRemovable, BellQuantity::Delta(), Sense::Minimize},
      {kRemovable, BellQuantity::deltaF(), Sense::Maximize}, {kPccdFixed, BellQuantity::S(), Sense::Maximize},
      {kPccdFixed, BellQuantity::DeltaPrime(), Sense::Minimize},
      {kPccdRemovable, BellQuantity::Delta(), Sense::Minimize},
      {kPccdRemovable, BellQuantity::deltaF(), Sense::Maximize},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(bound_at(c.id, c.q, c.s, Params::symmetric(1)), bound_at(kIdealLr, c.q, c.s, {})) << c.id.name();
    EXPECT_EQ(bound_at(c.id, c.q, c.s, Params::symmetric(0)), Rational(0)) << c.id.name();
  }
}

TEST(Sweep, FreedmanMatchesClosedForm) {
  const Polynomial upper = poly({{6, Rational(1, 2)}, {5, Rational(-1, 2)}, {4, Rational(-1, 4)}, {3, -1}, {2, Rational(3, 2)}});
  for (const auto& e : {Rational(1, 3), Rational(1, 2), Rational(5, 6)}) {
    EXPECT_EQ(bound_at(kRemovable, BellQuantity::deltaF(), Sense::Maximize, Params::symmetric(e)), upper.evaluate(e));
    EXPECT_EQ(bound_at(kPccdRemovable, BellQuantity::deltaF(), Sense::Maximize, Params::symmetric(e)), e * e / Rational(4));
  }
}

TEST(Sweep2, AsymmetricExamples) {
  const ScenarioId asym{Family::AsymFixed, Level::Full};
  Polynomial2 s_up;
  s_up.add(2, 2, -2);
  s_up.add(1, 1, 4);
  auto g = sweep2(asym, BellQuantity::S(), Sense::Maximize, {1}, {Rational(1, 2)});
  ASSERT_EQ(g.samples.size(), 1u);
  EXPECT_EQ(g.samples[0].value, Rational(3, 2));
  EXPECT_EQ(bound_at(asym, BellQuantity::S(), Sense::Maximize, Params::asymmetric(Rational(3, 4), Rational(3, 4))),
            bound_at(kFixed, BellQuantity::S(), Sense::Maximize, Params::symmetric(Rational(3, 4))));
  EXPECT_EQ(bound_at(asym, BellQuantity::DeltaPrime(), Sense::Minimize, Params::asymmetric(1, 1)), Rational(-1));

  std::vector<Rational> grid{0, Rational(1, 3), Rational(3, 4), 1};
  auto checked = sweep2(asym, BellQuantity::S(), Sense::Maximize, grid, grid, s_up);
  EXPECT_EQ(checked.samples.size(), 16u);
  EXPECT_TRUE(checked.closed_form_holds());
  Polynomial2 wrong = s_up;
  wrong.add(1, 0, Rational(1, 100));
  EXPECT_FALSE(sweep2(asym, BellQuantity::S(), Sense::Maximize, grid, grid, wrong).closed_form_holds());
  EXPECT_THROW(sweep2(kFixed, BellQuantity::S(), Sense::Maximize, grid, grid), DomainError);
}

TEST(Sweep2, InvalidPointsCollected) {
  auto g = sweep2({Family::AsymFixed, Level::Full}, BellQuantity::S(), Sense::Maximize, {1, Rational(3, 2)}, {1});
  EXPECT_EQ(g.samples.size(), 1u);
  EXPECT_EQ(g.errors.size(), 1u);
}
