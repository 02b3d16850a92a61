#include <gtest/gtest.h>

#include "bellbound/io.hpp"

using namespace bellbound;

TEST(Descriptor, RoundTrip) {
  std::vector<io::Descriptor> cases{
      {{Family::FsFixed, Level::FactualIndependence}, Params::symmetric(Rational(3, 4))},
      {{Family::AsymRemovable, Level::Full}, Params::asymmetric(Rational(1, 3), 1)},
      {{Family::Crosstalk, Level::Full}, Params::crosstalk(Rational(1, 32), true)},
      {{Family::IdealApparentLocality, Level::Full}, {}},
  };
  for (const auto& d : cases) {
    std::string text = io::format_descriptor(d);
    EXPECT_EQ(io::parse_descriptor(text), d) << text;
    EXPECT_EQ(io::format_descriptor(io::parse_descriptor(text)), text);
  }
}

TEST(Descriptor, Format) {
  io::Descriptor d{{Family::FsFixed, Level::Full}, Params::symmetric(Rational(3, 4))};
  EXPECT_EQ(io::format_descriptor(d), "family = fs-fixed\nlevel = full\neta = 3/4\n");
}

TEST(Descriptor, CommentsAndWhitespace) {
  auto d = io::parse_descriptor("# test\n  family =  pccd-fixed \n\neta=1/2\n");
  EXPECT_EQ(d.id.family, Family::PccdFixed);
  EXPECT_EQ(*d.params.eta, Rational(1, 2));
}

TEST(Descriptor, Rejections) {
  EXPECT_THROW(io::parse_descriptor("family = fs-fixed\neta = 0.75\n"), StructuralError);
  EXPECT_THROW(io::parse_descriptor("family = fs-fixed\neta = 3/4\ncolour = red\n"), StructuralError);
  EXPECT_THROW(io::parse_descriptor("eta = 3/4\n"), StructuralError);
  EXPECT_THROW(io::parse_descriptor("family = fs-fixed\neta 3/4\n"), StructuralError);
  EXPECT_THROW(io::parse_descriptor("family = fs-fixed\neta = 5/4\n"), DomainError);
  EXPECT_THROW(io::parse_descriptor("family = ideal-lr\nlevel = marginal-only\n"), DomainError);
}

TEST(Csv, SweepRoundTrip) {
  auto r = sweep({Family::FsFixed, Level::Full}, BellQuantity::S(), Sense::Maximize, default_grid(8));
  std::string text = io::format_sweep_csv(r);
  EXPECT_EQ(text.substr(0, text.find('\n')), "eta,value_num,value_den,value_decimal");
  auto rows = io::parse_sweep_csv(text);
  ASSERT_EQ(rows.size(), r.samples.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].params, std::vector<Rational>{*r.samples[i].params.eta});
    EXPECT_EQ(rows[i].value, r.samples[i].value);
  }
  EXPECT_NE(text.find("3/4,207,128,1.6171875\n"), std::string::npos);
}

TEST(Csv, BivariateRoundTrip) {
  auto g = sweep2({Family::AsymFixed, Level::Full}, BellQuantity::S(), Sense::Maximize, {Rational(1, 2), 1},
                  {Rational(1, 3), 1});
  auto rows = io::parse_sweep_csv(io::format_sweep2_csv(g));
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].params, (std::vector<Rational>{g.samples[i].etaA, g.samples[i].etaB}));
    EXPECT_EQ(rows[i].value, g.samples[i].value);
  }
}

TEST(Csv, Rejections) {
  EXPECT_THROW(io::parse_sweep_csv(""), StructuralError);
  EXPECT_THROW(io::parse_sweep_csv("eta,value\n"), StructuralError);
  EXPECT_THROW(io::parse_sweep_csv("eta,value_num,value_den,value_decimal\n1/2,2,4,0.5\n"), StructuralError);
  EXPECT_THROW(io::parse_sweep_csv("eta,value_num,value_den,value_decimal\n1/2,1\n"), StructuralError);
}

TEST(Piecewise, RoundTrip) {
  PiecewiseBound pb;
  pb.segments.push_back({0, Rational(2, 3), Polynomial::constant(4)});
  pb.segments.push_back({Rational(2, 3), 1, Polynomial{{-1, 4}, {0, -2}}});
  pb.brackets.push_back({Rational(1, 3), Rational(1, 3) + Rational(1, 1 << 20)});
  std::string text = io::format_piecewise(pb);
  EXPECT_EQ(io::parse_piecewise(text), pb);
  EXPECT_NE(text.find("segment 2/3 1 0:-2 -1:4\n"), std::string::npos) << text;

  PiecewiseBound xt = single_piece(Polynomial{{0, 2}, {1, 16}}, 0, Rational(1, 8), "pC");
  EXPECT_EQ(io::parse_piecewise(io::format_piecewise(xt)), xt);
}

TEST(Piecewise, Rejections) {
  EXPECT_THROW(io::parse_piecewise("segment 0 1 0:1\n"), StructuralError);
  EXPECT_THROW(io::parse_piecewise("variable eta\nsegment 0 1 x:1\n"), StructuralError);
  EXPECT_THROW(io::parse_piecewise("variable eta\nsegment 0 1 2\n"), StructuralError);
  EXPECT_THROW(io::parse_piecewise("variable eta\nwhatever\n"), StructuralError);
}

TEST(Reports, TableFive) {
  auto d = [](const char* s) { return Rational::parse_decimal(s); };
  auto r = crosstalk_ztest(d("2.0732"), d("0.0003"), d("0.0045"), d("0.0014"), d("0.0088"));
  std::string t = io::format_table_v(r);
  EXPECT_NE(t.find("S_UB      2.0720 +- 0.0224"), std::string::npos) << t;
  EXPECT_NE(t.find("z         0.0536"), std::string::npos) << t;
  EXPECT_NE(t.find("alpha     0.9573"), std::string::npos) << t;
  EXPECT_NE(t.find("pC floor  0.22%"), std::string::npos) << t;
  std::string csv = io::format_table_v_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "s_exp,s_sig,pc_mean,pc_sig,s_ub,s_ub_sig,z,alpha,verdict,pc_floor");
  EXPECT_NE(csv.find(",2.072,0.0224,0.0536,0.957"), std::string::npos) << csv;
}

TEST(Reports, InfiniteZ) {
  auto r = crosstalk_ztest(3, 0, 0, 0);
  EXPECT_EQ(io::format_z(r), "+inf");
  EXPECT_NE(io::format_table_v(r).find("exact exceedance"), std::string::npos);
}
