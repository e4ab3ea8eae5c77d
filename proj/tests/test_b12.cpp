#include <gtest/gtest.h>

#include "boroczky/boroczky.hpp"
#include "d3_table.hpp"
#include "expect_error.hpp"
#include "random.hpp"

using namespace boroczky;
using b12::Tag;

namespace {

using Census = std::map<std::size_t, std::size_t>;

b12::ParameterTriple params(const char* text) { return b12::parse_parameters(rationals(), text); }

FieldElement q(long n) { return from_integer(rationals(), n); }

ProjPoint<FieldElement> labeled(const b12::B12Result& r, const char* name) {
  return r.configuration.points[r.point_labels.at(name)].point;
}

const auto& kD3Table = proptest::d3_table();

}  // namespace

TEST(Classify, Examples) {
  EXPECT_EQ(b12::classify(params("1/1,1/2,1/3")).tag, Tag::Generic);
  EXPECT_EQ(b12::classify(params("(0:1),(1:1),(1:1)")).tag, Tag::D1Smooth);
  EXPECT_EQ(b12::classify(params("(1:1),(1:1),(-1:1)")).tag, Tag::D2Menelaus);
  EXPECT_EQ(b12::classify(params("(2:1),(1:1),(-1:1)")).tag, Tag::D3Sextuple);
  EXPECT_EQ(b12::classify(params("(0:1),(0:1),(1:1)")).tag, Tag::D1Double);
  EXPECT_EQ(b12::classify(params("(0:1),(0:1),(0:1)")).tag, Tag::D1Triple);
  EXPECT_EQ(b12::classify(params("(0:1),(1:0),(1:1)")).tag, Tag::D1D2D3Locus);
}

TEST(Classify, ConditionsAreEvaluatedDirectly) {
  // 1*1*1 + 1*2*3 = 7 and 1 + 2*6 = 13 are both nonzero.
  auto c = b12::classify(params("1/1,1/2,1/3"));
  EXPECT_FALSE(c.condition_i || c.condition_ii || c.condition_iii);
  auto d2 = b12::classify(params("(1:1),(1:1),(-1:1)"));
  EXPECT_TRUE(d2.condition_ii);
  EXPECT_FALSE(d2.condition_iii);
  auto d1 = b12::classify(params("(1:1),(0:1),(1:1)"));
  EXPECT_EQ(d1.zero_coordinates, std::vector<std::string>{"b1"});
}

TEST(Classify, InvariantUnderRescaling) {
  proptest::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    std::array<b12::ParameterTriple::Ratio, 3> r;
    for (auto& x : r) {
      // Small values so that every stratum is hit.
      x = {from_integer(rationals(), rng.uniform(-2, 2)), from_integer(rationals(), rng.uniform(-2, 2))};
      if (x[0].is_zero() && x[1].is_zero()) x[1] = q(1);
    }
    b12::ParameterTriple m(r[0], r[1], r[2]);
    auto scaled = r;
    for (auto& x : scaled) {
      FieldElement c = from_rational(rationals(), rng.nonzero_rational());
      x = {x[0] * c, x[1] * c};
    }
    b12::ParameterTriple m2(scaled[0], scaled[1], scaled[2]);
    EXPECT_EQ(m, m2);
    EXPECT_EQ(b12::classify(m).tag, b12::classify(m2).tag);
  }
}

TEST(Parameters, ZeroRatioRejected) {
  EXPECT_ERROR_CODE(params("(0:0),(1:1),(1:1)"), ErrorCode::ParameterInvalid);
  EXPECT_ERROR_CODE(params("1/1,1/2"), ErrorCode::ParseError);
}

TEST(Build, GenericSampleCensusAndLabels) {
  auto r = b12::build(params("1/1,1/2,1/3"));
  EXPECT_EQ(r.cls.tag, Tag::Generic);
  EXPECT_EQ(r.configuration.lines.size(), 12u);
  EXPECT_EQ(r.configuration.census, (Census{{3, 19}, {2, 9}}));
  EXPECT_EQ(r.point_labels.size(), 19u);
  EXPECT_EQ(r.line_labels.size(), 12u);
}

TEST(Build, PointsLandSOnLineAtInfinity) {
  auto r = b12::build(params("1/1,1/2,1/3"));
  // a1 b1^2 c1 = 1, a2 b2^2 c2 = 1*4*3 = 12; a2 b1 b2 c2 = 6.
  EXPECT_EQ(labeled(r, "L"), ProjPoint<FieldElement>(q(1), q(-12), q(0)));
  EXPECT_EQ(labeled(r, "S"), ProjPoint<FieldElement>(q(7), q(-12), q(0)));
  EXPECT_TRUE(collinear(labeled(r, "A"), labeled(r, "B"), labeled(r, "S")));
  // Independently: L = HJ ∩ IK from the built lines.
  const auto& lines = r.configuration.lines;
  EXPECT_EQ(meet(lines[r.line_labels.at("HJ")], lines[r.line_labels.at("IK")]), labeled(r, "L"));
}

TEST(Build, SymbolicPointG) {
  Field k = parse_field("QQ(a1)");
  // One transcendental is enough to see the closed form of G at work.
  FieldElement a1 = generator(k), one_k = one(k);
  FieldElement a2 = from_integer(k, 2), b1 = one_k, b2 = from_integer(k, 3), c1 = from_integer(k, 5), c2 = from_integer(k, 7);
  b12::ParameterTriple m({a1, a2}, {b1, b2}, {c1, c2});
  auto r = b12::build(m);
  // The ratio (a1 : a2) is stored as (1 : a2/a1).
  FieldElement A2 = a2 / a1;
  EXPECT_EQ(labeled(r, "G"), ProjPoint<FieldElement>(A2 * c2, c1, c2));
  EXPECT_EQ(r.configuration.census, (Census{{3, 19}, {2, 9}}));
}

TEST(Build, HundredRandomGenericParameters) {
  proptest::Rng rng(2024);
  int generic = 0;
  while (generic < 100) {
    std::array<b12::ParameterTriple::Ratio, 3> r;
    for (auto& x : r) x = {from_rational(rationals(), rng.rational(20)), from_rational(rationals(), rng.rational(20))};
    bool zero_pair = false;
    for (auto& x : r) zero_pair = zero_pair || (x[0].is_zero() && x[1].is_zero());
    if (zero_pair) continue;
    b12::ParameterTriple m(r[0], r[1], r[2]);
    if (b12::classify(m).tag != Tag::Generic) continue;
    auto res = b12::build(m);
    EXPECT_EQ(res.configuration.lines.size(), 12u) << m.to_string();
    EXPECT_EQ(res.configuration.census, (Census{{3, 19}, {2, 9}})) << m.to_string();
    EXPECT_EQ(res.cross_checked, 31u);
    ++generic;
  }
}

TEST(Build, D1SmoothSevenLines) {
  auto r = b12::build(params("(0:1),(1:1),(1:1)"));
  EXPECT_EQ(r.configuration.lines.size(), 7u);
  EXPECT_EQ(r.configuration.count(3), 6u);
}

TEST(Build, D1TripleIsTriangle) {
  auto r = b12::build(params("(0:1),(0:1),(0:1)"));
  EXPECT_EQ(r.configuration.lines.size(), 3u);
  EXPECT_EQ(r.configuration.census, (Census{{2, 3}}));
}

TEST(Build, LocusBuildsWithoutAborting) {
  auto r = b12::build(params("(0:1),(1:0),(1:1)"));
  EXPECT_EQ(r.cls.tag, Tag::D1D2D3Locus);
  std::size_t n = r.configuration.lines.size();
  EXPECT_EQ(pair_count(r.configuration), n * (n - 1) / 2);
}

TEST(Degeneration, D1DoubleQuasiPencil) {
  auto rep = b12::degeneration_report(params("(0:1),(0:1),(1:1)"));
  EXPECT_EQ(rep.line_groups.size(), 4u);
  EXPECT_EQ(rep.census, (Census{{3, 1}, {2, 3}}));
}

TEST(Degeneration, D2Menelaus) {
  auto m = params("(1:1),(1:1),(-1:1)");
  auto rep = b12::degeneration_report(m);
  EXPECT_EQ(rep.line_groups.size(), 6u);
  EXPECT_EQ(rep.census, (Census{{3, 4}, {2, 3}}));
  auto r = b12::build(m);
  EXPECT_TRUE(collinear(labeled(r, "D"), labeled(r, "E"), labeled(r, "F")));
}

TEST(Degeneration, D3SextuplePoint) {
  auto m = params("(2:1),(1:1),(-1:1)");
  auto rep = b12::degeneration_report(m);
  EXPECT_EQ(rep.multiplicity_of.at("E"), 6u);
  // The double points are unlabeled; the 15 triple points all carry labels.
  EXPECT_EQ(rep.census, (Census{{6, 1}, {3, 15}, {2, 6}}));
  EXPECT_EQ(rep.labeled_census, (Census{{6, 1}, {3, 15}}));
  auto r = b12::build(m);
  for (const char* name : {"Q", "R", "S"}) EXPECT_EQ(r.point_labels.at(name), r.point_labels.at("E")) << name;
}

TEST(Degeneration, D3TableMatchesPublishedTable) {
  auto rep = b12::degeneration_report(params("(2:1),(1:1),(-1:1)"));
  EXPECT_EQ(rep.table_columns, proptest::d3_table_columns());
  ASSERT_EQ(rep.table_rows.size(), kD3Table.size());
  for (std::size_t i = 0; i < kD3Table.size(); ++i) {
    EXPECT_EQ(rep.table_rows[i], kD3Table[i].first);
    std::string row;
    for (bool b : rep.table[i]) row += b ? '+' : '.';
    EXPECT_EQ(row, kD3Table[i].second) << "row " << kD3Table[i].first;
  }
}

TEST(Degeneration, D3PointsOfExtraCollinearities) {
  auto r = b12::build(params("(2:1),(1:1),(-1:1)"));
  auto p = [&](const char* n) { return labeled(r, n); };
  EXPECT_TRUE(collinear(p("N"), p("E"), p("G")));
  EXPECT_TRUE(collinear(p("C"), p("E"), p("P")));
  EXPECT_TRUE(collinear(p("E"), p("M"), p("O")));
  EXPECT_TRUE(collinear(p("A"), p("I"), p("H")));
}

TEST(Degeneration, GenericParameterThrows) {
  EXPECT_ERROR_CODE(b12::degeneration_report(params("1/1,1/2,1/3")), ErrorCode::GenericParameter);
}

TEST(Symbolic, AllIdentitiesVanish) {
  auto rep = b12::verify_symbolic_identities();
  EXPECT_TRUE(rep.l_z.is_zero());
  EXPECT_TRUE(rep.s_z.is_zero());
  EXPECT_TRUE(rep.det_moq.is_zero());
  EXPECT_TRUE(rep.det_mor.is_zero());
  EXPECT_TRUE(rep.mismatches.empty());
  EXPECT_TRUE(rep.all_vanish());
}

TEST(Scan, ThreeByThreeByThreeGrid) {
  b12::RatioList ks;
  for (long k = 1; k <= 3; ++k) ks.push_back({q(1), q(k)});
  auto recs = b12::scan({ks, ks, ks});
  ASSERT_EQ(recs.size(), 27u);
  std::size_t idx = 0;
  for (long a = 1; a <= 3; ++a)
    for (long b = 1; b <= 3; ++b)
      for (long c = 1; c <= 3; ++c, ++idx) {
        b12::ParameterTriple m({q(1), q(a)}, {q(1), q(b)}, {q(1), q(c)});
        ASSERT_TRUE(recs[idx].params.has_value());
        EXPECT_EQ(*recs[idx].params, m);
        EXPECT_EQ(recs[idx].cls.tag, b12::classify(m).tag);
        if (recs[idx].cls.tag == Tag::Generic) {
          EXPECT_EQ(recs[idx].census, (Census{{3, 19}, {2, 9}}));
        }
      }
}

TEST(Scan, SingleAndEmptyGrids) {
  b12::RatioList one{{q(1), q(1)}};
  auto recs = b12::scan({one, one, one});
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].cls.tag, Tag::Generic);
  EXPECT_TRUE(b12::scan({b12::RatioList{}, one, one}).empty());
}
