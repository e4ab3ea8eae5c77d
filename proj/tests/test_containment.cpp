#include <gtest/gtest.h>

#include "boroczky/boroczky.hpp"
#include "expect_error.hpp"
#include "random.hpp"

using namespace boroczky;
using namespace boroczky::containment;

namespace {

QPoly x() { return QPoly::variable(xyz_ring(), 0); }
QPoly y() { return QPoly::variable(xyz_ring(), 1); }
QPoly z() { return QPoly::variable(xyz_ring(), 2); }

RationalPoint rp(long a, long b, long c) { return {Rational(a), Rational(b), Rational(c)}; }

PointSet coordinate_points() { return PointSet({rp(1, 0, 0), rp(0, 1, 0), rp(0, 0, 1)}); }

bool same_span(const std::vector<QPoly>& a, const std::vector<QPoly>& b) {
  for (const auto& f : a)
    if (!linear_membership(f, b)) return false;
  for (const auto& f : b)
    if (!linear_membership(f, a)) return false;
  return true;
}

QIdeal ideal(const std::vector<QPoly>& gens) { return QIdeal(xyz_ring(), gens); }

b12::B12Result generic_b12() { return b12::build(b12::parse_parameters(rationals(), "1/1,1/2,1/3")); }

b12::B12Result d3_b12() { return b12::build(b12::parse_parameters(rationals(), "(2:1),(1:1),(-1:1)")); }

ProjLine<FieldElement> ln(long a, long b, long c) {
  Field q = rationals();
  return ProjLine<FieldElement>(from_integer(q, a), from_integer(q, b), from_integer(q, c));
}

}  // namespace

TEST(FatpointSpace, LinesThroughAPoint) {
  PointSet p({rp(0, 0, 1)});
  auto basis = fatpoint_space(p, 1, 1);
  EXPECT_EQ(basis.size(), 2u);
  EXPECT_TRUE(same_span(basis, {x(), y()}));
}

TEST(FatpointSpace, ConicsDoubleAtAPoint) {
  PointSet p({rp(0, 0, 1)});
  auto basis = fatpoint_space(p, 2, 2);
  EXPECT_EQ(basis.size(), 3u);
  EXPECT_TRUE(same_span(basis, {x() * x(), x() * y(), y() * y()}));
}

TEST(FatpointSpace, ContainsTheLineProductOfTheTwelveLines) {
  auto res = generic_b12();
  auto ps = points_of_multiplicity_at_least(res.configuration, 3);
  ASSERT_EQ(ps.size(), 19u);
  auto w = line_product_witness(res.configuration);
  EXPECT_EQ(w.form.total_degree(), 12);
  EXPECT_TRUE(w.form.is_homogeneous());
  ASSERT_EQ(w.orders.size(), 19u);
  for (const auto& [idx, order] : w.orders) EXPECT_EQ(order, 3u);
  EXPECT_TRUE(linear_membership(w.form, fatpoint_space(ps, 3, 12)));
}

TEST(FatpointSpace, DimensionsAreMonotone) {
  proptest::Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<RationalPoint> pts;
    while (pts.size() < 5) {
      RationalPoint p{rng.rational(5), rng.rational(5), Rational(1)};
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    PointSet ps(pts);
    for (unsigned m = 1; m <= 2; ++m)
      for (unsigned d = 0; d <= 5; ++d) {
        EXPECT_LE(fatpoint_space(ps, m + 1, d).size(), fatpoint_space(ps, m, d).size());
        EXPECT_LE(fatpoint_space(ps, m, d).size(), fatpoint_space(ps, m, d + 1).size());
      }
    for (unsigned d = 0; d <= 5; ++d) {
      std::size_t forms = (d + 1) * (d + 2) / 2;
      EXPECT_GE(fatpoint_space(ps, 1, d).size() + 5, forms);
    }
  }
}

TEST(VanishingOrder, Examples) {
  EXPECT_EQ(vanishing_order(x() * y(), rp(0, 0, 1)), 2u);
  EXPECT_EQ(vanishing_order(x() * y(), rp(1, 0, 0)), 1u);
  EXPECT_EQ(vanishing_order(x() + y() + z(), rp(1, 1, 1)), 0u);
}

TEST(PointIdeal, SinglePoint) {
  auto pi = point_ideal(PointSet({rp(0, 0, 1)}));
  EXPECT_TRUE(ideal(pi.generators).same_as(ideal({x(), y()})));
}

TEST(PointIdeal, CoordinatePoints) {
  auto pi = point_ideal(coordinate_points());
  EXPECT_TRUE(ideal(pi.generators).same_as(ideal({x() * y(), x() * z(), y() * z()})));
  ASSERT_GT(pi.dims.size(), 2u);
  EXPECT_EQ(pi.dims[2], 3u);
}

TEST(PointIdeal, HilbertFunctionOfNineteenPoints) {
  auto ps = points_of_multiplicity_at_least(generic_b12().configuration, 3);
  auto pi = point_ideal(ps);
  ASSERT_GE(pi.dims.size(), 2u);
  for (std::size_t d = pi.dims.size() - 2; d < pi.dims.size(); ++d) EXPECT_EQ(pi.dims[d], (d + 1) * (d + 2) / 2 - 19);
  for (const auto& g : pi.generators)
    for (const auto& p : ps.points()) EXPECT_GE(vanishing_order(g, p), 1u);
}

TEST(PointIdeal, BoundTooSmall) {
  auto ps = points_of_multiplicity_at_least(generic_b12().configuration, 3);
  EXPECT_ERROR_CODE(symbolic_power(ps, 3, 2), ErrorCode::DegreeBoundTooSmall);
}

TEST(SymbolicPower, FirstPowerIsThePointIdeal) {
  proptest::Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<RationalPoint> pts;
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    while (pts.size() < n) {
      RationalPoint p{rng.rational(4), rng.rational(4), rng.rational(4)};
      if (p[0] == 0 && p[1] == 0 && p[2] == 0) continue;
      try {
        std::vector<RationalPoint> next = pts;
        next.push_back(p);
        PointSet check(next);
        pts = next;
      } catch (const Error&) {
        // Repeated point after scaling.
      }
    }
    PointSet ps(pts);
    EXPECT_TRUE(ideal(symbolic_power(ps, 1).generators).same_as(ideal(point_ideal(ps).generators)));
  }
}

TEST(SymbolicPower, AgreesWithIntersectionOfPowers) {
  proptest::Rng rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<RationalPoint> pts;
    while (pts.size() < 3) {
      RationalPoint p{rng.rational(3), rng.rational(3), Rational(1)};
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    PointSet ps(pts);
    // Oracle: intersect I(p)^2 over the points with polyalg.
    std::optional<QIdeal> acc;
    for (const auto& p : ps.points()) {
      QIdeal ip = ideal(point_ideal(PointSet({p})).generators);
      QIdeal sq = ideal_power(ip, 2);
      acc = acc ? ideal_intersection(*acc, sq) : sq;
    }
    EXPECT_TRUE(ideal(symbolic_power(ps, 2).generators).same_as(*acc));
  }
}

TEST(LineProduct, TriangleAndPencil) {
  Configuration<FieldElement> tri = census(std::vector<ProjLine<FieldElement>>{ln(1, 0, 0), ln(0, 1, 0), ln(0, 0, 1)});
  auto wt = line_product_witness(tri);
  EXPECT_EQ(make_monic(wt.form), make_monic(x() * y() * z()));
  EXPECT_TRUE(wt.orders.empty());
  for (const auto& rec : tri.points) {
    RationalPoint p{rec.point[0].rational(), rec.point[1].rational(), rec.point[2].rational()};
    EXPECT_EQ(vanishing_order(wt.form, p), 2u);
  }
  Configuration<FieldElement> pencil =
      census(std::vector<ProjLine<FieldElement>>{ln(1, 0, 0), ln(0, 1, 0), ln(1, 1, 0)});
  auto wp = line_product_witness(pencil);
  EXPECT_EQ(wp.form.total_degree(), 3);
  ASSERT_EQ(wp.orders.size(), 1u);
  EXPECT_EQ(wp.orders[0].second, 3u);
}

TEST(Containment, CoordinatePointsAreContained) {
  ContainmentOptions opt;
  opt.modular_primes = 3;
  auto v = check_containment(coordinate_points(), opt);
  EXPECT_EQ(v.status, Status::Contained);
  EXPECT_EQ(v.certification, "exact");
  EXPECT_TRUE(v.paths_agree);
}

TEST(Containment, DegenerateD3IsContained) {
  auto ps = points_of_multiplicity_at_least(d3_b12().configuration, 3);
  EXPECT_EQ(ps.size(), 16u);
  ContainmentOptions opt;
  auto v = check_containment(ps, opt);
  EXPECT_EQ(v.status, Status::Contained);
  EXPECT_TRUE(v.exact_completed);
  EXPECT_TRUE(v.paths_agree);
}

TEST(Containment, GenericTwelveLinesAreNotContained) {
  auto res = generic_b12();
  auto ps = points_of_multiplicity_at_least(res.configuration, 3);
  auto w = line_product_witness(res.configuration);
  ContainmentOptions opt;
  opt.witness = w.form;
  auto v = check_containment(ps, opt);
  EXPECT_EQ(v.status, Status::NotContained);
  EXPECT_EQ(v.certification, "exact");
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, w.form);
  EXPECT_TRUE(v.witness_multiplicity_verified);
  EXPECT_GE(v.primes().size(), 3u);
  EXPECT_TRUE(v.paths_agree);
}

TEST(Containment, WithoutWitnessTheSymbolicGeneratorsSuffice) {
  auto ps = points_of_multiplicity_at_least(generic_b12().configuration, 3);
  auto v = check_containment(ps, ContainmentOptions{});
  EXPECT_EQ(v.status, Status::NotContained);
  ASSERT_TRUE(v.witness.has_value());
  for (const auto& p : ps.points()) EXPECT_GE(vanishing_order(*v.witness, p), 3u);
}

TEST(Containment, ModularPathAloneStaysInconclusive) {
  auto res = generic_b12();
  auto ps = points_of_multiplicity_at_least(res.configuration, 3);
  ContainmentOptions opt;
  opt.exact = false;
  opt.witness = line_product_witness(res.configuration).form;
  auto v = check_containment(ps, opt);
  EXPECT_EQ(v.status, Status::Inconclusive);
  EXPECT_EQ(v.certification, "modular-certified");
  EXPECT_FALSE(v.exact_completed);
}

TEST(Containment, InvalidExponents) {
  ContainmentOptions opt;
  opt.r = 0;
  EXPECT_ERROR_CODE(check_containment(coordinate_points(), opt), ErrorCode::ParameterInvalid);
}

TEST(Primes, DistinctAndInRange) {
  auto ps = random_primes(5, 42);
  EXPECT_EQ(ps, random_primes(5, 42));
  std::set<std::uint64_t> uniq(ps.begin(), ps.end());
  EXPECT_EQ(uniq.size(), 5u);
  for (auto p : ps) {
    EXPECT_GT(p, std::uint64_t{1} << 30);
    EXPECT_LT(p, std::uint64_t{1} << 31);
    EXPECT_TRUE(is_probable_prime(Integer(static_cast<unsigned long>(p))));
  }
}
