#include <gtest/gtest.h>

#include "boroczky/boroczky.hpp"
#include "expect_error.hpp"
#include "random.hpp"

using namespace boroczky;

namespace {

QRing xyz() { return make_ring(RationalField{}, {"x", "y", "z"}); }
QRing ab() { return make_ring(RationalField{}, {"a", "b"}); }

QPoly P(const QRing& r, const char* text) { return parse_poly(r, text); }

const char* kF = "a^4*b - a^2*b^2 - a^3 + a^2*b - a*b^2 + b^2";

// Leading monomials of a basis, for comparing bases across coefficient domains.
template <class D>
std::vector<Monomial> leading_monomials(const std::vector<Poly<D>>& gb) {
  std::vector<Monomial> out;
  for (const auto& g : gb) out.push_back(g.lead_monomial());
  return out;
}

}  // namespace

TEST(Divide, ByItself) {
  auto r = ab();
  QPoly f = P(r, kF);
  auto res = divide(f, {f});
  EXPECT_EQ(res.quotients[0], QPoly::from_integer(r, 1));
  EXPECT_TRUE(res.remainder.is_zero());
}

TEST(Divide, StripsSquaredFactorTwice) {
  auto r = ab();
  QPoly f = P(r, kF), am1 = P(r, "a - 1");
  QPoly g = am1 * am1 * f;
  auto once = divide(g, {am1});
  EXPECT_TRUE(once.remainder.is_zero());
  EXPECT_EQ(once.quotients[0], am1 * f);
  auto twice = divide(once.quotients[0], {am1});
  EXPECT_TRUE(twice.remainder.is_zero());
  EXPECT_EQ(twice.quotients[0], f);
}

TEST(Divide, LexRemainderIsCube) {
  auto r = make_ring(RationalField{}, {"x", "y"}, MonomialOrder::lex());
  // Modulo x - y every x becomes y, so x^2 y leaves y^3.
  auto res = divide(P(r, "x^2*y"), {P(r, "x - y")});
  EXPECT_EQ(res.remainder, P(r, "y^3"));
  EXPECT_EQ(res.quotients[0] * P(r, "x - y") + res.remainder, P(r, "x^2*y"));
}

TEST(Divide, MixedRingsThrow) {
  EXPECT_ERROR_CODE(divide(P(xyz(), "x"), {P(ab(), "a")}), ErrorCode::RingMismatch);
}

TEST(Divide, ZeroDivisorThrows) {
  auto r = xyz();
  EXPECT_ERROR_CODE(divide(P(r, "x"), {QPoly(r)}), ErrorCode::ZeroDivisor);
}

TEST(Gcd, OfSquare) {
  auto r = ab();
  QPoly f = P(r, kF);
  EXPECT_EQ(gcd(f, f * f), make_monic(f));
}

TEST(Gcd, PlantedCommonFactor) {
  auto r = ab();
  QPoly planted = P(r, "(a - 1)^2") * P(r, kF);
  QPoly g1 = P(r, "a*b + 3"), g2 = P(r, "b^2 - 2*a + 1");
  QPoly g = gcd(planted * g1, planted * g2);
  EXPECT_EQ(g, make_monic(planted));
  EXPECT_TRUE(exact_divide(planted * g1, g).has_value());
  EXPECT_TRUE(exact_divide(planted * g2, g).has_value());
}

TEST(Gcd, DifferenceOfSquares) {
  auto r = ab();
  EXPECT_EQ(gcd(P(r, "a^2 - b^2"), P(r, "a - b")), P(r, "a - b"));
}

TEST(Gcd, ZeroInputThrows) {
  auto r = ab();
  EXPECT_ERROR_CODE(gcd(QPoly(r), QPoly(r)), ErrorCode::ZeroInput);
}

TEST(Gcd, LcmQuotientIsExactBothWays) {
  proptest::Rng rng(3);
  auto r = make_ring(RationalField{}, {"x", "y"});
  for (int i = 0; i < 30; ++i) {
    QPoly f = rng.poly(r, 3, 3), g = rng.poly(r, 3, 3), h = rng.poly(r, 2, 2);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    f = f * h;
    g = g * h;
    QPoly d = gcd(f, g);
    ASSERT_TRUE(exact_divide(f, d).has_value());
    ASSERT_TRUE(exact_divide(g, d).has_value());
    QPoly lcm = divide_exactly(f * g, d);
    EXPECT_TRUE(divide(lcm, {f}).remainder.is_zero());
    EXPECT_TRUE(divide(lcm, {g}).remainder.is_zero());
    EXPECT_TRUE(exact_divide(d, make_monic(h)).has_value());
  }
}

TEST(Resultant, LinearPair) {
  auto r = make_ring(RationalField{}, {"x"});
  // Oracle: the Sylvester matrix [[1, -1], [1, 1]] has determinant 2.
  EXPECT_EQ(resultant(P(r, "x - 1"), P(r, "x + 1"), 0), QPoly::from_integer(r, 2));
}

TEST(Resultant, WithDerivativeIsDiscriminantMultiple) {
  auto r = ab();
  QPoly f = P(r, kF);
  QPoly res = resultant(f, f.derivative(1), 1);
  // Oracle: f = A b^2 + B b + C; the Sylvester matrix of f and 2A b + B is
  // [[A, B, C], [2A, B, 0], [0, 2A, B]] with determinant -A (B^2 - 4AC).
  QPoly A = P(r, "1 - a - a^2"), B = P(r, "a^4 + a^2"), C = P(r, "-a^3");
  QPoly disc = B * B - QPoly::from_integer(r, 4) * A * C;
  EXPECT_EQ(res, -(A * disc));
  EXPECT_EQ(disc, P(r, "(a^4 + a^2)^2 - 4*a^3*(a^2 + a - 1)"));
  EXPECT_FALSE(res.involves(1));
}

TEST(Resultant, CommonFactorGivesZero) {
  auto r = ab();
  QPoly f = P(r, kF);
  EXPECT_TRUE(resultant(f, P(r, "a*b - 2") * f, 1).is_zero());
}

TEST(Resultant, AbsentVariableThrows) {
  auto r = ab();
  EXPECT_ERROR_CODE(resultant(P(r, "a + 1"), P(r, "b"), 1), ErrorCode::VariableAbsent);
}

TEST(Buchberger, PrincipalIdeal) {
  auto r = ab();
  QPoly f = P(r, kF);
  auto gb = buchberger({f.scaled(Rational(-3))}, r);
  ASSERT_EQ(gb.size(), 1u);
  EXPECT_EQ(gb[0], make_monic(f));
}

TEST(Buchberger, MonomialIdealIsItsOwnBasis) {
  auto r = xyz();
  std::vector<QPoly> gens{P(r, "x^2"), P(r, "x*y"), P(r, "y^2")};
  auto gb = buchberger(gens, r);
  ASSERT_EQ(gb.size(), 3u);
  for (const auto& g : gens) EXPECT_NE(std::find(gb.begin(), gb.end(), g), gb.end());
}

TEST(Buchberger, EveryGeneratorReducesToZero) {
  auto r = xyz();
  std::vector<QPoly> gens{P(r, "x^2 - y*z"), P(r, "x*y - z^2"), P(r, "y^3 - x*z^2")};
  auto gb = buchberger(gens, r);
  for (const auto& g : gens) EXPECT_TRUE(normal_form(g, gb).is_zero());
  EXPECT_EQ(buchberger(gb, r), gb);
}

TEST(Buchberger, StepBudgetIsReported) {
  auto r = xyz();
  GroebnerOptions opts;
  opts.step_budget = 3;
  EXPECT_ERROR_CODE(buchberger({P(r, "x^2 - y*z + 1"), P(r, "x*y - z^2 + 2"), P(r, "y^3 - x*z^2 + 3")}, r, opts),
                    ErrorCode::ResourceExceeded);
}

TEST(Buchberger, PrimeFieldLeadingTermsAgreeWithRationals) {
  proptest::Rng rng(17);
  auto r = xyz();
  for (std::uint64_t p : {1000003ull, 1073741827ull, 2147483647ull}) {
    auto fr = make_ring(PrimeField64(p), {"x", "y", "z"});
    for (int i = 0; i < 10; ++i) {
      std::vector<QPoly> gens;
      std::vector<FpPoly> fgens;
      for (int j = 0; j < 3; ++j) {
        // Unit leading coefficients keep small primes away from bad reduction.
        QPoly g = rng.poly(r, 3, 2);
        if (g.is_zero()) continue;
        g = make_monic(g);
        gens.push_back(g);
        fgens.push_back(reduce_mod_p(g, fr));
      }
      auto gb = buchberger(gens, r);
      bool denominators_ok = true;
      for (const auto& g : gb)
        for (const auto& t : g.terms()) denominators_ok = denominators_ok && t.c.get_den() % p != 0;
      if (!denominators_ok) continue;
      EXPECT_EQ(leading_monomials(buchberger(fgens, fr)), leading_monomials(gb));
    }
  }
}

TEST(Membership, GeneratorsAndUnit) {
  auto r = xyz();
  QIdeal i(r, {P(r, "x"), P(r, "y")});
  EXPECT_TRUE(i.contains(P(r, "x")));
  EXPECT_TRUE(i.contains(P(r, "x*z + 3*y^2")));
  EXPECT_FALSE(i.contains(QPoly::from_integer(r, 1)));
  EXPECT_FALSE(i.contains(P(r, "z")));
}

TEST(Membership, SameAsIsAnEquivalence) {
  auto r = xyz();
  QIdeal i(r, {P(r, "x"), P(r, "y")}), j(r, {P(r, "x + y"), P(r, "x - y")}), k(r, {P(r, "y"), P(r, "x + 2*y")});
  EXPECT_TRUE(i.same_as(i));
  EXPECT_TRUE(i.same_as(j) && j.same_as(i));
  EXPECT_TRUE(j.same_as(k) && i.same_as(k));
  EXPECT_FALSE(i.same_as(QIdeal(r, {P(r, "x")})));
}

TEST(Intersection, OfCoordinateHyperplanes) {
  auto r = xyz();
  QIdeal i = ideal_intersection(QIdeal(r, {P(r, "x")}), QIdeal(r, {P(r, "y")}));
  EXPECT_TRUE(i.same_as(QIdeal(r, {P(r, "x*y")})));
}

TEST(Intersection, WithItself) {
  auto r = xyz();
  QIdeal i(r, {P(r, "x^2 - y*z"), P(r, "x*y")});
  EXPECT_TRUE(ideal_intersection(i, i).same_as(i));
}

TEST(Intersection, FatPointsAgreeWithInterpolation) {
  auto r = containment::xyz_ring();
  using containment::PointSet;
  // I(p)^3 ∩ I(q)^3 for p = (1:0:0), q = (0:1:0).
  QIdeal ip(r, {P(r, "y"), P(r, "z")}), iq(r, {P(r, "x"), P(r, "z")});
  QIdeal both = ideal_intersection(ideal_power(ip, 3), ideal_power(iq, 3));
  PointSet ps({{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)}});
  for (const auto& g : both.generators()) {
    EXPECT_TRUE(g.is_homogeneous());
    for (const auto& p : ps.points()) EXPECT_GE(containment::vanishing_order(g, p), 3u);
  }
  for (unsigned d = 3; d <= 7; ++d)
    for (const auto& f : containment::fatpoint_space(ps, 3, d)) EXPECT_TRUE(both.contains(f)) << to_string(f);
}

TEST(Intersection, SymbolicSquareOfTwoPointsMatchesInterpolation) {
  auto r = containment::xyz_ring();
  using containment::PointSet;
  // (x, y)^2 ∩ (y, z)^2: the points (0:0:1) and (1:0:0) with multiplicity 2.
  QIdeal i = ideal_intersection(QIdeal(r, {P(r, "x^2"), P(r, "x*y"), P(r, "y^2")}),
                                QIdeal(r, {P(r, "y^2"), P(r, "y*z"), P(r, "z^2")}));
  PointSet ps({{Rational(0), Rational(0), Rational(1)}, {Rational(1), Rational(0), Rational(0)}});
  auto sym = containment::symbolic_power(ps, 2);
  EXPECT_TRUE(i.same_as(QIdeal(r, sym.generators)));
}

TEST(Product, WithUnitAndSquare) {
  auto r = xyz();
  QIdeal i(r, {P(r, "x"), P(r, "y")});
  EXPECT_TRUE(ideal_product(i, QIdeal::unit(r)).same_as(i));
  QIdeal sq = ideal_power(i, 2);
  std::vector<QPoly> expected{P(r, "x^2"), P(r, "x*y"), P(r, "y^2")};
  EXPECT_EQ(sq.generators().size(), 3u);
  for (const auto& g : expected)
    EXPECT_NE(std::find(sq.generators().begin(), sq.generators().end(), g), sq.generators().end());
}

TEST(Product, SquareOfTripleCoordinateIdealDegrees) {
  auto r = xyz();
  QIdeal i(r, {P(r, "x*y"), P(r, "x*z"), P(r, "y*z")});
  for (const auto& g : ideal_power(i, 2).generators()) EXPECT_EQ(g.total_degree(), 4);
}

TEST(Eliminate, TwistedCubicProjection) {
  auto r = make_ring(RationalField{}, {"t", "x", "y"});
  QIdeal i(r, {P(r, "x - t^2"), P(r, "y - t^3")});
  auto out = eliminate(i, 1);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(make_monic(out[0]), make_monic(P(r, "x^3 - y^2")));
}
