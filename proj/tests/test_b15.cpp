#include <gtest/gtest.h>

#include "boroczky/boroczky.hpp"
#include "expect_error.hpp"

using namespace boroczky;

namespace {

QPoly var(std::size_t i) { return QPoly::variable(b15::ab_ring(), i); }

QPoly constant(long c) { return QPoly::from_integer(b15::ab_ring(), c); }

Rational eval(const QPoly& p, long a, long b) { return p.evaluate({Rational(a), Rational(b)}); }

b15::B15Parameters first_params(const Rational& a) {
  auto sol = b15::solve_b(a);
  if (sol.params.empty()) throw std::runtime_error("no valid b for a = " + a.get_str());
  return sol.params.front();
}

}  // namespace

TEST(ConditionPolynomials, EightOfThem) {
  EXPECT_EQ(b15::condition_polynomials().size(), 8u);
}

TEST(ConditionPolynomials, VanishAtMinusOneMinusOne) {
  // f(-1, b) = (b + 1)^2, so (-1, -1) lies on f.
  EXPECT_EQ(eval(b15::f_polynomial(), -1, -1), 0);
  for (const auto& p : b15::condition_polynomials()) EXPECT_EQ(eval(p, -1, -1), 0) << to_string(p);
}

TEST(ConditionPolynomials, NotAllVanishOffTheCurve) {
  // f(2, 1) = 16 - 4 - 8 + 4 - 2 + 1 = 7.
  EXPECT_EQ(eval(b15::f_polynomial(), 2, 1), 7);
  bool some_nonzero = false;
  for (const auto& p : b15::condition_polynomials()) some_nonzero = some_nonzero || eval(p, 2, 1) != 0;
  EXPECT_TRUE(some_nonzero);
}

TEST(ConditionPolynomials, EachIsAMultipleOfFAfterStripping) {
  for (const auto& p : b15::condition_polynomials()) {
    auto s = b15::strip_excluded(p);
    EXPECT_TRUE(s.divisible_by_f) << to_string(p);
    for (const auto& [name, e] : s.stripped) {
      const auto& names = b15::excluded_factors();
      EXPECT_TRUE(std::any_of(names.begin(), names.end(), [&](const auto& x) { return x.first == name; }));
      EXPECT_GT(e, 0u);
    }
  }
}

TEST(ConditionPolynomials, ReduceToZeroInTheQuotientField) {
  auto gp = b15::generic_parameters();
  auto rep = b15::verify_facts(gp.a(), gp.b());
  for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(rep.conditions[i]) << b15::conditions()[i].to_string();
}

TEST(ConditionIdeal, GeneratorIsASquareOfAMinusOneTimesF) {
  QPoly g = b15::derive_condition_ideal();
  QPoly a1 = var(0) - constant(1);
  QPoly once = divide_exactly(g, a1);
  QPoly twice = divide_exactly(once, a1);
  EXPECT_EQ(make_monic(twice), make_monic(b15::f_polynomial()));
  EXPECT_FALSE(exact_divide(twice, a1).has_value());
  EXPECT_EQ(eval(g, -1, -1), 0);
}

TEST(ConditionIdeal, GcdIsDivisibleByF) {
  auto ps = b15::condition_polynomials();
  QPoly g = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) g = gcd(g, ps[i]);
  EXPECT_TRUE(exact_divide(g, b15::f_polynomial()).has_value()) << to_string(g);
}

TEST(ConditionIdeal, FactsHoldWithoutF) {
  auto rep = b15::verify_polynomial_identities();
  EXPECT_TRUE(rep.facts[0]);
  EXPECT_TRUE(rep.facts[1]);
  EXPECT_TRUE(rep.facts[2]);
  EXPECT_TRUE(rep.mismatches.empty());
  bool some_condition_fails = false;
  for (bool c : rep.conditions) some_condition_fails = some_condition_fails || !c;
  EXPECT_TRUE(some_condition_fails);
}

TEST(ConditionIdeal, SecondFactImposesNothing) {
  auto pts = b15::closed_points(var(0), var(1));
  QPoly d = b15::incidence_determinant(pts, b15::facts()[1]);
  auto s = b15::strip_excluded(d);
  EXPECT_TRUE(s.remainder.is_zero());
}

TEST(SolveB, TwoConjugateRootsAtTwo) {
  auto sol = b15::solve_b(Rational(2));
  EXPECT_EQ(sol.discriminant, 240);
  EXPECT_EQ(to_string(sol.field), "QQ[sqrt(15)]");
  ASSERT_EQ(sol.params.size(), 2u);
  EXPECT_TRUE(sol.rejected.empty());
  Field k = sol.field;
  std::set<std::string> roots{to_string(sol.params[0].b()), to_string(sol.params[1].b())};
  EXPECT_EQ(roots, (std::set<std::string>{to_string(parse_element(k, "2 + 2/5*sqrt(15)")),
                                          to_string(parse_element(k, "2 - 2/5*sqrt(15)"))}));
  for (const auto& p : sol.params) EXPECT_TRUE(b15::f_value(p.a(), p.b()).is_zero());
}

TEST(SolveB, DoubleRootAtMinusOneIsRejected) {
  auto sol = b15::solve_b(Rational(-1));
  EXPECT_EQ(sol.discriminant, 0);
  EXPECT_TRUE(sol.params.empty());
  ASSERT_EQ(sol.rejected.size(), 1u);
  EXPECT_EQ(sol.rejected[0].first, from_integer(rationals(), -1));
  EXPECT_EQ(sol.rejected[0].second, "b = -1 = a forbidden");
}

TEST(SolveB, ForbiddenA) {
  EXPECT_ERROR_CODE(b15::solve_b(Rational(1)), ErrorCode::ForbiddenA);
  EXPECT_ERROR_CODE(b15::solve_b(Rational(0)), ErrorCode::ForbiddenA);
}

TEST(Parameters, InvalidPairsRejected) {
  Field q = rationals();
  EXPECT_ERROR_CODE(b15::B15Parameters(from_integer(q, 2), from_integer(q, 3)), ErrorCode::ParameterInvalid);
  EXPECT_ERROR_CODE(b15::B15Parameters(from_integer(q, -1), from_integer(q, -1)), ErrorCode::ParameterInvalid);
}

TEST(AttemptRational, Explanations) {
  auto two = b15::attempt_rational(Rational(2));
  EXPECT_FALSE(two.valid_pair);
  EXPECT_EQ(two.explanation, "discriminant 240 not a rational square");
  auto minus_one = b15::attempt_rational(Rational(-1));
  EXPECT_FALSE(minus_one.valid_pair);
  EXPECT_EQ(minus_one.explanation, "b = -1 = a forbidden");
  auto zero = b15::attempt_rational(Rational(0));
  EXPECT_FALSE(zero.valid_pair);
  EXPECT_EQ(zero.explanation, "a forbidden");
}

TEST(AttemptRational, NoValidPairOnASample) {
  for (long p = -12; p <= 12; ++p)
    for (long q = 1; q <= 6; ++q) EXPECT_FALSE(b15::attempt_rational(Rational(p, q)).valid_pair) << p << "/" << q;
}

TEST(Build, CensusAtTwo) {
  auto res = b15::build(first_params(Rational(2)));
  EXPECT_EQ(res.configuration.lines.size(), 15u);
  EXPECT_EQ(res.configuration.census, (std::map<std::size_t, std::size_t>{{2, 12}, {3, 31}}));
  EXPECT_TRUE(res.census_notes.empty());
  EXPECT_TRUE(res.facts.all_hold());
  EXPECT_EQ(res.point_labels.size(), 31u);
  for (const auto& [name, idx] : res.point_labels) EXPECT_EQ(res.configuration.points[idx].multiplicity(), 3u) << name;
}

TEST(Build, SixAndSeven) {
  auto params = first_params(Rational(2));
  auto res = b15::build(params);
  Field k = params.field();
  auto p6 = res.configuration.points[res.point_labels.at("P6")].point;
  auto p7 = res.configuration.points[res.point_labels.at("P7")].point;
  EXPECT_EQ(p6, ProjPoint<FieldElement>(params.a(), one(k), one(k)));
  EXPECT_EQ(p7, ProjPoint<FieldElement>(one(k), params.a(), one(k)));
}

TEST(Build, BothRootsAtSeveralA) {
  for (const char* a : {"2", "3", "-2", "1/2", "5/3"}) {
    auto sol = b15::solve_b(parse_element(rationals(), a).rational());
    ASSERT_FALSE(sol.params.empty()) << a;
    for (const auto& p : sol.params) {
      auto res = b15::build(p);
      EXPECT_TRUE(res.facts.all_hold()) << a;
      EXPECT_TRUE(res.facts.mismatches.empty()) << a;
      EXPECT_EQ(res.configuration.lines.size(), 15u) << a;
      for (const auto& [name, idx] : res.point_labels)
        EXPECT_EQ(res.configuration.points[idx].multiplicity(), 3u) << a << " " << name;
    }
  }
}

TEST(Build, SymbolicOverQuotientField) {
  auto res = b15::build(b15::generic_parameters());
  EXPECT_TRUE(res.facts.all_hold());
  EXPECT_EQ(res.configuration.census, (std::map<std::size_t, std::size_t>{{2, 12}, {3, 31}}));
}
