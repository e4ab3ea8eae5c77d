#include <gtest/gtest.h>

#include "boroczky/boroczky.hpp"
#include "expect_error.hpp"

using namespace boroczky;

namespace {

FieldElement q(const char* text) { return parse_element(rationals(), text); }

}  // namespace

TEST(Rationals, AddsInLowestTerms) {
  FieldElement x = q("2/3") + q("1/6");
  EXPECT_EQ(x.rational(), Rational(5, 6));
  EXPECT_EQ(to_string(x), "5/6");
}

TEST(Rationals, DivisionByZeroThrows) {
  EXPECT_ERROR_CODE(q("1") / q("0"), ErrorCode::DivisionByZero);
  EXPECT_ERROR_CODE(inverse(q("0")), ErrorCode::DivisionByZero);
}

TEST(Rationals, MixedFieldsThrow) {
  Field f7 = prime_field(7);
  EXPECT_ERROR_CODE(q("1") + one(f7), ErrorCode::DescriptorMismatch);
}

TEST(QuadraticExtension, ConjugateProduct) {
  Field k = parse_field("QQ[sqrt(15)]");
  FieldElement b = parse_element(k, "2 + 2/5*sqrt(15)");
  FieldElement bbar = parse_element(k, "2 - 2/5*sqrt(15)");
  // Oracle: (u + v s)(u - v s) = u^2 - v^2 d with u = 2, v = 2/5, d = 15.
  Rational u(2), v(2, 5);
  Rational expected = u * u - v * v * 15;
  // Also the product of the roots of -5b^2 + 20b - 8, i.e. -8 / -5.
  EXPECT_EQ(expected, Rational(8, 5));
  EXPECT_EQ(b * bbar, from_rational(k, expected));
}

TEST(QuadraticExtension, RadicandIsSquareFreeNormalized) {
  Field k240 = quadratic_extension(rationals(), q("240"));
  Field k15 = quadratic_extension(rationals(), q("15"));
  EXPECT_TRUE(same_field(k240, k15));
  EXPECT_EQ(to_string(k240), "QQ[sqrt(15)]");
  // sqrt(240) = 4 sqrt(15).
  EXPECT_EQ(sqrt_in(k15, q("240")), from_integer(k15, 4) * generator(k15));
}

TEST(QuadraticExtension, SquareRadicandRejected) {
  EXPECT_ERROR_CODE(quadratic_extension(rationals(), q("9/4")), ErrorCode::InvalidDescriptor);
  EXPECT_ERROR_CODE(parse_field("GF(13)[sqrt(10)]"), ErrorCode::InvalidDescriptor);
}

TEST(PrimeField, Division) {
  Field f7 = prime_field(7);
  FieldElement x = from_integer(f7, 3) / from_integer(f7, 5);
  EXPECT_EQ(x.residue(), 2u);
  EXPECT_EQ(x * from_integer(f7, 5), from_integer(f7, 3));
}

TEST(PrimeField, CompositeModulusRejected) {
  EXPECT_ERROR_CODE(prime_field(91), ErrorCode::InvalidDescriptor);
}

TEST(PrimeField, ResiduesAreCanonical) {
  Field f7 = prime_field(7);
  EXPECT_EQ(from_integer(f7, -1).residue(), 6u);
  EXPECT_EQ(from_integer(f7, 14), zero(f7));
}

TEST(IsSquare, Rationals) {
  EXPECT_FALSE(is_square(q("240")).has_value());
  auto r = is_square(q("9/4"));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, q("3/2"));
  EXPECT_FALSE(is_square(q("-4")).has_value());
}

TEST(IsSquare, PrimeFieldAgreesWithExhaustiveSearch) {
  Field f13 = prime_field(13);
  auto r = is_square(from_integer(f13, 10));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r * *r, from_integer(f13, 10));
  for (int n = 0; n < 13; ++n) {
    bool oracle = false;
    for (int s = 0; s < 13; ++s) oracle = oracle || (s * s) % 13 == n;
    EXPECT_EQ(is_square(from_integer(f13, n)).has_value(), oracle) << n;
  }
  // The root of 10 is 6 or 7; 6 * 6 = 36 = 10 mod 13.
  EXPECT_TRUE(r->residue() == 6 || r->residue() == 7);
}

TEST(IsSquare, UnsupportedKinds) {
  Field k = parse_field("QQ[sqrt(15)]");
  EXPECT_ERROR_CODE(is_square(generator(k)), ErrorCode::UnsupportedField);
}

TEST(FunctionField, CanonicalFractions) {
  Field k = parse_field("QQ(t)");
  FieldElement t = generator(k);
  FieldElement x = (t * t - one(k)) / (from_integer(k, 2) * t - from_integer(k, 2));
  // (t^2 - 1) / (2t - 2) = (t + 1) / 2.
  EXPECT_EQ(x, (t + one(k)) / from_integer(k, 2));
  EXPECT_EQ(parse_element(k, to_string(x)), x);
}

TEST(QuotientExtension, SelfReductionIsZero) {
  Field k = parse_field("QQ[u]/(u^3 - 2)");
  EXPECT_TRUE(reduce_in_quotient(k->defining, k).is_zero());
  FieldElement u = generator(k);
  EXPECT_EQ(u * u * u, from_integer(k, 2));
}

TEST(QuotientExtension, LowDegreeInputIsUnchanged) {
  Field k = parse_field("QQ[u]/(u^3 - 2)");
  Coeffs c{q("1"), q("-3/2"), q("5")};
  FieldElement x = reduce_in_quotient(c, k);
  EXPECT_EQ(x.coeffs(), c);
}

TEST(QuotientExtension, CubeOfRootOverRationalFunctions) {
  Field k = parse_field("QQ(a)[b]/(a^4*b - a^2*b^2 - a^3 + a^2*b - a*b^2 + b^2)");
  Field qa = k->base;
  FieldElement a = generator(qa);
  // Oracle: f = A b^2 + B b + C as a quadratic in b, so
  // b^3 = b (B^2 - A C) / A^2 + B C / A^2 after two division steps.
  FieldElement A = one(qa) - a - a * a, B = pow(a, 4) + a * a, C = -pow(a, 3);
  FieldElement lin = (B * B - A * C) / (A * A), cst = B * C / (A * A);
  Coeffs b3{zero(qa), zero(qa), zero(qa), one(qa)};
  FieldElement r = reduce_in_quotient(b3, k);
  ASSERT_EQ(r.coeffs().size(), 2u);
  EXPECT_EQ(r.coeffs()[0], cst);
  EXPECT_EQ(r.coeffs()[1], lin);
  FieldElement b = generator(k);
  EXPECT_EQ(b * b * b, r);
}

TEST(QuotientExtension, ReducibleDefiningPolynomialRejected) {
  EXPECT_ERROR_CODE(parse_field("QQ[u]/(u^2 - 4)"), ErrorCode::InvalidDescriptor);
  EXPECT_ERROR_CODE(parse_field("QQ[u]/(u^3 - 8)"), ErrorCode::InvalidDescriptor);
  EXPECT_ERROR_CODE(parse_field("QQ[u]/(u - 1)"), ErrorCode::InvalidDescriptor);
}

TEST(QuotientExtension, WrongKindThrows) {
  EXPECT_ERROR_CODE(reduce_in_quotient(Coeffs{q("1")}, rationals()), ErrorCode::DescriptorMismatch);
}

TEST(TextForm, RoundTripsEveryKind) {
  for (const char* desc : {"QQ", "GF(7)", "QQ[sqrt(15)]", "QQ(t)", "QQ[u]/(u^3 - 2)", "GF(13)[sqrt(2)]"}) {
    Field k = parse_field(desc);
    EXPECT_EQ(to_string(k), desc);
    EXPECT_TRUE(same_field(parse_field(to_string(k)), k));
  }
  Field k = parse_field("QQ[sqrt(15)]");
  EXPECT_EQ(to_string(parse_element(k, "2 - 2/5*sqrt(15)")), "2 - 2/5*sqrt(15)");
}

TEST(TextForm, MalformedInputThrows) {
  EXPECT_ERROR_CODE(parse_element(rationals(), "1/"), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(parse_field("QQ[sqrt(15)"), ErrorCode::ParseError);
}
