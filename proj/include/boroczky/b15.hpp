#pragma once

// The 15-line arrangement with 31 triple points P1, ..., P31 over a field
// containing parameters a, b with f(a, b) = 0, where
//   f = a^4 b - a^2 b^2 - a^3 + a^2 b - a b^2 + b^2.
//
// Frame: P1 = (1:0:0), P2 = (0:1:0), P3 = (0:0:1), P4 = (1:1:1), then
// P5 = (a:a:1) and P15 = (b:b:1) on P3P4.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyalg.hpp"
#include "projgeom.hpp"
#include "scalar_parse.hpp"

namespace boroczky::b15 {

template <class S>
using Triple = std::array<S, 3>;

inline const std::vector<std::string>& line_names() {
  static const std::vector<std::string> names{"P1P4", "P2P4",   "P3P4",   "P1P5",   "P2P5",
                                              "P3P6", "P3P7",   "P2P8",   "P1P9",   "P14P15",
                                              "P13P15", "P11P16", "P12P17", "P18P20", "P19P21"};
  return names;
}

inline std::string point_name(std::size_t i) { return "P" + std::to_string(i); }

/// f(a, b) over any scalar type with ring operations.
template <class S>
S f_value(const S& a, const S& b) {
  S a2 = a * a;
  return a2 * a2 * b - a2 * b * b - a2 * a + a2 * b - a * b * b + b * b;
}

/// Closed-form coordinates of P1, ..., P31 (index 0 is P1).
template <class S>
std::vector<Triple<S>> closed_points(const S& a, const S& b) {
  const S o = ScalarTraits<S>::constant(a, 1);
  const S z = ScalarTraits<S>::constant(a, 0);
  const S two = ScalarTraits<S>::constant(a, 2);
  const S a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a, a6 = a5 * a, a7 = a6 * a;
  const S ab = a * b, a2b = a2 * b, a3b = a3 * b, a4b = a4 * b, a5b = a5 * b, a6b = a6 * b;
  const S u = -a5b + a4b + a4 - a3;                      // shared by P18, P19
  const S v = -a3b + a3 - a2 + two * ab - b;             // shared by P18, P19
  const S w = a3b - a2b - ab + b;                        // P22, P23, P24
  const S t = -a6b + a5b + a5 - a4 - a3 + a2b + a2 - ab;  // P23, P24
  const S x25 = a5 - a4b - two * a4 + two * a3b + a3 - a2b;
  const S y = -a3 + a2b + a2 - ab;                       // P26, P27
  const S g = a5b - a4b - a4 - a3b + a3 + a2b + ab - b;  // P26, P27
  return {
      {o, z, z},
      {z, o, z},
      {z, z, o},
      {o, o, o},
      {a, a, o},
      {a, o, o},
      {o, a, o},
      {o, a, a},
      {a, o, a},
      {o, o, a},
      {o, a, a2},
      {a, o, a2},
      {a, a2, o},
      {a2, a, o},
      {b, b, o},
      {a - b, -a3b + a2b + a2 - b, a2 - ab},
      {a3b - a2b - a2 + b, -a + b, -a2 + ab},
      {v, u, u},
      {u, v, u},
      {o, a2, a},
      {a2, o, a},
      {w, w, a5b - a4b - a4 + two * a3 - a2b - a2 + ab},
      {-w, -a4b + a3b + a2b - ab, t},
      {-a4b + a3b + a2b - ab, -w, t},
      {x25, x25, -a7 * b + two * a6b + a6 - two * a5 - two * a4b + a4 + two * a2b - ab},
      {y, g, y},
      {g, y, y},
      {a3 - ab, a2b + a2 - two * ab, a2 - b},
      {a2b + a2 - two * ab, a3 - ab, a2 - b},
      {a - b, -a2b + a2 + ab - b, a - b},
      {-a2b + a2 + ab - b, a - b, a - b},
  };
}

/// Closed-form equations of the 15 lines in line_names() order. The two
/// lines P18P20 and P19P21 are given with the common factor a (a - 1)^2
/// of the cross product removed.
template <class S>
std::vector<Triple<S>> closed_lines(const S& a, const S& b) {
  const S o = ScalarTraits<S>::constant(a, 1);
  const S z = ScalarTraits<S>::constant(a, 0);
  const S a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
  const S ab = a * b, a2b = a2 * b, a3b = a3 * b, a4b = a4 * b, a5b = a5 * b;
  const S p = -a5b + a4b + a4 - a3;
  const S q = -a3 + a2b + a2 - ab;
  const S r = a3b - a2b - ab + b;
  const S s = a3 * (ab - o);
  const S t = b * (a2 - o);
  const S m = a * (a - b);
  return {
      {z, -o, o},
      {o, z, -o},
      {-o, o, z},
      {z, -o, a},
      {o, z, -a},
      {-o, a, z},
      {a, -o, z},
      {a, z, -o},
      {z, -a, o},
      {-a + b, a2 - b, -a2b + ab},
      {-a2 + b, a - b, a2b - ab},
      {p, q, r},
      {q, p, r},
      {s, -t, m},
      {t, -s, -m},
  };
}

/// P1, ..., P31 and the 15 lines built by joins and meets from the frame,
/// P5 and P15. Entries may be missing when a step degenerates.
template <class S>
struct Constructed {
  std::map<std::size_t, ProjPoint<S>> points;
  std::map<std::string, ProjLine<S>> lines;
};

template <class S>
Constructed<S> construct(const S& a, const S& b) {
  Constructed<S> out;
  auto base = closed_points(a, b);
  for (std::size_t i : {1, 2, 3, 4, 5, 15})
    if (!detail::all_zero(base[i - 1])) out.points.emplace(i, ProjPoint<S>(base[i - 1], point_name(i)));
  auto line = [&](std::size_t i, std::size_t j) {
    auto pi = out.points.find(i), pj = out.points.find(j);
    if (pi == out.points.end() || pj == out.points.end()) return;
    std::string name = point_name(i) + point_name(j);
    try {
      out.lines.emplace(name, join(pi->second, pj->second).with_label(name));
    } catch (const Error&) {
    }
  };
  auto point = [&](std::size_t k, const std::string& l, const std::string& m) {
    auto il = out.lines.find(l), im = out.lines.find(m);
    if (il == out.lines.end() || im == out.lines.end()) return;
    try {
      out.points.emplace(k, meet(il->second, im->second).with_label(point_name(k)));
    } catch (const Error&) {
    }
  };
  line(1, 4);
  line(2, 4);
  line(3, 4);
  line(1, 5);
  line(2, 5);
  point(6, "P1P4", "P2P5");
  point(7, "P2P4", "P1P5");
  line(3, 6);
  line(3, 7);
  point(8, "P1P4", "P3P7");
  line(2, 8);
  point(9, "P2P4", "P3P6");
  line(1, 9);
  point(10, "P2P8", "P3P4");
  point(11, "P3P7", "P1P9");
  point(12, "P3P6", "P2P8");
  point(13, "P2P5", "P3P7");
  point(14, "P1P5", "P3P6");
  line(14, 15);
  line(13, 15);
  point(16, "P2P8", "P13P15");
  point(17, "P1P9", "P14P15");
  line(11, 16);
  line(12, 17);
  point(18, "P1P4", "P11P16");
  point(19, "P2P4", "P12P17");
  point(20, "P1P5", "P2P8");
  point(21, "P2P5", "P1P9");
  line(18, 20);
  line(19, 21);
  point(22, "P3P4", "P11P16");
  point(23, "P3P7", "P12P17");
  point(24, "P3P6", "P11P16");
  point(25, "P3P4", "P18P20");
  point(26, "P2P4", "P11P16");
  point(27, "P1P4", "P12P17");
  point(28, "P2P5", "P14P15");
  point(29, "P1P5", "P13P15");
  point(30, "P2P4", "P13P15");
  point(31, "P1P4", "P14P15");
  return out;
}

/// Labels of closed forms that disagree with the join/meet construction.
template <class S>
std::vector<std::string> closed_form_mismatches(const S& a, const S& b, const Constructed<S>& jm) {
  std::vector<std::string> bad;
  auto pts = closed_points(a, b);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto it = jm.points.find(i + 1);
    if (it == jm.points.end() || detail::all_zero(pts[i])) continue;
    if (ProjPoint<S>(pts[i]) != it->second) bad.push_back(point_name(i + 1));
  }
  auto lns = closed_lines(a, b);
  for (std::size_t i = 0; i < lns.size(); ++i) {
    auto it = jm.lines.find(line_names()[i]);
    if (it == jm.lines.end() || detail::all_zero(lns[i])) continue;
    if (ProjLine<S>(lns[i]) != it->second) bad.push_back(line_names()[i]);
  }
  return bad;
}

/// An incidence P_point on the line through P_i and P_j.
struct Incidence {
  std::size_t point, i, j;
  std::string to_string() const { return point_name(point) + " in " + point_name(i) + point_name(j); }
};

inline const std::array<Incidence, 8>& conditions() {
  static const std::array<Incidence, 8> c{{{23, 18, 20},
                                           {24, 19, 21},
                                           {26, 14, 15},
                                           {27, 13, 15},
                                           {28, 18, 20},
                                           {29, 19, 21},
                                           {30, 18, 20},
                                           {31, 19, 21}}};
  return c;
}

/// Fact 1: P10 on P1P9. Fact 2: P22 on P12P17. Fact 3: P25 on P19P21.
inline const std::array<Incidence, 3>& facts() {
  static const std::array<Incidence, 3> f{{{10, 1, 9}, {22, 12, 17}, {25, 19, 21}}};
  return f;
}

template <class S>
S incidence_determinant(const std::vector<Triple<S>>& pts, const Incidence& inc) {
  return detail::det3(pts[inc.point - 1], pts[inc.i - 1], pts[inc.j - 1]);
}

// ---------------------------------------------------------------------------
// Condition polynomials in Q[a, b]

inline QRing ab_ring() {
  static const QRing ring = make_ring(RationalField{}, {"a", "b"});
  return ring;
}

inline QPoly f_polynomial() {
  auto r = ab_ring();
  return f_value(QPoly::variable(r, 0), QPoly::variable(r, 1));
}

/// The eight incidence determinants, primitive over Z with positive leading
/// coefficient.
inline std::vector<QPoly> condition_polynomials() {
  auto r = ab_ring();
  auto pts = closed_points(QPoly::variable(r, 0), QPoly::variable(r, 1));
  auto zr = integer_ring_like(r);
  std::vector<QPoly> out;
  for (const auto& c : conditions()) {
    QPoly d = incidence_determinant(pts, c);
    out.push_back(d.is_zero() ? d : to_rational(primitive_part(primitive_integer(d, zr)), r));
  }
  return out;
}

/// Factors a, a - 1, b, b - 1, b - a, a^2 + a - 1; each vanishes only at
/// forbidden parameters.
inline const std::vector<std::pair<std::string, QPoly>>& excluded_factors() {
  static const std::vector<std::pair<std::string, QPoly>> fs = [] {
    auto r = ab_ring();
    QPoly a = QPoly::variable(r, 0), b = QPoly::variable(r, 1), one = QPoly::from_integer(r, 1);
    return std::vector<std::pair<std::string, QPoly>>{
        {"a", a}, {"a-1", a - one}, {"b", b}, {"b-1", b - one}, {"b-a", b - a}, {"a^2+a-1", a * a + a - one}};
  }();
  return fs;
}

struct StrippedPolynomial {
  QPoly original;
  QPoly remainder;
  /// Excluded factor -> exponent removed.
  std::vector<std::pair<std::string, unsigned>> stripped;
  /// remainder is a multiple of f.
  bool divisible_by_f = false;
};

/// Removes every power of an excluded factor and the integer content, then
/// tests divisibility by f.
inline StrippedPolynomial strip_excluded(const QPoly& p) {
  StrippedPolynomial out{p, p, {}, false};
  if (p.is_zero()) {
    out.divisible_by_f = true;
    return out;
  }
  for (const auto& [name, factor] : excluded_factors()) {
    unsigned e = 0;
    while (auto q = exact_divide(out.remainder, factor)) {
      out.remainder = *q;
      ++e;
    }
    if (e) out.stripped.emplace_back(name, e);
  }
  auto zr = integer_ring_like(ab_ring());
  out.remainder = to_rational(primitive_part(primitive_integer(out.remainder, zr)), ab_ring());
  out.divisible_by_f = exact_divide(out.remainder, f_polynomial()).has_value();
  return out;
}

/// Generator of the ideal of the eight condition polynomials, which must be
/// (a - 1)^2 f up to a unit.
inline QPoly derive_condition_ideal() {
  auto r = ab_ring();
  auto gb = buchberger(condition_polynomials(), r);
  if (gb.size() != 1)
    throw Error(ErrorCode::DerivationMismatch, "condition ideal has a " + std::to_string(gb.size()) + "-element basis");
  QPoly a1 = QPoly::variable(r, 0) - QPoly::from_integer(r, 1);
  QPoly expected = make_monic(a1 * a1 * f_polynomial());
  if (make_monic(gb[0]) != expected)
    throw Error(ErrorCode::DerivationMismatch, "condition ideal is generated by " + to_string(gb[0]));
  return gb[0];
}

// ---------------------------------------------------------------------------
// Parameters

class B15Parameters {
 public:
  /// a is embedded into the field of b. Checks f(a, b) = 0 and the
  /// forbidden values a in {0, 1}, b in {0, 1, a}.
  B15Parameters(const FieldElement& a, const FieldElement& b) : b_(b) {
    a_ = is_subfield(a.field(), b.field()) ? embed(a, b.field()) : a;
    require_same(a_.field(), b_.field());
    FieldElement one = boroczky::one(b_.field());
    if (a_.is_zero() || a_ == one) throw Error(ErrorCode::ParameterInvalid, "a = " + to_string(a_) + " is forbidden");
    if (b_.is_zero() || b_ == one || b_ == a_)
      throw Error(ErrorCode::ParameterInvalid, "b = " + to_string(b_) + " is forbidden");
    if (!f_value(a_, b_).is_zero())
      throw Error(ErrorCode::ParameterInvalid, "f(" + to_string(a_) + ", " + to_string(b_) + ") is not zero");
  }

  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  Field field() const { return b_.field(); }

 private:
  FieldElement a_, b_;
};

/// The generic parameter pair: a transcendental, b its root of f in
/// Q(a)[b]/(f).
inline B15Parameters generic_parameters() {
  Field k = parse_field("QQ(a)[b]/(a^4*b - a^2*b^2 - a^3 + a^2*b - a*b^2 + b^2)");
  return B15Parameters(generator(k->base), generator(k));
}

/// Coefficients of f as a quadratic in b: A b^2 + B b + C.
struct QuadraticInB {
  Rational A, B, C;
  Rational discriminant() const { return B * B - 4 * A * C; }
};

inline QuadraticInB quadratic_in_b(const Rational& a) {
  Rational a2 = a * a;
  return {1 - a - a2, a2 * a2 + a2, -a2 * a};
}

struct SolveResult {
  Rational a;
  Rational discriminant;
  /// Q when the discriminant is a square, else Q(sqrt(d)).
  Field field;
  std::vector<B15Parameters> params;
  /// Roots dropped for a forbidden value, with the reason.
  std::vector<std::pair<FieldElement, std::string>> rejected;
};

inline SolveResult solve_b(Rational a) {
  a.canonicalize();
  if (a == 0 || a == 1) throw Error(ErrorCode::ForbiddenA, "a = " + a.get_str() + " is forbidden");
  auto qb = quadratic_in_b(a);
  if (qb.A == 0) throw Error(ErrorCode::CoefficientVanishes, "a^2 + a - 1 vanishes");
  SolveResult out{a, qb.discriminant(), rationals(), {}, {}};
  Field q = rationals();
  std::vector<FieldElement> roots;
  FieldElement two_a = from_rational(q, 2 * qb.A), minus_b = from_rational(q, -qb.B);
  if (out.discriminant == 0) {
    roots.push_back(minus_b / two_a);
  } else if (auto root = is_square(from_rational(q, out.discriminant))) {
    roots.push_back((minus_b + *root) / two_a);
    roots.push_back((minus_b - *root) / two_a);
  } else {
    out.field = quadratic_extension(q, from_rational(q, out.discriminant));
    FieldElement s = sqrt_in(out.field, from_rational(q, out.discriminant));
    FieldElement mb = embed(minus_b, out.field), ta = embed(two_a, out.field);
    roots.push_back((mb + s) / ta);
    roots.push_back((mb - s) / ta);
  }
  FieldElement ae = embed(from_rational(q, a), out.field);
  for (const auto& b : roots) {
    std::string why;
    if (b.is_zero()) why = "b = 0 forbidden";
    else if (b.is_one()) why = "b = 1 forbidden";
    else if (b == ae) why = "b = " + to_string(b) + " = a forbidden";
    if (!why.empty()) {
      out.rejected.emplace_back(b, why);
      continue;
    }
    out.params.emplace_back(ae, b);
  }
  return out;
}

struct RationalAttempt {
  Rational a;
  bool valid_pair = false;
  std::string explanation;
  std::optional<Rational> discriminant;
};

/// Whether a rational a admits a rational b giving a valid pair.
inline RationalAttempt attempt_rational(Rational a) {
  a.canonicalize();
  RationalAttempt out{a, false, {}, std::nullopt};
  if (a == 0 || a == 1) {
    out.explanation = "a forbidden";
    return out;
  }
  auto qb = quadratic_in_b(a);
  if (qb.A == 0) {
    out.explanation = "a^2 + a - 1 vanishes";
    return out;
  }
  out.discriminant = qb.discriminant();
  if (*out.discriminant != 0 && !is_square(from_rational(rationals(), *out.discriminant))) {
    out.explanation = "discriminant " + out.discriminant->get_str() + " not a rational square";
    return out;
  }
  SolveResult s = solve_b(a);
  if (!s.params.empty()) {
    out.valid_pair = true;
    out.explanation = "b = " + to_string(s.params.front().b()) + " gives a valid rational pair";
    return out;
  }
  for (std::size_t i = 0; i < s.rejected.size(); ++i) out.explanation += (i ? "; " : "") + s.rejected[i].second;
  return out;
}

// ---------------------------------------------------------------------------
// Build

struct FactsReport {
  std::array<bool, 3> facts{};
  std::array<bool, 8> conditions{};
  /// Labels whose closed form disagrees with join/meet (expected empty).
  std::vector<std::string> mismatches;
  std::size_t points_constructed = 0;
  std::size_t lines_constructed = 0;

  bool all_hold() const {
    for (bool x : facts)
      if (!x) return false;
    for (bool x : conditions)
      if (!x) return false;
    return mismatches.empty() && points_constructed == 31 && lines_constructed == 15;
  }
};

template <class S>
FactsReport verify_facts(const S& a, const S& b) {
  FactsReport rep;
  auto pts = closed_points(a, b);
  for (std::size_t i = 0; i < 3; ++i) rep.facts[i] = ScalarTraits<S>::is_zero(incidence_determinant(pts, facts()[i]));
  for (std::size_t i = 0; i < 8; ++i)
    rep.conditions[i] = ScalarTraits<S>::is_zero(incidence_determinant(pts, conditions()[i]));
  auto jm = construct(a, b);
  rep.points_constructed = jm.points.size();
  rep.lines_constructed = jm.lines.size();
  rep.mismatches = closed_form_mismatches(a, b, jm);
  return rep;
}

struct B15Result {
  FieldElement a, b;
  Configuration<FieldElement> configuration;
  /// "P1".."P31" -> index into configuration.points.
  std::map<std::string, std::size_t> point_labels;
  /// Line name -> index into configuration.lines.
  std::map<std::string, std::size_t> line_labels;
  FactsReport facts;
  /// Deviations from 31 labeled triple points and census {3: 31, 2: 12}.
  std::vector<std::string> census_notes;
};

inline B15Result build(const B15Parameters& params) {
  const auto& a = params.a();
  const auto& b = params.b();
  FactsReport rep = verify_facts(a, b);
  if (!rep.mismatches.empty())
    throw Error(ErrorCode::InternalMismatch, "closed form differs from join/meet for " + rep.mismatches.front());
  if (rep.points_constructed != 31 || rep.lines_constructed != 15)
    throw Error(ErrorCode::InternalMismatch, "join/meet construction degenerated");
  if (!rep.all_hold()) throw Error(ErrorCode::InternalMismatch, "an incidence fails although f(a, b) = 0");

  std::vector<ProjLine<FieldElement>> lines;
  auto eqs = closed_lines(a, b);
  for (std::size_t i = 0; i < eqs.size(); ++i) lines.emplace_back(eqs[i], line_names()[i]);
  B15Result out{a, b, {}, {}, {}, rep, {}};
  try {
    out.configuration = census(lines);
  } catch (const Error& e) {
    throw Error(ErrorCode::InternalMismatch, std::string("lines are not distinct: ") + e.what());
  }
  for (std::size_t i = 0; i < lines.size(); ++i) out.line_labels[line_names()[i]] = i;
  auto pts = closed_points(a, b);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto idx = out.configuration.find_point(ProjPoint<FieldElement>(pts[i]));
    if (!idx) throw Error(ErrorCode::InternalMismatch, point_name(i + 1) + " is not an intersection point");
    out.point_labels[point_name(i + 1)] = *idx;
    std::size_t mult = out.configuration.points[*idx].multiplicity();
    if (mult != 3) out.census_notes.push_back(point_name(i + 1) + " has multiplicity " + std::to_string(mult));
  }
  if (out.configuration.count(3) != 31 || out.configuration.count(2) != 12 || out.configuration.census.size() != 2)
    out.census_notes.push_back("census differs from {3: 31, 2: 12}");
  return out;
}

/// Facts, conditions and closed-form agreement in Q[a, b] without using f;
/// the facts hold identically there, the conditions do not.
inline FactsReport verify_polynomial_identities() {
  auto r = ab_ring();
  return verify_facts(QPoly::variable(r, 0), QPoly::variable(r, 1));
}

}  // namespace boroczky::b15
