#pragma once

// The parameter curve of the 15-line arrangement. The chain
//   f(a, b) = 0  <->  T^2 = a (1 + a)(4 + a + a^2)  <->  E: Y^2 + XY + Y = X^3 + X^2
// is birational, and the rational points of E pull back to forbidden
// parameters only.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "b15.hpp"
#include "parallel.hpp"
#include "scalar_parse.hpp"

namespace boroczky::ellcurve {

/// Y^2 + w1 XY + w3 Y = X^3 + w2 X^2 + w4 X + w6 over Q.
struct EllipticCurve {
  Rational w1, w2, w3, w4, w6;

  EllipticCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
      : w1(std::move(a1)), w2(std::move(a2)), w3(std::move(a3)), w4(std::move(a4)), w6(std::move(a6)) {
    if (discriminant() == 0) throw Error(ErrorCode::ParameterInvalid, "singular Weierstrass equation");
  }

  Rational b2() const { return w1 * w1 + 4 * w2; }
  Rational b4() const { return 2 * w4 + w1 * w3; }
  Rational b6() const { return w3 * w3 + 4 * w6; }
  Rational b8() const { return w1 * w1 * w6 + 4 * w2 * w6 - w1 * w3 * w4 + w2 * w3 * w3 - w4 * w4; }
  Rational c4() const { return b2() * b2() - 24 * b4(); }
  Rational c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
  Rational discriminant() const {
    Rational x2 = b2(), x4 = b4(), x6 = b6(), x8 = b8();
    return -x2 * x2 * x8 - 8 * x4 * x4 * x4 - 27 * x6 * x6 + 9 * x2 * x4 * x6;
  }

  std::array<Rational, 5> coefficients() const { return {w1, w2, w3, w4, w6}; }
  std::string to_string() const {
    return "[" + w1.get_str() + "," + w2.get_str() + "," + w3.get_str() + "," + w4.get_str() + "," + w6.get_str() + "]";
  }
};

/// Y^2 + XY + Y = X^3 + X^2.
inline const EllipticCurve& parameter_curve() {
  static const EllipticCurve e(1, 1, 1, 0, 0);
  return e;
}

/// The point at infinity or an affine point over some field.
struct ECPoint {
  std::optional<std::pair<FieldElement, FieldElement>> xy;

  static ECPoint infinity() { return {}; }
  static ECPoint affine(FieldElement x, FieldElement y) { return {std::make_pair(std::move(x), std::move(y))}; }
  static ECPoint rational(const Rational& x, const Rational& y) {
    return affine(from_rational(rationals(), x), from_rational(rationals(), y));
  }

  bool is_infinity() const { return !xy.has_value(); }
  const FieldElement& x() const { return xy->first; }
  const FieldElement& y() const { return xy->second; }

  std::string to_string() const {
    return is_infinity() ? "O" : "(" + boroczky::to_string(x()) + ", " + boroczky::to_string(y()) + ")";
  }

  friend bool operator==(const ECPoint& p, const ECPoint& q) { return p.xy == q.xy; }
  friend bool operator!=(const ECPoint& p, const ECPoint& q) { return !(p == q); }
};

namespace detail {

inline FieldElement lift(const Rational& c, const Field& k) { return embed(from_rational(rationals(), c), k); }

}  // namespace detail

inline bool on_curve(const EllipticCurve& e, const ECPoint& p) {
  if (p.is_infinity()) return true;
  const Field& k = p.x().field();
  const auto &x = p.x(), &y = p.y();
  FieldElement lhs = y * y + detail::lift(e.w1, k) * x * y + detail::lift(e.w3, k) * y;
  FieldElement rhs = x * x * x + detail::lift(e.w2, k) * x * x + detail::lift(e.w4, k) * x + detail::lift(e.w6, k);
  return lhs == rhs;
}

inline void require_on_curve(const EllipticCurve& e, const ECPoint& p) {
  if (!on_curve(e, p)) throw Error(ErrorCode::PointNotOnCurve, p.to_string() + " is not on " + e.to_string());
}

/// Y -> -Y - w1 X - w3.
inline ECPoint ec_neg(const EllipticCurve& e, const ECPoint& p) {
  require_on_curve(e, p);
  if (p.is_infinity()) return p;
  const Field& k = p.x().field();
  return ECPoint::affine(p.x(), -p.y() - detail::lift(e.w1, k) * p.x() - detail::lift(e.w3, k));
}

/// Chord-tangent addition.
inline ECPoint ec_add(const EllipticCurve& e, const ECPoint& p, const ECPoint& q) {
  require_on_curve(e, p);
  require_on_curve(e, q);
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const Field& k = p.x().field();
  require_same(k, q.x().field());
  FieldElement a1 = detail::lift(e.w1, k), a2 = detail::lift(e.w2, k), a3 = detail::lift(e.w3, k);
  FieldElement a4 = detail::lift(e.w4, k), a6 = detail::lift(e.w6, k);
  const auto &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
  FieldElement lambda, nu;
  if (x1 == x2) {
    if (y1 + y2 + a1 * x2 + a3 == zero(k)) return ECPoint::infinity();
    FieldElement three = from_integer(k, 3), two = from_integer(k, 2);
    FieldElement den = two * y1 + a1 * x1 + a3;
    lambda = (three * x1 * x1 + two * a2 * x1 + a4 - a1 * y1) / den;
    nu = (-x1 * x1 * x1 + a4 * x1 + two * a6 - a3 * y1) / den;
  } else {
    lambda = (y2 - y1) / (x2 - x1);
    nu = (y1 * x2 - y2 * x1) / (x2 - x1);
  }
  FieldElement x3 = lambda * lambda + a1 * lambda - a2 - x1 - x2;
  FieldElement y3 = -(lambda + a1) * x3 - nu - a3;
  return ECPoint::affine(x3, y3);
}

inline ECPoint ec_mul(const EllipticCurve& e, const ECPoint& p, unsigned n) {
  ECPoint acc = ECPoint::infinity();
  for (unsigned i = 0; i < n; ++i) acc = ec_add(e, acc, p);
  return acc;
}

/// Smallest n <= bound with nP = O, if any.
inline std::optional<unsigned> order(const EllipticCurve& e, const ECPoint& p, unsigned bound = 12) {
  ECPoint acc = p;
  for (unsigned n = 1; n <= bound; ++n) {
    if (acc.is_infinity()) return n;
    acc = ec_add(e, acc, p);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parameter maps

/// a (1 + a)(4 + a + a^2), the right side of the quartic model.
inline FieldElement quartic_rhs(const FieldElement& a) {
  const Field& k = a.field();
  return a * (one(k) + a) * (from_integer(k, 4) + a + a * a);
}

struct ATPoint {
  FieldElement a, T;
};

struct ABPoint {
  FieldElement a, b;
};

inline ATPoint map_ab_to_aT(const FieldElement& a, const FieldElement& b) {
  require_same(a.field(), b.field());
  if (!b15::f_value(a, b).is_zero()) throw Error(ErrorCode::MapUndefined, "f(a, b) is not zero");
  const Field& k = a.field();
  FieldElement s = a * a + a - one(k);
  if (a.is_zero() || a.is_one()) throw Error(ErrorCode::MapUndefined, "a = " + to_string(a) + " is excluded");
  if (s.is_zero()) throw Error(ErrorCode::MapUndefined, "a^2 + a - 1 vanishes");
  FieldElement a2 = a * a;
  FieldElement t = (from_integer(k, 2) * s * b - a2 - a2 * a2) / ((a - one(k)) * a);
  return {a, t};
}

inline ABPoint map_aT_to_ab(const FieldElement& a, const FieldElement& t) {
  require_same(a.field(), t.field());
  if (t * t != quartic_rhs(a)) throw Error(ErrorCode::MapUndefined, "T^2 differs from a(1+a)(4+a+a^2)");
  const Field& k = a.field();
  FieldElement s = a * a + a - one(k);
  if (s.is_zero()) throw Error(ErrorCode::MapUndefined, "a^2 + a - 1 vanishes");
  FieldElement a2 = a * a;
  FieldElement b = ((a - one(k)) * a * t + a2 + a2 * a2) / (from_integer(k, 2) * s);
  if (!b15::f_value(a, b).is_zero()) throw Error(ErrorCode::InternalMismatch, "pulled back b does not satisfy f");
  return {a, b};
}

inline ECPoint map_aT_to_XY(const FieldElement& a, const FieldElement& t) {
  require_same(a.field(), t.field());
  if (t * t != quartic_rhs(a)) throw Error(ErrorCode::MapUndefined, "T^2 differs from a(1+a)(4+a+a^2)");
  if (a.is_zero()) throw Error(ErrorCode::MapUndefined, "a = 0 has no image (X = 1/a)");
  const Field& k = a.field();
  FieldElement x = inverse(a);
  FieldElement y = (t * x * x - x - one(k)) / from_integer(k, 2);
  ECPoint p = ECPoint::affine(x, y);
  if (!on_curve(parameter_curve(), p)) throw Error(ErrorCode::InternalMismatch, "image is not on E");
  return p;
}

inline ATPoint map_XY_to_aT(const ECPoint& p) {
  require_on_curve(parameter_curve(), p);
  if (p.is_infinity()) throw Error(ErrorCode::MapUndefined, "point at infinity corresponds to a = 0");
  if (p.x().is_zero()) throw Error(ErrorCode::MapUndefined, "X = 0 corresponds to a = infinity");
  const Field& k = p.x().field();
  FieldElement a = inverse(p.x());
  FieldElement t = (from_integer(k, 2) * p.y() + p.x() + one(k)) / (p.x() * p.x());
  return {a, t};
}

struct MapIdentityReport {
  bool image_on_E = false;
  bool aT_round_trip = false;
  bool ab_round_trip = false;
  bool image_on_quartic = false;
};

/// Generic checks: over Q(a)[T]/(T^2 - a(1+a)(4+a+a^2)) the image of (a, T)
/// lies on E and the maps to E and back compose to the identity; over
/// Q(a)[b]/(f) the maps (a, b) -> (a, T) -> (a, b) do.
inline MapIdentityReport verify_maps_symbolically() {
  MapIdentityReport rep;
  Field quartic = parse_field("QQ(a)[T]/(T^2 - a*(1 + a)*(4 + a + a^2))");
  FieldElement a = generator(quartic->base);
  FieldElement ae = embed(a, quartic), t = generator(quartic);
  ECPoint p = map_aT_to_XY(ae, t);
  rep.image_on_E = on_curve(parameter_curve(), p);
  ATPoint back = map_XY_to_aT(p);
  rep.aT_round_trip = back.a == ae && back.T == t;

  b15::B15Parameters g = b15::generic_parameters();
  ATPoint at = map_ab_to_aT(g.a(), g.b());
  rep.image_on_quartic = at.T * at.T == quartic_rhs(at.a);
  ABPoint ab = map_aT_to_ab(at.a, at.T);
  rep.ab_round_trip = ab.a == g.a() && ab.b == g.b();
  return rep;
}

// ---------------------------------------------------------------------------
// Rational points

/// y^2 = x^3 + A x + B with x = 36 X + 3 b2, y = 108 (2 Y + w1 X + w3).
struct ShortModel {
  Rational A, B;
  Rational discriminant_term() const { return 4 * A * A * A + 27 * B * B; }
};

inline ShortModel short_model(const EllipticCurve& e) { return {-27 * e.c4(), -54 * e.c6()}; }

inline ECPoint from_short(const EllipticCurve& e, const Rational& x, const Rational& y) {
  Rational X = (x - 3 * e.b2()) / 36;
  Rational Y = (y / 108 - e.w1 * X - e.w3) / 2;
  X.canonicalize();
  Y.canonicalize();
  return ECPoint::rational(X, Y);
}

namespace detail {

inline bool rational_less(const ECPoint& p, const ECPoint& q) {
  if (p.is_infinity() || q.is_infinity()) return p.is_infinity() && !q.is_infinity();
  if (p.x() != q.x()) return p.x().rational() < q.x().rational();
  return p.y().rational() < q.y().rational();
}

inline void sort_points(std::vector<ECPoint>& pts) { std::sort(pts.begin(), pts.end(), rational_less); }

inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!is_perfect_square(r.get_num()) || !is_perfect_square(r.get_den())) return std::nullopt;
  Rational s(isqrt(r.get_num()), isqrt(r.get_den()));
  s.canonicalize();
  return s;
}

}  // namespace detail

/// Affine points with X = p/q, |p|, q <= bound, plus O; sorted, O first.
inline std::vector<ECPoint> search_points(const EllipticCurve& e, long bound, unsigned threads = 0) {
  if (bound < 1) throw Error(ErrorCode::ParameterInvalid, "height bound must be at least 1");
  auto per_q = parallel_map(
      static_cast<std::size_t>(bound),
      [&](std::size_t qi) {
        std::vector<ECPoint> found;
        long q = static_cast<long>(qi) + 1;
        for (long p = -bound; p <= bound; ++p) {
          if (gcd(Integer(p), Integer(q)) != 1) continue;
          Rational x(p, q);
          x.canonicalize();
          Rational lin = e.w1 * x + e.w3;
          Rational disc = lin * lin + 4 * (x * x * x + e.w2 * x * x + e.w4 * x + e.w6);
          auto s = detail::rational_sqrt(disc);
          if (!s) continue;
          for (const Rational& root : {*s, Rational(-*s)}) {
            Rational y = (-lin + root) / 2;
            y.canonicalize();
            ECPoint pt = ECPoint::rational(x, y);
            if (std::find(found.begin(), found.end(), pt) == found.end()) found.push_back(pt);
          }
        }
        return found;
      },
      threads);
  std::vector<ECPoint> out{ECPoint::infinity()};
  for (auto& v : per_q)
    for (auto& p : v) out.push_back(std::move(p));
  detail::sort_points(out);
  return out;
}

struct NagellLutzReport {
  ShortModel model;
  Integer discriminant_term;
  /// y values tested: 0 and every y > 0 with y^2 dividing the discriminant term.
  std::size_t candidates = 0;
  /// Integral short-model points found, before the order check.
  std::vector<std::pair<Integer, Integer>> integral_points;
  /// Torsion points on the original curve, O included; sorted, O first.
  std::vector<ECPoint> torsion;
};

/// Torsion by Nagell-Lutz on the short model; each integral candidate is
/// mapped back to E and kept only if its order is at most 12.
inline NagellLutzReport nagell_lutz(const EllipticCurve& e) {
  NagellLutzReport rep;
  rep.model = short_model(e);
  if (rep.model.A.get_den() != 1 || rep.model.B.get_den() != 1)
    throw Error(ErrorCode::ParameterInvalid, "short model is not integral");
  Integer A = rep.model.A.get_num(), B = rep.model.B.get_num();
  rep.discriminant_term = 4 * A * A * A + 27 * B * B;
  std::vector<Integer> ys{0};
  for (const auto& d : divisors(rep.discriminant_term))
    if (is_perfect_square(d)) ys.push_back(isqrt(d));
  rep.candidates = ys.size();
  for (const Integer& y : ys) {
    // Integer roots of x^3 + A x + (B - y^2).
    Integer c = B - y * y;
    std::vector<Integer> xs;
    auto value = [&](const Integer& x) -> Integer { return x * x * x + A * x + c; };
    if (c == 0) {
      xs.push_back(0);
      if (-A > 0 && is_perfect_square(-A)) {
        xs.push_back(isqrt(-A));
        xs.push_back(-isqrt(-A));
      }
    } else {
      for (const auto& d : divisors(c))
        for (const Integer& x : {d, Integer(-d)})
          if (value(x) == 0) xs.push_back(x);
    }
    for (const Integer& x : xs) {
      for (const Integer& sy : {y, Integer(-y)}) {
        std::pair<Integer, Integer> pt{x, sy};
        if (std::find(rep.integral_points.begin(), rep.integral_points.end(), pt) == rep.integral_points.end())
          rep.integral_points.push_back(pt);
      }
    }
  }
  rep.torsion.push_back(ECPoint::infinity());
  for (const auto& [x, y] : rep.integral_points) {
    ECPoint p = from_short(e, Rational(x), Rational(y));
    require_on_curve(e, p);
    if (order(e, p)) rep.torsion.push_back(p);
  }
  detail::sort_points(rep.torsion);
  return rep;
}

struct RationalPointsReport {
  long height_bound = 0;
  std::vector<ECPoint> search;
  NagellLutzReport nagell_lutz;
  bool agree() const { return search == nagell_lutz.torsion; }
};

inline RationalPointsReport rational_points(const EllipticCurve& e, long height_bound, unsigned threads = 0) {
  return {height_bound, search_points(e, height_bound, threads), nagell_lutz(e)};
}

// ---------------------------------------------------------------------------
// Certificate

struct Pullback {
  ECPoint point;
  std::optional<Rational> a, T, b;
  std::string verdict;
  std::vector<std::string> steps;
};

struct Certificate {
  EllipticCurve curve = parameter_curve();
  long height_bound = 0;
  std::vector<ECPoint> points;
  bool methods_agree = false;
  std::vector<Pullback> pullbacks;
  /// "NoRationalB15" when every pullback is rejected.
  std::string verdict;
};

inline Pullback pull_back(const ECPoint& p) {
  Pullback pb{p, std::nullopt, std::nullopt, std::nullopt, {}, {}};
  if (p.is_infinity()) {
    pb.steps.push_back("O has no affine coordinates; a = 1/X is undefined");
    pb.verdict = "point at infinity: a undefined";
    return pb;
  }
  pb.steps.push_back("check " + p.to_string() + " on Y^2 + XY + Y = X^3 + X^2");
  if (p.x().is_zero()) {
    pb.steps.push_back("X = 0, so a = 1/X is undefined");
    pb.verdict = "X = 0 => a undefined";
    return pb;
  }
  ATPoint at = map_XY_to_aT(p);
  pb.a = at.a.rational();
  pb.T = at.T.rational();
  pb.steps.push_back("a = 1/X = " + to_string(at.a) + ", T = (2Y + X + 1)/X^2 = " + to_string(at.T));
  if (at.a.is_one()) {
    pb.verdict = "a = 1 forbidden";
    return pb;
  }
  ABPoint ab;
  try {
    ab = map_aT_to_ab(at.a, at.T);
  } catch (const Error& err) {
    pb.verdict = std::string("map to (a, b) undefined: ") + err.what();
    return pb;
  }
  pb.b = ab.b.rational();
  pb.steps.push_back("b = ((a-1)aT + a^2 + a^4)/(2(a^2+a-1)) = " + to_string(ab.b));
  if (ab.b.is_zero()) pb.verdict = "b = 0 forbidden";
  else if (ab.b.is_one()) pb.verdict = "b = 1 forbidden";
  else if (ab.b == ab.a) pb.verdict = "b = a forbidden";
  else {
    pb.verdict = "valid rational parameters";
    return pb;
  }
  pb.steps.push_back(pb.verdict);
  return pb;
}

inline Certificate certify_no_rational_b15(long height_bound = 100, unsigned threads = 0) {
  Certificate cert;
  cert.height_bound = height_bound;
  auto rp = rational_points(cert.curve, height_bound, threads);
  cert.methods_agree = rp.agree();
  cert.points = rp.search;
  bool any_valid = false;
  for (const auto& p : cert.points) {
    cert.pullbacks.push_back(pull_back(p));
    if (cert.pullbacks.back().verdict == "valid rational parameters") any_valid = true;
  }
  if (any_valid) cert.verdict = "RationalB15Found";
  else if (!cert.methods_agree) cert.verdict = "Inconclusive";
  else cert.verdict = "NoRationalB15";
  return cert;
}

}  // namespace boroczky::ellcurve
