#pragma once

// Exact arithmetic in a tower of fields: Q, F_p, quadratic extensions,
// univariate rational function fields and simple algebraic extensions
// K[t]/(f). Elements are immutable values tagged with their field.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "integer.hpp"

namespace boroczky {

enum class FieldKind { Rationals, PrimeField, QuadExt, FunctionField, QuotientExt };

struct FieldDescriptor;
using Field = std::shared_ptr<const FieldDescriptor>;

class FieldElement;

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
using Coeffs = std::vector<FieldElement>;

struct RatFunc {
  Coeffs num;
  Coeffs den;
};

class FieldElement {
 public:
  using Repr = std::variant<Rational, std::uint64_t, Coeffs, RatFunc>;

  FieldElement();
  FieldElement(Field field, Repr repr) : field_(std::move(field)), repr_(std::move(repr)) {}

  const Field& field() const { return field_; }
  const Repr& repr() const { return repr_; }
  FieldKind kind() const;

  bool is_zero() const;
  bool is_one() const;

  /// Q only.
  const Rational& rational() const { return std::get<Rational>(repr_); }
  /// F_p only.
  std::uint64_t residue() const { return std::get<std::uint64_t>(repr_); }
  /// QuadExt: {u, v} meaning u + v*sqrt(d). QuotientExt: reduced representative.
  const Coeffs& coeffs() const { return std::get<Coeffs>(repr_); }
  /// FunctionField.
  const RatFunc& ratfunc() const { return std::get<RatFunc>(repr_); }

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

 private:
  Field field_;
  Repr repr_;
};

struct FieldDescriptor {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t modulus = 0;   // PrimeField
  Field base;                  // QuadExt, FunctionField, QuotientExt
  std::string var;             // FunctionField, QuotientExt generator name
  Coeffs defining;             // QuotientExt, monic over base
  std::optional<FieldElement> radicand;  // QuadExt, element of base
};

// ---------------------------------------------------------------------------
// Field identity

inline bool operator==(const FieldElement& x, const FieldElement& y);

inline bool same_field(const Field& f, const Field& g) {
  if (f == g) return true;
  if (!f || !g) return false;
  if (f->kind != g->kind) return false;
  switch (f->kind) {
    case FieldKind::Rationals: return true;
    case FieldKind::PrimeField: return f->modulus == g->modulus;
    case FieldKind::QuadExt:
      return same_field(f->base, g->base) && *f->radicand == *g->radicand;
    case FieldKind::FunctionField: return f->var == g->var && same_field(f->base, g->base);
    case FieldKind::QuotientExt:
      return f->var == g->var && same_field(f->base, g->base) && f->defining == g->defining;
  }
  return false;
}

inline void require_same(const Field& f, const Field& g) {
  if (!same_field(f, g)) throw Error(ErrorCode::DescriptorMismatch, "operands live in different fields");
}

inline Field rationals() {
  static const Field q = std::make_shared<const FieldDescriptor>();
  return q;
}

inline FieldElement::FieldElement() : field_(rationals()), repr_(Rational(0)) {}

inline FieldKind FieldElement::kind() const { return field_->kind; }

// ---------------------------------------------------------------------------
// Constants

inline FieldElement zero(const Field& k);
inline FieldElement one(const Field& k);
inline FieldElement from_integer(const Field& k, const Integer& n);

inline FieldElement zero(const Field& k) {
  switch (k->kind) {
    case FieldKind::Rationals: return {k, Rational(0)};
    case FieldKind::PrimeField: return {k, std::uint64_t{0}};
    case FieldKind::QuadExt: return {k, Coeffs{zero(k->base), zero(k->base)}};
    case FieldKind::FunctionField: return {k, RatFunc{{}, {one(k->base)}}};
    case FieldKind::QuotientExt: return {k, Coeffs{}};
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown field kind");
}

inline FieldElement one(const Field& k) { return from_integer(k, 1); }

inline FieldElement from_integer(const Field& k, const Integer& n) {
  switch (k->kind) {
    case FieldKind::Rationals: return {k, Rational(n)};
    case FieldKind::PrimeField: return {k, reduce_mod(n, k->modulus)};
    case FieldKind::QuadExt: return {k, Coeffs{from_integer(k->base, n), zero(k->base)}};
    case FieldKind::FunctionField: {
      FieldElement c = from_integer(k->base, n);
      if (c.is_zero()) return zero(k);
      return {k, RatFunc{{c}, {one(k->base)}}};
    }
    case FieldKind::QuotientExt: {
      FieldElement c = from_integer(k->base, n);
      if (c.is_zero()) return zero(k);
      return {k, Coeffs{c}};
    }
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown field kind");
}

inline bool FieldElement::is_zero() const {
  switch (field_->kind) {
    case FieldKind::Rationals: return rational() == 0;
    case FieldKind::PrimeField: return residue() == 0;
    case FieldKind::QuadExt: return coeffs()[0].is_zero() && coeffs()[1].is_zero();
    case FieldKind::FunctionField: return ratfunc().num.empty();
    case FieldKind::QuotientExt: return coeffs().empty();
  }
  return false;
}

inline bool FieldElement::is_one() const { return *this == one(field_); }

inline FieldElement operator-(const FieldElement& x);
inline FieldElement inverse(const FieldElement& x);

// ---------------------------------------------------------------------------
// Univariate polynomials over a field (used by function fields, quotients
// and irreducibility tests).

namespace upoly {

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

inline Coeffs constant(const FieldElement& c) {
  if (c.is_zero()) return {};
  return {c};
}

inline Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs r = a.size() >= b.size() ? a : b;
  const Coeffs& s = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < s.size(); ++i) r[i] += s[i];
  trim(r);
  return r;
}

inline Coeffs neg(const Coeffs& a) {
  Coeffs r = a;
  for (auto& c : r) c = -c;
  return r;
}

inline Coeffs sub(const Coeffs& a, const Coeffs& b) {
  Coeffs r = a;
  if (r.size() < b.size()) {
    r.reserve(b.size());
    while (r.size() < b.size()) r.push_back(zero(b[r.size()].field()));
  }
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline Coeffs scale(const Coeffs& a, const FieldElement& c) {
  if (c.is_zero()) return {};
  Coeffs r = a;
  for (auto& x : r) x *= c;
  return r;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, zero(a[0].field()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      FieldElement t = a[i];
      t *= b[j];
      r[i + j] += t;
    }
  }
  trim(r);
  return r;
}

/// Long division; b must be nonzero.
inline std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b) {
  if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  Coeffs r = a;
  if (r.size() < b.size()) return {{}, r};
  const Field& k = b.back().field();
  FieldElement lead_inv = one(k);
  lead_inv /= b.back();
  Coeffs q(r.size() - b.size() + 1, zero(k));
  for (int i = degree(r); i >= degree(b); --i) {
    if (r[static_cast<std::size_t>(i)].is_zero()) continue;
    FieldElement c = r[static_cast<std::size_t>(i)];
    c *= lead_inv;
    std::size_t shift = static_cast<std::size_t>(i - degree(b));
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      FieldElement t = c;
      t *= b[j];
      r[shift + j] -= t;
    }
  }
  trim(q);
  trim(r);
  return {q, r};
}

inline Coeffs mod(const Coeffs& a, const Coeffs& b) { return divmod(a, b).second; }

inline Coeffs monic(const Coeffs& a) {
  if (a.empty() || a.back().is_one()) return a;
  FieldElement inv = one(a.back().field());
  inv /= a.back();
  return scale(a, inv);
}

/// Monic gcd (zero if both are zero).
inline Coeffs gcd(Coeffs a, Coeffs b) {
  while (!b.empty()) {
    Coeffs r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline bool equal(const Coeffs& a, const Coeffs& b) { return a == b; }

inline FieldElement eval(const Coeffs& a, const FieldElement& x) {
  FieldElement r = zero(x.field());
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    r *= x;
    r += *it;
  }
  return r;
}

inline Coeffs derivative(const Coeffs& a) {
  Coeffs r;
  for (std::size_t i = 1; i < a.size(); ++i) {
    FieldElement c = a[i];
    c *= from_integer(c.field(), static_cast<long>(i));
    r.push_back(c);
  }
  trim(r);
  return r;
}

}  // namespace upoly

// ---------------------------------------------------------------------------
// Arithmetic

namespace detail {

inline RatFunc normalize_ratfunc(const Field& base, Coeffs num, Coeffs den) {
  if (den.empty()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  if (num.empty()) return {{}, {one(base)}};
  Coeffs g = upoly::gcd(num, den);
  if (g.size() > 1) {
    num = upoly::divmod(num, g).first;
    den = upoly::divmod(den, g).first;
  }
  if (!den.back().is_one()) {
    FieldElement inv = one(base);
    inv /= den.back();
    num = upoly::scale(num, inv);
    den = upoly::scale(den, inv);
  }
  return {std::move(num), std::move(den)};
}

inline FieldElement make_ratfunc(const Field& k, Coeffs num, Coeffs den) {
  return {k, normalize_ratfunc(k->base, std::move(num), std::move(den))};
}

inline FieldElement make_quot(const Field& k, const Coeffs& poly) {
  return {k, upoly::mod(poly, k->defining)};
}

}  // namespace detail

inline FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same(field_, o.field_);
  switch (field_->kind) {
    case FieldKind::Rationals: std::get<Rational>(repr_) += o.rational(); break;
    case FieldKind::PrimeField: {
      std::uint64_t p = field_->modulus;
      std::uint64_t s = residue() + o.residue();
      if (s >= p) s -= p;
      repr_ = s;
      break;
    }
    case FieldKind::QuadExt: {
      auto& c = std::get<Coeffs>(repr_);
      c[0] += o.coeffs()[0];
      c[1] += o.coeffs()[1];
      break;
    }
    case FieldKind::FunctionField: {
      const RatFunc& a = ratfunc();
      const RatFunc& b = o.ratfunc();
      if (b.num.empty()) break;
      if (a.num.empty()) {
        repr_ = b;
        break;
      }
      if (a.den == b.den) {
        *this = detail::make_ratfunc(field_, upoly::add(a.num, b.num), a.den);
      } else {
        *this = detail::make_ratfunc(field_,
                                     upoly::add(upoly::mul(a.num, b.den), upoly::mul(b.num, a.den)),
                                     upoly::mul(a.den, b.den));
      }
      break;
    }
    case FieldKind::QuotientExt: repr_ = upoly::add(coeffs(), o.coeffs()); break;
  }
  return *this;
}

inline FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

inline FieldElement& FieldElement::operator*=(const FieldElement& o) {
  require_same(field_, o.field_);
  switch (field_->kind) {
    case FieldKind::Rationals: std::get<Rational>(repr_) *= o.rational(); break;
    case FieldKind::PrimeField: repr_ = mulmod(residue(), o.residue(), field_->modulus); break;
    case FieldKind::QuadExt: {
      const Coeffs& a = coeffs();
      const Coeffs& b = o.coeffs();
      FieldElement u = a[0], v = a[0], t = a[1];
      u *= b[0];
      t *= b[1];
      t *= *field_->radicand;
      u += t;
      v *= b[1];
      FieldElement w = a[1];
      w *= b[0];
      v += w;
      repr_ = Coeffs{u, v};
      break;
    }
    case FieldKind::FunctionField: {
      const RatFunc& a = ratfunc();
      const RatFunc& b = o.ratfunc();
      if (a.num.empty() || b.num.empty()) {
        *this = zero(field_);
        break;
      }
      *this = detail::make_ratfunc(field_, upoly::mul(a.num, b.num), upoly::mul(a.den, b.den));
      break;
    }
    case FieldKind::QuotientExt: *this = detail::make_quot(field_, upoly::mul(coeffs(), o.coeffs())); break;
  }
  return *this;
}

inline FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= inverse(o); }

inline FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
inline FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
inline FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
inline FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }

inline FieldElement operator-(const FieldElement& x) {
  const Field& k = x.field();
  switch (k->kind) {
    case FieldKind::Rationals: return {k, Rational(-x.rational())};
    case FieldKind::PrimeField: return {k, x.residue() == 0 ? 0 : k->modulus - x.residue()};
    case FieldKind::QuadExt: return {k, Coeffs{-x.coeffs()[0], -x.coeffs()[1]}};
    case FieldKind::FunctionField: {
      RatFunc r = x.ratfunc();
      for (auto& c : r.num) c = -c;
      return {k, r};
    }
    case FieldKind::QuotientExt: {
      Coeffs c = x.coeffs();
      for (auto& e : c) e = -e;
      return {k, c};
    }
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown field kind");
}

inline FieldElement inverse(const FieldElement& x) {
  if (x.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const Field& k = x.field();
  switch (k->kind) {
    case FieldKind::Rationals: return {k, Rational(1 / x.rational())};
    case FieldKind::PrimeField: return {k, invmod(x.residue(), k->modulus)};
    case FieldKind::QuadExt: {
      const FieldElement& u = x.coeffs()[0];
      const FieldElement& v = x.coeffs()[1];
      FieldElement norm = u * u - *k->radicand * v * v;
      FieldElement ninv = inverse(norm);
      return {k, Coeffs{u * ninv, -(v * ninv)}};
    }
    case FieldKind::FunctionField:
      return detail::make_ratfunc(k, x.ratfunc().den, x.ratfunc().num);
    case FieldKind::QuotientExt: {
      // Extended Euclid on (defining, x).
      Coeffs r0 = k->defining, r1 = x.coeffs();
      Coeffs s0, s1 = {one(k->base)};
      while (!r1.empty()) {
        auto [q, r] = upoly::divmod(r0, r1);
        Coeffs s = upoly::sub(s0, upoly::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
      }
      if (r0.size() != 1) throw Error(ErrorCode::ZeroDivisor, "element is a zero divisor in the quotient ring");
      return detail::make_quot(k, upoly::scale(s0, inverse(r0[0])));
    }
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown field kind");
}

inline bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }

inline bool operator==(const FieldElement& x, const FieldElement& y) {
  return same_field(x.field(), y.field()) && x.repr() == y.repr();
}

inline bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

inline FieldElement pow(FieldElement x, unsigned long e) {
  FieldElement r = one(x.field());
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Tower navigation

/// Generator of a simple extension: sqrt(d), the transcendental variable,
/// or the class of the polynomial variable.
inline FieldElement generator(const Field& k) {
  switch (k->kind) {
    case FieldKind::QuadExt: return {k, Coeffs{zero(k->base), one(k->base)}};
    case FieldKind::FunctionField: return {k, RatFunc{{zero(k->base), one(k->base)}, {one(k->base)}}};
    case FieldKind::QuotientExt: return detail::make_quot(k, {zero(k->base), one(k->base)});
    default: throw Error(ErrorCode::UnsupportedField, "field has no generator");
  }
}

/// True if `sub` occurs in the tower below (or equal to) `k`.
inline bool is_subfield(const Field& sub, const Field& k) {
  for (Field f = k; f; f = f->base)
    if (same_field(sub, f)) return true;
  return false;
}

/// Lifts an element of a subfield of `k` into `k`.
inline FieldElement embed(const FieldElement& x, const Field& k) {
  if (same_field(x.field(), k)) return x;
  if (!k->base) throw Error(ErrorCode::DescriptorMismatch, "element does not belong to a subfield");
  FieldElement y = embed(x, k->base);
  switch (k->kind) {
    case FieldKind::QuadExt: return {k, Coeffs{y, zero(k->base)}};
    case FieldKind::FunctionField:
      if (y.is_zero()) return zero(k);
      return {k, RatFunc{{y}, {one(k->base)}}};
    case FieldKind::QuotientExt:
      if (y.is_zero()) return zero(k);
      return {k, Coeffs{y}};
    default: throw Error(ErrorCode::DescriptorMismatch, "element does not belong to a subfield");
  }
}

inline FieldElement from_rational(const Field& k, const Rational& q) {
  if (k->kind == FieldKind::Rationals) return {k, q};
  return from_integer(k, q.get_num()) / from_integer(k, q.get_den());
}

/// Prime subfield characteristic (0 for Q).
inline std::uint64_t characteristic(const Field& k) {
  Field f = k;
  while (f->base) f = f->base;
  return f->kind == FieldKind::PrimeField ? f->modulus : 0;
}

// ---------------------------------------------------------------------------
// Square roots

namespace detail {

inline std::optional<std::uint64_t> sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return std::min(r, p - r);
}

inline std::optional<FieldElement> try_sqrt(const FieldElement& x);

/// Square root of a univariate polynomial whose leading coefficient admits
/// a square-root test; requires characteristic != 2.
inline std::optional<Coeffs> sqrt_poly(const Coeffs& a) {
  if (a.empty()) return Coeffs{};
  if (a.size() % 2 == 0) return std::nullopt;
  const Field& k = a.back().field();
  if (characteristic(k) == 2) throw Error(ErrorCode::UnsupportedField, "polynomial square roots in characteristic 2");
  auto lead = try_sqrt(a.back());
  if (!lead) return std::nullopt;
  std::size_t half = (a.size() - 1) / 2;
  Coeffs r(half + 1, zero(k));
  r[half] = *lead;
  FieldElement two_lead_inv = inverse(from_integer(k, 2) * *lead);
  for (std::size_t i = 1; i <= half; ++i) {
    // coefficient of t^(2*half - i)
    std::size_t target = 2 * half - i;
    FieldElement acc = a[target];
    for (std::size_t j = half - i + 1; j <= half; ++j) {
      std::size_t l = target - j;
      if (l > half || l < half - i + 1) continue;
      acc -= r[j] * r[l];
    }
    r[half - i] = acc * two_lead_inv;
  }
  if (upoly::mul(r, r) != a) return std::nullopt;
  return r;
}

inline std::optional<FieldElement> try_sqrt(const FieldElement& x) {
  const Field& k = x.field();
  switch (k->kind) {
    case FieldKind::Rationals: {
      const Rational& q = x.rational();
      if (q < 0 || !is_perfect_square(q.get_num()) || !is_perfect_square(q.get_den())) return std::nullopt;
      return FieldElement{k, Rational(isqrt(q.get_num()), isqrt(q.get_den()))};
    }
    case FieldKind::PrimeField: {
      auto r = sqrt_mod_prime(x.residue(), k->modulus);
      if (!r) return std::nullopt;
      return FieldElement{k, *r};
    }
    case FieldKind::FunctionField: {
      // num/den is a square iff num*den is a square polynomial.
      const RatFunc& f = x.ratfunc();
      auto s = sqrt_poly(upoly::mul(f.num, f.den));
      if (!s) return std::nullopt;
      return make_ratfunc(k, *s, f.den);
    }
    default: throw Error(ErrorCode::UnsupportedField, "no square-root test for this field kind");
  }
}

}  // namespace detail

/// Square root in Q (nonnegative root) or F_p (the smaller residue).
inline std::optional<FieldElement> is_square(const FieldElement& x) {
  FieldKind kind = x.kind();
  if (kind != FieldKind::Rationals && kind != FieldKind::PrimeField)
    throw Error(ErrorCode::UnsupportedField, "is_square supports Q and F_p only");
  return detail::try_sqrt(x);
}

// ---------------------------------------------------------------------------
// Field constructors

inline Field prime_field(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 62) || !is_probable_prime(Integer(static_cast<unsigned long>(p))))
    throw Error(ErrorCode::InvalidDescriptor, "modulus " + std::to_string(p) + " is not a supported prime");
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::PrimeField;
  d->modulus = p;
  return d;
}

inline Field function_field(const Field& base, const std::string& var) {
  if (var.empty()) throw Error(ErrorCode::InvalidDescriptor, "function field needs a variable name");
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::FunctionField;
  d->base = base;
  d->var = var;
  return d;
}

/// Q(sqrt(d)) and friends. Over Q the radicand is replaced by its square-free
/// integer part, so sqrt(240) and sqrt(15) give the same field.
inline Field quadratic_extension(const Field& base, const FieldElement& d) {
  require_same(base, d.field());
  if (d.is_zero()) throw Error(ErrorCode::InvalidDescriptor, "radicand is zero");
  FieldElement radicand = d;
  if (base->kind == FieldKind::Rationals) {
    Integer n = d.rational().get_num() * d.rational().get_den();
    auto [s, free] = square_free_decompose(n);
    if (n < 0) free = -free;
    if (free == 1) throw Error(ErrorCode::InvalidDescriptor, "radicand " + d.rational().get_str() + " is a square");
    radicand = FieldElement{base, Rational(free)};
  } else {
    std::optional<FieldElement> root;
    try {
      root = detail::try_sqrt(d);
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidDescriptor, "cannot verify that the radicand is a non-square");
    }
    if (root) throw Error(ErrorCode::InvalidDescriptor, "radicand is a square in the base field");
  }
  auto out = std::make_shared<FieldDescriptor>();
  out->kind = FieldKind::QuadExt;
  out->base = base;
  out->radicand = radicand;
  return out;
}

namespace detail {

inline bool has_rational_root(const Coeffs& monic_poly) {
  // Clear denominators, then test p/q with p | a0, q | an.
  Integer l = 1;
  for (const auto& c : monic_poly) l = lcm(l, c.rational().get_den());
  std::vector<Integer> ints;
  for (const auto& c : monic_poly) {
    Rational v = c.rational() * l;
    ints.push_back(v.get_num());
  }
  if (ints.front() == 0) return true;
  auto ps = divisors(ints.front());
  auto qs = divisors(ints.back());
  for (const auto& p : ps)
    for (const auto& q : qs)
      for (int sign : {1, -1}) {
        Rational r(Integer(sign * p), q);
        r.canonicalize();
        Rational acc = 0;
        for (auto it = monic_poly.rbegin(); it != monic_poly.rend(); ++it) acc = acc * r + it->rational();
        if (acc == 0) return true;
      }
  return false;
}

/// x^e mod f over F_p.
inline Coeffs powmod_poly(Coeffs base, Integer e, const Coeffs& f) {
  Coeffs r = {one(f.back().field())};
  base = upoly::mod(base, f);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = upoly::mod(upoly::mul(r, base), f);
    base = upoly::mod(upoly::mul(base, base), f);
    e >>= 1;
  }
  return r;
}

/// Irreducibility over F_p by the gcd(x^(p^i) - x, f) test.
inline bool irreducible_mod_p(const Coeffs& f) {
  const Field& k = f.back().field();
  Integer p(static_cast<unsigned long>(k->modulus));
  Coeffs x = {zero(k), one(k)};
  Coeffs xp = x;
  for (int i = 1; i <= upoly::degree(f) / 2; ++i) {
    xp = powmod_poly(xp, p, f);
    Coeffs g = upoly::gcd(upoly::sub(xp, x), f);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace detail

/// base[var]/(poly). Degree must be >= 2 and the polynomial irreducible; the
/// irreducibility test covers quadratics over any base with a square-root
/// test, cubics over Q, and every degree over F_p.
inline Field quotient_extension(const Field& base, const std::string& var, Coeffs poly) {
  upoly::trim(poly);
  for (const auto& c : poly) require_same(base, c.field());
  if (upoly::degree(poly) < 2) throw Error(ErrorCode::InvalidDescriptor, "defining polynomial must have degree >= 2");
  poly = upoly::monic(poly);
  bool irreducible = false;
  if (poly.size() == 3) {
    if (characteristic(base) == 2) {
      if (base->kind != FieldKind::PrimeField) throw Error(ErrorCode::InvalidDescriptor, "no irreducibility test in characteristic 2");
      irreducible = detail::irreducible_mod_p(poly);
    } else {
      FieldElement disc = poly[1] * poly[1] - from_integer(base, 4) * poly[0];
      std::optional<FieldElement> root;
      try {
        root = detail::try_sqrt(disc);
      } catch (const Error&) {
        throw Error(ErrorCode::InvalidDescriptor, "no irreducibility test available for this base field");
      }
      irreducible = !root.has_value();
    }
  } else if (base->kind == FieldKind::PrimeField) {
    irreducible = detail::irreducible_mod_p(poly);
  } else if (base->kind == FieldKind::Rationals && poly.size() == 4) {
    irreducible = !detail::has_rational_root(poly);
  } else {
    throw Error(ErrorCode::InvalidDescriptor, "no irreducibility test available for this degree and base");
  }
  if (!irreducible) throw Error(ErrorCode::InvalidDescriptor, "defining polynomial is reducible");
  auto out = std::make_shared<FieldDescriptor>();
  out->kind = FieldKind::QuotientExt;
  out->base = base;
  out->var = var;
  out->defining = std::move(poly);
  return out;
}

/// Remainder of a base-coefficient polynomial modulo the defining polynomial.
inline FieldElement reduce_in_quotient(const Coeffs& poly, const Field& quotient) {
  if (quotient->kind != FieldKind::QuotientExt)
    throw Error(ErrorCode::DescriptorMismatch, "reduce_in_quotient needs a quotient extension");
  for (const auto& c : poly) require_same(quotient->base, c.field());
  Coeffs p = poly;
  upoly::trim(p);
  return detail::make_quot(quotient, p);
}

/// r*sqrt(d0) for a radicand d = r^2*d0 of the base; fails if d/d0 is not a square.
inline FieldElement sqrt_in(const Field& quad, const FieldElement& d) {
  if (quad->kind != FieldKind::QuadExt) throw Error(ErrorCode::DescriptorMismatch, "sqrt_in needs a quadratic extension");
  FieldElement ratio = d / *quad->radicand;
  auto r = detail::try_sqrt(ratio);
  if (!r) throw Error(ErrorCode::ParameterInvalid, "radicand does not match the extension");
  return embed(*r, quad) * generator(quad);
}

// ---------------------------------------------------------------------------
// Text form

namespace detail {

inline bool is_plain_number(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  bool slash = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '/' && !slash) {
      slash = true;
      continue;
    }
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

/// Renders coefficient * monomial as a single term.
inline std::string format_term(const std::string& coeff, const std::string& mono) {
  if (mono.empty()) return is_plain_number(coeff) ? coeff : "(" + coeff + ")";
  if (coeff == "1") return mono;
  if (coeff == "-1") return "-" + mono;
  if (is_plain_number(coeff)) return coeff + "*" + mono;
  return "(" + coeff + ")*" + mono;
}

inline std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i][0] == '-') out += " - " + terms[i].substr(1);
    else out += " + " + terms[i];
  }
  return out;
}

inline std::string monomial_text(const std::string& var, std::size_t e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

}  // namespace detail

inline std::string to_string(const FieldElement& x);

/// Univariate polynomial text, highest degree first.
inline std::string to_string(const Coeffs& poly, const std::string& var) {
  std::vector<std::string> terms;
  for (std::size_t i = poly.size(); i-- > 0;) {
    if (poly[i].is_zero()) continue;
    terms.push_back(detail::format_term(to_string(poly[i]), detail::monomial_text(var, i)));
  }
  if (terms.size() == 1 && terms[0].front() == '(' && poly.size() == 1) return to_string(poly[0]);
  return detail::join_terms(terms);
}

inline std::string to_string(const FieldElement& x) {
  const Field& k = x.field();
  switch (k->kind) {
    case FieldKind::Rationals: return x.rational().get_str();
    case FieldKind::PrimeField: return std::to_string(x.residue());
    case FieldKind::QuadExt: {
      std::vector<std::string> terms;
      const auto& c = x.coeffs();
      std::string root = "sqrt(" + to_string(*k->radicand) + ")";
      if (!c[0].is_zero()) terms.push_back(detail::format_term(to_string(c[0]), ""));
      if (!c[1].is_zero()) terms.push_back(detail::format_term(to_string(c[1]), root));
      if (terms.size() == 1 && c[1].is_zero()) return to_string(c[0]);
      return detail::join_terms(terms);
    }
    case FieldKind::FunctionField: {
      const RatFunc& f = x.ratfunc();
      std::string num = to_string(f.num, k->var);
      if (f.den.size() == 1) return num;
      return "(" + num + ")/(" + to_string(f.den, k->var) + ")";
    }
    case FieldKind::QuotientExt: return to_string(x.coeffs(), k->var);
  }
  return "?";
}

inline std::string to_string(const Field& k) {
  switch (k->kind) {
    case FieldKind::Rationals: return "QQ";
    case FieldKind::PrimeField: return "GF(" + std::to_string(k->modulus) + ")";
    case FieldKind::QuadExt: return to_string(k->base) + "[sqrt(" + to_string(*k->radicand) + ")]";
    case FieldKind::FunctionField: return to_string(k->base) + "(" + k->var + ")";
    case FieldKind::QuotientExt:
      return to_string(k->base) + "[" + k->var + "]/(" + to_string(k->defining, k->var) + ")";
  }
  return "?";
}

}  // namespace boroczky
