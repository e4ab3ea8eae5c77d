#pragma once

// Sparse multivariate polynomials over Q, Z (internal) and F_p with a
// configurable monomial order.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "integer.hpp"

namespace boroczky {

inline constexpr std::size_t kMaxVars = 8;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  std::uint16_t operator[](std::size_t i) const { return e[i]; }

  void set(std::size_t i, std::uint16_t v) {
    deg = deg - e[i] + v;
    e[i] = v;
  }

  bool divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  bool is_one() const { return deg == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    r.deg = a.deg + b.deg;
    return r;
  }

  /// a / b; b must divide a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    r.deg = a.deg - b.deg;
    return r;
  }

  static Monomial variable(std::size_t i, std::uint16_t power = 1) {
    Monomial m;
    m.e[i] = power;
    m.deg = power;
    return m;
  }
};

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::min(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : m.e) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

enum class OrderKind { DegRevLex, Lex, Block };

/// Block(k) compares the first k variables by degrevlex and breaks ties on
/// the remaining ones by degrevlex; it eliminates the first k variables.
class MonomialOrder {
 public:
  static MonomialOrder degrevlex() { return {OrderKind::DegRevLex, 0}; }
  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder block(std::size_t k) { return {OrderKind::Block, k}; }

  OrderKind kind() const { return kind_; }
  std::size_t block_size() const { return block_; }

  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
    switch (kind_) {
      case OrderKind::Lex:
        for (std::size_t i = 0; i < nvars; ++i)
          if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        return 0;
      case OrderKind::DegRevLex:
        if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
        return revlex(a, b, 0, nvars);
      case OrderKind::Block: {
        std::uint32_t da = 0, db = 0;
        for (std::size_t i = 0; i < block_; ++i) {
          da += a.e[i];
          db += b.e[i];
        }
        if (da != db) return da > db ? 1 : -1;
        if (int c = revlex(a, b, 0, block_)) return c;
        if (a.deg - da != b.deg - db) return a.deg - da > b.deg - db ? 1 : -1;
        return revlex(a, b, block_, nvars);
      }
    }
    return 0;
  }

  std::string name() const {
    switch (kind_) {
      case OrderKind::Lex: return "lex";
      case OrderKind::DegRevLex: return "degrevlex";
      case OrderKind::Block: return "block(" + std::to_string(block_) + ")";
    }
    return "?";
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.block_ == b.block_;
  }

 private:
  MonomialOrder(OrderKind kind, std::size_t block) : kind_(kind), block_(block) {}

  static int revlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = hi; i-- > lo;)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
  }

  OrderKind kind_;
  std::size_t block_;
};

// ---------------------------------------------------------------------------
// Coefficient domains. Each exposes value_type and arithmetic as members so
// that F_p can carry its modulus.

struct RationalField {
  using value_type = Rational;
  static constexpr bool is_field = true;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& n) const { return Rational(n); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type div(const value_type& a, const value_type& b) const {
    if (sgn(b) == 0) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
    return a / b;
  }
  value_type inv(const value_type& a) const { return div(1, a); }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  bool operator==(const RationalField&) const { return true; }
};

/// Exact integer coefficients; div is exact division.
struct IntegerRing {
  using value_type = Integer;
  static constexpr bool is_field = false;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& n) const { return n; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type div(const value_type& a, const value_type& b) const {
    value_type q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  bool operator==(const IntegerRing&) const { return true; }
};

struct PrimeField64 {
  using value_type = std::uint64_t;
  static constexpr bool is_field = true;

  std::uint64_t p = 2;

  explicit PrimeField64(std::uint64_t modulus) : p(modulus) {
    if (modulus >= (std::uint64_t{1} << 62) || !is_probable_prime(Integer(static_cast<unsigned long>(modulus))))
      throw Error(ErrorCode::InvalidDescriptor, "modulus " + std::to_string(modulus) + " is not a supported prime");
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& n) const { return reduce_mod(n, p); }
  value_type from_rational(const Rational& q) const {
    value_type d = reduce_mod(q.get_den(), p);
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes modulo " + std::to_string(p));
    return mulmod(reduce_mod(q.get_num(), p), invmod(d, p), p);
  }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
  value_type mul(value_type a, value_type b) const { return mulmod(a, b, p); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero modulo " + std::to_string(p));
    return invmod(a, p);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  std::string to_string(value_type a) const { return std::to_string(a); }
  bool operator==(const PrimeField64& o) const { return p == o.p; }
};

// ---------------------------------------------------------------------------
// Rings and polynomials

template <class D>
class PolyRing {
 public:
  PolyRing(D domain, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::degrevlex())
      : domain_(std::move(domain)), vars_(std::move(vars)), order_(order) {
    if (vars_.size() > kMaxVars)
      throw Error(ErrorCode::RingMismatch, "at most " + std::to_string(kMaxVars) + " variables are supported");
    if (order_.kind() == OrderKind::Block && order_.block_size() > vars_.size())
      throw Error(ErrorCode::RingMismatch, "block size exceeds the number of variables");
  }

  const D& domain() const { return domain_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const MonomialOrder& order() const { return order_; }

  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, vars_.size()); }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw Error(ErrorCode::VariableAbsent, "no variable named '" + std::string(name) + "'");
  }

  bool operator==(const PolyRing& o) const {
    return domain_ == o.domain_ && vars_ == o.vars_ && order_ == o.order_;
  }

 private:
  D domain_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

template <class D>
using RingPtr = std::shared_ptr<const PolyRing<D>>;

template <class D>
RingPtr<D> make_ring(D domain, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::degrevlex()) {
  return std::make_shared<const PolyRing<D>>(std::move(domain), std::move(vars), order);
}

template <class D>
struct Term {
  Monomial m;
  typename D::value_type c;
};

template <class D>
class Poly {
 public:
  using value_type = typename D::value_type;
  using TermT = Term<D>;

  Poly() = default;
  explicit Poly(RingPtr<D> ring) : ring_(std::move(ring)) {}
  /// Terms in any order; duplicates combined and zeros dropped.
  Poly(RingPtr<D> ring, std::vector<TermT> terms) : ring_(std::move(ring)), terms_(std::move(terms)) { normalize(); }

  static Poly constant(RingPtr<D> ring, const value_type& c) {
    Poly p(ring);
    if (!ring->domain().is_zero(c)) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Poly from_integer(RingPtr<D> ring, const Integer& n) {
    return constant(ring, ring->domain().from_integer(n));
  }
  static Poly variable(RingPtr<D> ring, std::size_t i, std::uint16_t power = 1) {
    Poly p(ring);
    p.terms_.push_back({Monomial::variable(i, power), ring->domain().one()});
    return p;
  }
  static Poly monomial(RingPtr<D> ring, const Monomial& m, const value_type& c) {
    Poly p(ring);
    if (!ring->domain().is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  /// Takes terms already sorted descending, unique and nonzero.
  static Poly from_sorted(RingPtr<D> ring, std::vector<TermT> terms) {
    Poly p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<D>& ring() const { return ring_; }
  const D& domain() const { return ring_->domain(); }
  const std::vector<TermT>& terms() const { return terms_; }
  std::vector<TermT>& mutable_terms() { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }

  const Monomial& lead_monomial() const { return terms_.front().m; }
  const value_type& lead_coeff() const { return terms_.front().c; }

  /// Maximum total degree; -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.deg));
    return d;
  }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.m.deg != terms_.front().m.deg) return false;
    return true;
  }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m[var]));
    return d;
  }

  bool involves(std::size_t var) const {
    for (const auto& t : terms_)
      if (t.m[var]) return true;
    return false;
  }

  value_type coeff_of(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.m == m) return t.c;
    return domain().zero();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = domain().neg(t.c);
    return r;
  }

  Poly& operator+=(const Poly& o) { return *this = combine(*this, o, false); }
  Poly& operator-=(const Poly& o) { return *this = combine(*this, o, true); }
  Poly& operator*=(const Poly& o) { return *this = multiply(*this, o); }

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, true); }
  friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].m != b.terms_[i].m || !(a.terms_[i].c == b.terms_[i].c)) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(const value_type& c) const {
    if (domain().is_zero(c)) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.c = domain().mul(t.c, c);
    return r;
  }

  Poly shifted(const Monomial& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) t.m = t.m * m;
    return r;
  }

  /// c * m * this, order preserved because monomial orders are multiplicative.
  Poly mul_term(const Monomial& m, const value_type& c) const {
    if (domain().is_zero(c)) return Poly(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, domain().mul(t.c, c)});
    return r;
  }

  Poly pow(unsigned e) const {
    Poly r = from_integer(ring_, 1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  /// Partial derivative with respect to variable i.
  Poly derivative(std::size_t i) const {
    std::vector<TermT> out;
    for (const auto& t : terms_) {
      if (!t.m[i]) continue;
      Monomial m = t.m;
      m.set(i, static_cast<std::uint16_t>(t.m[i] - 1));
      value_type c = domain().mul(t.c, domain().from_integer(Integer(static_cast<unsigned long>(t.m[i]))));
      if (!domain().is_zero(c)) out.push_back({m, c});
    }
    return Poly(ring_, std::move(out));
  }

  /// Evaluates at a point given as domain values, one per variable.
  value_type evaluate(const std::vector<value_type>& point) const {
    const D& d = domain();
    value_type acc = d.zero();
    for (const auto& t : terms_) {
      value_type v = t.c;
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        for (std::uint16_t k = 0; k < t.m[i]; ++k) v = d.mul(v, point[i]);
      acc = d.add(acc, v);
    }
    return acc;
  }

  /// Substitutes variable i by a polynomial q of the same ring.
  Poly substitute(std::size_t i, const Poly& q) const {
    Poly acc(ring_);
    std::vector<Poly> powers{from_integer(ring_, 1)};
    for (const auto& t : terms_) {
      while (powers.size() <= t.m[i]) powers.push_back(powers.back() * q);
      Monomial m = t.m;
      m.set(i, 0);
      acc += powers[t.m[i]].mul_term(m, t.c);
    }
    return acc;
  }

  /// Re-sorts for another ring with the same variables and domain.
  Poly in_ring(const RingPtr<D>& other) const {
    if (other->nvars() != ring_->nvars() || !(other->domain() == domain()))
      throw Error(ErrorCode::RingMismatch, "ring change needs the same variables and coefficients");
    return Poly(other, terms_);
  }

  /// Sorts, combines duplicate monomials and drops zero terms.
  void normalize() {
    const auto& r = *ring_;
    std::sort(terms_.begin(), terms_.end(), [&](const TermT& a, const TermT& b) { return r.compare(a.m, b.m) > 0; });
    std::vector<TermT> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().m == t.m) out.back().c = domain().add(out.back().c, t.c);
      else out.push_back(std::move(t));
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!domain().is_zero(out[i].c)) out[w++] = std::move(out[i]);
    out.resize(w);
    terms_ = std::move(out);
  }

 private:
  static void require_ring(const Poly& a, const Poly& b) {
    if (a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_))
      throw Error(ErrorCode::RingMismatch, "polynomials belong to different rings");
  }

  static Poly combine(const Poly& a, const Poly& b, bool subtract) {
    require_ring(a, b);
    const auto& r = *a.ring_;
    const D& d = r.domain();
    std::vector<TermT> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c = i == a.terms_.size() ? -1 : j == b.terms_.size() ? 1 : r.compare(a.terms_[i].m, b.terms_[j].m);
      if (c > 0) {
        out.push_back(a.terms_[i++]);
      } else if (c < 0) {
        out.push_back({b.terms_[j].m, subtract ? d.neg(b.terms_[j].c) : b.terms_[j].c});
        ++j;
      } else {
        value_type s = subtract ? d.sub(a.terms_[i].c, b.terms_[j].c) : d.add(a.terms_[i].c, b.terms_[j].c);
        if (!d.is_zero(s)) out.push_back({a.terms_[i].m, std::move(s)});
        ++i;
        ++j;
      }
    }
    return from_sorted(a.ring_, std::move(out));
  }

  static Poly multiply(const Poly& a, const Poly& b) {
    require_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.ring_);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].m, b.terms_[0].c);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].m, a.terms_[0].c);
    const D& d = a.domain();
    std::vector<TermT> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) prod.push_back({s.m * t.m, d.mul(s.c, t.c)});
    return Poly(a.ring_, std::move(prod));
  }

  RingPtr<D> ring_;
  std::vector<TermT> terms_;
};

using QPoly = Poly<RationalField>;
using ZPoly = Poly<IntegerRing>;
using FpPoly = Poly<PrimeField64>;
using QRing = RingPtr<RationalField>;

// ---------------------------------------------------------------------------
// Conversions between Q and Z representations

/// Clears denominators and divides by the integer content; the leading
/// coefficient of the result is positive.
inline ZPoly primitive_integer(const QPoly& f, const RingPtr<IntegerRing>& zring) {
  Integer l = 1;
  for (const auto& t : f.terms()) l = lcm(l, t.c.get_den());
  std::vector<Term<IntegerRing>> out;
  out.reserve(f.size());
  Integer g = 0;
  for (const auto& t : f.terms()) {
    Integer v = t.c.get_num() * (l / t.c.get_den());
    g = gcd(g, v);
    out.push_back({t.m, v});
  }
  if (!out.empty()) {
    if (out.front().c < 0) g = -g;
    for (auto& t : out) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  }
  return ZPoly::from_sorted(zring, std::move(out));
}

inline QPoly to_rational(const ZPoly& f, const QRing& qring) {
  std::vector<Term<RationalField>> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.m, Rational(t.c)});
  return QPoly::from_sorted(qring, std::move(out));
}

inline RingPtr<IntegerRing> integer_ring_like(const QRing& r) {
  return make_ring(IntegerRing{}, r->vars(), r->order());
}

/// Reduction of a Q polynomial modulo p; throws if a denominator vanishes.
inline FpPoly reduce_mod_p(const QPoly& f, const RingPtr<PrimeField64>& fring) {
  std::vector<Term<PrimeField64>> out;
  for (const auto& t : f.terms()) {
    auto c = fring->domain().from_rational(t.c);
    if (c) out.push_back({t.m, c});
  }
  return FpPoly::from_sorted(fring, std::move(out));
}

/// Scales to leading coefficient 1 (fields only).
template <class D>
Poly<D> make_monic(const Poly<D>& f) {
  if (f.is_zero() || f.domain().is_one(f.lead_coeff())) return f;
  return f.scaled(f.domain().inv(f.lead_coeff()));
}

inline Integer integer_content(const ZPoly& f) {
  Integer g = 0;
  for (const auto& t : f.terms()) {
    g = gcd(g, t.c);
    if (g == 1) break;
  }
  return g;
}

/// Divides by the content and makes the leading coefficient positive.
inline ZPoly primitive_part(const ZPoly& f) {
  if (f.is_zero()) return f;
  Integer g = integer_content(f);
  if (f.lead_coeff() < 0) g = -g;
  if (g == 1) return f;
  ZPoly r = f;
  for (auto& t : r.mutable_terms()) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// Text form: "a^4*b - a^2*b^2 - a^3 + 3/2*a^2*b - 1"

namespace detail {

inline std::string monomial_string(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

}  // namespace detail

template <class D>
std::string to_string(const Poly<D>& f) {
  if (f.is_zero()) return "0";
  const D& d = f.domain();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string c = d.to_string(t.c);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c = c.substr(1);
    std::string mono = detail::monomial_string(t.m, f.ring()->vars());
    std::string body = mono.empty() ? c : (c == "1" ? mono : c + "*" + mono);
    if (first) out += (negative ? "-" : "") + body;
    else out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

namespace detail {

/// Recursive-descent parser for polynomial text over a coefficient domain;
/// division is allowed by nonzero constants only.
template <class D>
class PolyParser {
 public:
  PolyParser(RingPtr<D> ring, std::string_view text) : ring_(std::move(ring)), text_(text) {}

  Poly<D> parse() {
    Poly<D> p = expr();
    skip();
    if (pos_ < text_.size()) fail("trailing characters");
    return p;
  }

 private:
  Poly<D> expr() {
    Poly<D> acc = term();
    for (;;) {
      skip();
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Poly<D> term() {
    Poly<D> acc = unary();
    for (;;) {
      skip();
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        Poly<D> den = unary();
        if (!den.is_constant() || den.is_zero()) fail("division by a non-constant or zero");
        acc = acc.scaled(ring_->domain().inv(den.lead_coeff()));
      } else {
        return acc;
      }
    }
  }

  Poly<D> unary() {
    skip();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly<D> power() {
    Poly<D> base = atom();
    skip();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      return base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Poly<D> atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (accept('(')) {
      Poly<D> p = expr();
      skip();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly<D>::from_integer(ring_, Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        if (ring_->vars()[i] == name) return Poly<D>::variable(ring_, i);
      fail("unknown variable '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  RingPtr<D> ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class D>
Poly<D> parse_poly(const RingPtr<D>& ring, std::string_view text) {
  return detail::PolyParser<D>(ring, text).parse();
}

}  // namespace boroczky
