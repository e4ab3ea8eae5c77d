#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "boroczky/boroczky.hpp"

namespace boroczky::proptest {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(long bound = 9) {
    Rational q(uniform(-bound, bound), uniform(1, bound));
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(long bound = 9) {
    Rational q;
    do q = rational(bound);
    while (q == 0);
    return q;
  }

  Coeffs upoly(const Field& base, int max_degree) {
    Coeffs c;
    int d = static_cast<int>(uniform(0, max_degree));
    for (int i = 0; i <= d; ++i) c.push_back(element(base));
    upoly::trim(c);
    return c;
  }

  /// Any element of a field of the tower, small in size.
  FieldElement element(const Field& k) {
    switch (k->kind) {
      case FieldKind::Rationals: return from_rational(k, rational());
      case FieldKind::PrimeField:
        return from_integer(k, Integer(static_cast<unsigned long>(uniform(0, static_cast<long>(std::min<std::uint64_t>(k->modulus - 1, 1L << 40))))));
      case FieldKind::QuadExt: return embed(element(k->base), k) + embed(element(k->base), k) * generator(k);
      case FieldKind::FunctionField: {
        FieldElement t = generator(k);
        auto poly = [&] {
          FieldElement acc = zero(k);
          int d = static_cast<int>(uniform(0, 2));
          for (int i = d; i >= 0; --i) acc = acc * t + embed(element(k->base), k);
          return acc;
        };
        FieldElement den = poly();
        while (den.is_zero()) den = poly();
        return poly() / den;
      }
      case FieldKind::QuotientExt: {
        Coeffs c;
        for (int i = 0; i < upoly::degree(k->defining); ++i) c.push_back(element(k->base));
        return reduce_in_quotient(c, k);
      }
    }
    return zero(k);
  }

  FieldElement nonzero(const Field& k) {
    FieldElement x = element(k);
    while (x.is_zero()) x = element(k);
    return x;
  }

  ProjPoint<FieldElement> point(const Field& k) {
    std::array<FieldElement, 3> c{element(k), element(k), element(k)};
    while (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) c = {element(k), element(k), element(k)};
    return ProjPoint<FieldElement>(c);
  }

  ProjLine<FieldElement> line(const Field& k) {
    auto p = point(k);
    return ProjLine<FieldElement>(p.coords());
  }

  /// A polynomial in `ring` with at most `terms` terms of total degree at
  /// most `degree`.
  QPoly poly(const QRing& ring, int terms, int degree) {
    QPoly f(ring);
    int n = static_cast<int>(uniform(1, terms));
    for (int i = 0; i < n; ++i) {
      Monomial m;
      int left = static_cast<int>(uniform(0, degree));
      for (std::size_t v = 0; v < ring->nvars() && left > 0; ++v) {
        int e = v + 1 == ring->nvars() ? left : static_cast<int>(uniform(0, left));
        m.set(v, static_cast<std::uint16_t>(e));
        left -= e;
      }
      f = f + QPoly::monomial(ring, m, nonzero_rational(5));
    }
    return f;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace boroczky::proptest
