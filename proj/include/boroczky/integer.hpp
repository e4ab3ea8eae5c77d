#pragma once

// Arbitrary-precision integer helpers on top of GMP.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace boroczky {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

inline bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Factorization by trial division; adequate for the radicands and
/// discriminants met here (a few dozen digits at most after cofactor checks).
inline std::vector<std::pair<Integer, unsigned>> factor_integer(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  if (n < 0) n = -n;
  if (n < 2) return out;
  auto take = [&](const Integer& p) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  take(2);
  take(3);
  for (Integer p = 5; p * p <= n; p += 6) {
    take(p);
    Integer q = p + 2;
    take(q);
    if (n > 1 && is_probable_prime(n)) break;
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Writes |n| = s^2 * d with d square-free; returns (s, d).
inline std::pair<Integer, Integer> square_free_decompose(const Integer& n) {
  Integer s = 1, d = 1;
  for (const auto& [p, e] : factor_integer(n)) {
    for (unsigned i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) d *= p;
  }
  return {s, d};
}

/// All positive divisors of |n|, sorted.
inline std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> ds{1};
  for (const auto& [p, e] : factor_integer(n)) {
    std::size_t count = ds.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

/// Inverse modulo a prime p; a must be nonzero mod p.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a % p);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

/// Reduces an integer into [0, p).
inline std::uint64_t reduce_mod(const Integer& n, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == 8);
  return mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(p));
}

}  // namespace boroczky
