#pragma once

// Division, gcd, resultants, Buchberger Groebner bases and ideal
// operations on top of poly.hpp.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace boroczky {

// ---------------------------------------------------------------------------
// Division

template <class D>
struct DivisionResult {
  std::vector<Poly<D>> quotients;
  Poly<D> remainder;
};

/// Multivariate division over a field: f = sum q_i d_i + r, and no term of r
/// is divisible by a leading monomial of the divisors.
template <class D>
DivisionResult<D> divide(const Poly<D>& f, const std::vector<Poly<D>>& divisors) {
  static_assert(D::is_field, "division with remainder needs a coefficient field");
  const auto& ring = f.ring();
  for (const auto& d : divisors) {
    if (!(*d.ring() == *ring)) throw Error(ErrorCode::RingMismatch, "divisor belongs to a different ring");
    if (d.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  }
  const D& dom = ring->domain();
  std::vector<std::vector<Term<D>>> q(divisors.size());
  std::vector<Term<D>> r;
  Poly<D> p = f;
  while (!p.is_zero()) {
    const Term<D>& lead = p.terms().front();
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const auto& d = divisors[i];
      if (!d.lead_monomial().divides(lead.m)) continue;
      Monomial m = lead.m / d.lead_monomial();
      auto c = dom.div(lead.c, d.lead_coeff());
      q[i].push_back({m, c});
      p -= d.mul_term(m, c);
      reduced = true;
      break;
    }
    if (!reduced) {
      r.push_back(lead);
      auto& ts = p.mutable_terms();
      ts.erase(ts.begin());
    }
  }
  DivisionResult<D> out{{}, Poly<D>::from_sorted(ring, std::move(r))};
  for (auto& qi : q) out.quotients.push_back(Poly<D>::from_sorted(ring, std::move(qi)));
  return out;
}

/// Exact quotient f / g, or nullopt when g does not divide f. Works over
/// fields and over Z.
template <class D>
std::optional<Poly<D>> exact_divide(const Poly<D>& f, const Poly<D>& g) {
  if (g.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  const D& dom = f.domain();
  std::vector<Term<D>> q;
  Poly<D> p = f;
  while (!p.is_zero()) {
    if (!g.lead_monomial().divides(p.lead_monomial())) return std::nullopt;
    typename D::value_type c;
    if constexpr (D::is_field) {
      c = dom.div(p.lead_coeff(), g.lead_coeff());
    } else {
      if (!mpz_divisible_p(p.lead_coeff().get_mpz_t(), g.lead_coeff().get_mpz_t())) return std::nullopt;
      c = dom.div(p.lead_coeff(), g.lead_coeff());
    }
    Monomial m = p.lead_monomial() / g.lead_monomial();
    q.push_back({m, c});
    p -= g.mul_term(m, c);
  }
  return Poly<D>::from_sorted(f.ring(), std::move(q));
}

template <class D>
Poly<D> divide_exactly(const Poly<D>& f, const Poly<D>& g) {
  auto q = exact_divide(f, g);
  if (!q) throw Error(ErrorCode::InternalMismatch, "expected exact division");
  return *q;
}

// ---------------------------------------------------------------------------
// Multivariate gcd over Z (recursive primitive PRS), lifted to Q.

namespace detail {

/// Coefficients of f as a polynomial in variable v; entry k multiplies v^k.
inline std::vector<ZPoly> coefficients_in(const ZPoly& f, std::size_t v) {
  std::vector<std::vector<Term<IntegerRing>>> buckets(static_cast<std::size_t>(std::max(0, f.degree_in(v)) + 1));
  for (const auto& t : f.terms()) {
    Monomial m = t.m;
    m.set(v, 0);
    buckets[t.m[v]].push_back({m, t.c});
  }
  std::vector<ZPoly> out;
  for (auto& b : buckets) out.push_back(ZPoly::from_sorted(f.ring(), std::move(b)));
  return out;
}

inline ZPoly positive_lead(ZPoly f) {
  if (!f.is_zero() && f.lead_coeff() < 0) f = -f;
  return f;
}

inline ZPoly gcd_z(const ZPoly& f, const ZPoly& g);

inline ZPoly content_in(const ZPoly& f, std::size_t v) {
  ZPoly c(f.ring());
  for (const auto& k : coefficients_in(f, v)) {
    if (k.is_zero()) continue;
    c = gcd_z(c, k);
    if (c.is_constant() && c.lead_coeff() == 1) break;
  }
  return c;
}

inline ZPoly leading_in(const ZPoly& f, std::size_t v) { return coefficients_in(f, v).back(); }

/// lc(B)^e * A - Q * B for the PRS; only the remainder is needed.
inline ZPoly pseudo_remainder(ZPoly a, const ZPoly& b, std::size_t v) {
  int db = b.degree_in(v);
  ZPoly lb = leading_in(b, v);
  while (!a.is_zero() && a.degree_in(v) >= db) {
    int k = a.degree_in(v) - db;
    ZPoly la = leading_in(a, v);
    a = lb * a - la * b.shifted(Monomial::variable(v, static_cast<std::uint16_t>(k)));
  }
  return a;
}

inline ZPoly monomial_gcd(const ZPoly& mono, const ZPoly& g) {
  Monomial m = mono.lead_monomial();
  Integer c = gcd(mono.lead_coeff(), integer_content(g));
  for (const auto& t : g.terms()) m = boroczky::gcd(m, t.m);
  return ZPoly::monomial(mono.ring(), m, abs(c));
}

inline ZPoly gcd_z(const ZPoly& f, const ZPoly& g) {
  if (f.is_zero()) return positive_lead(g);
  if (g.is_zero()) return positive_lead(f);
  if (f.is_monomial()) return monomial_gcd(f, g);
  if (g.is_monomial()) return monomial_gcd(g, f);
  std::size_t nv = f.ring()->nvars();
  std::size_t v = nv;
  for (std::size_t i = 0; i < nv && v == nv; ++i)
    if (f.involves(i) || g.involves(i)) v = i;
  if (v == nv) return ZPoly::from_integer(f.ring(), gcd(f.lead_coeff(), g.lead_coeff()));
  if (!f.involves(v)) return gcd_z(f, content_in(g, v));
  if (!g.involves(v)) return gcd_z(content_in(f, v), g);
  ZPoly cf = content_in(f, v), cg = content_in(g, v);
  ZPoly c = gcd_z(cf, cg);
  ZPoly a = divide_exactly(f, cf), b = divide_exactly(g, cg);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  while (!b.is_zero() && b.degree_in(v) > 0) {
    ZPoly r = pseudo_remainder(a, b, v);
    a = std::move(b);
    if (r.is_zero()) {
      b = ZPoly(f.ring());
    } else {
      b = divide_exactly(r, content_in(r, v));
    }
  }
  ZPoly h = b.is_zero() ? a : ZPoly::from_integer(f.ring(), 1);
  return positive_lead(c * h);
}

}  // namespace detail

/// Primitive gcd over Z, positive leading coefficient.
inline ZPoly gcd(const ZPoly& f, const ZPoly& g) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::ZeroInput, "gcd of two zero polynomials");
  if (!(*f.ring() == *g.ring())) throw Error(ErrorCode::RingMismatch, "gcd operands belong to different rings");
  return detail::gcd_z(f, g);
}

/// Gcd over Q, scaled to leading coefficient 1 in the ring order.
inline QPoly gcd(const QPoly& f, const QPoly& g) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::ZeroInput, "gcd of two zero polynomials");
  if (!(*f.ring() == *g.ring())) throw Error(ErrorCode::RingMismatch, "gcd operands belong to different rings");
  auto zr = integer_ring_like(f.ring());
  return make_monic(to_rational(detail::gcd_z(primitive_integer(f, zr), primitive_integer(g, zr)), f.ring()));
}

// ---------------------------------------------------------------------------
// Resultant via a fraction-free (Bareiss) Sylvester determinant.

template <class D>
Poly<D> determinant(std::vector<std::vector<Poly<D>>> m, const RingPtr<D>& ring) {
  std::size_t n = m.size();
  if (n == 0) return Poly<D>::from_integer(ring, 1);
  bool negate = false;
  Poly<D> prev = Poly<D>::from_integer(ring, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t s = k + 1;
      while (s < n && m[s][k].is_zero()) ++s;
      if (s == n) return Poly<D>(ring);
      std::swap(m[k], m[s]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = divide_exactly(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = Poly<D>(ring);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Resultant of f and g with respect to variable `var`.
template <class D>
Poly<D> resultant(const Poly<D>& f, const Poly<D>& g, std::size_t var) {
  if (!(*f.ring() == *g.ring())) throw Error(ErrorCode::RingMismatch, "resultant operands belong to different rings");
  if (!f.involves(var) || !g.involves(var))
    throw Error(ErrorCode::VariableAbsent, "resultant variable '" + f.ring()->vars()[var] + "' is absent from an operand");
  auto split = [&](const Poly<D>& p) {
    std::vector<std::vector<Term<D>>> buckets(static_cast<std::size_t>(p.degree_in(var) + 1));
    for (const auto& t : p.terms()) {
      Monomial m = t.m;
      m.set(var, 0);
      buckets[t.m[var]].push_back({m, t.c});
    }
    std::vector<Poly<D>> out;
    for (auto& b : buckets) out.push_back(Poly<D>::from_sorted(p.ring(), std::move(b)));
    return out;
  };
  auto fc = split(f), gc = split(g);
  std::size_t m = fc.size() - 1, n = gc.size() - 1, size = m + n;
  const auto& ring = f.ring();
  std::vector<std::vector<Poly<D>>> s(size, std::vector<Poly<D>>(size, Poly<D>(ring)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = fc[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = gc[n - k];
  return determinant(std::move(s), ring);
}

// ---------------------------------------------------------------------------
// Buchberger

struct GroebnerOptions {
  std::uint64_t step_budget = 10'000'000;
  /// For homogeneous input: ignore S-pairs above this degree. The result is
  /// then a Groebner basis up to that degree only. Negative disables.
  int degree_limit = -1;
  /// Wall-clock budget in seconds; zero disables.
  double time_budget_seconds = 0;
};

struct GroebnerStats {
  std::uint64_t steps = 0;
  std::uint64_t pairs_reduced = 0;
  std::uint64_t zero_reductions = 0;
  std::uint64_t pairs_skipped_by_criteria = 0;
  bool truncated = false;
};

namespace detail {

/// Reduction engine shared by Z (fraction-free, primitive) and F_p (monic).
template <class D>
class GroebnerEngine {
 public:
  using P = Poly<D>;
  using V = typename D::value_type;
  using TermT = Term<D>;

  GroebnerEngine(RingPtr<D> ring, const GroebnerOptions& opts) : ring_(std::move(ring)), opts_(opts) {}

  std::vector<P> run(std::vector<P> gens) {
    bool homogeneous = std::all_of(gens.begin(), gens.end(), [](const P& p) { return p.is_homogeneous(); });
    if (opts_.degree_limit >= 0 && !homogeneous)
      throw Error(ErrorCode::RingMismatch, "degree-truncated Groebner bases need homogeneous generators");
    std::vector<P> input;
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      if (opts_.degree_limit >= 0 && g.total_degree() > opts_.degree_limit) {
        stats.truncated = true;
        continue;
      }
      input.push_back(normalize(std::move(g)));
    }
    std::sort(input.begin(), input.end(), [&](const P& a, const P& b) {
      return ring_->compare(a.lead_monomial(), b.lead_monomial()) < 0;
    });
    for (auto& g : input) {
      P h = reduce(g, true);
      if (!h.is_zero()) insert(normalize(std::move(h)));
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (ring_->compare(pairs_[k].lcm, pairs_[best].lcm) < 0) best = k;
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      ++stats.pairs_reduced;
      P h = reduce(s_polynomial(basis_[pr.i], basis_[pr.j], pr.lcm), true);
      if (h.is_zero()) {
        ++stats.zero_reductions;
        continue;
      }
      insert(normalize(std::move(h)));
    }
    return finish();
  }

  /// Installs an existing basis as the active set without forming pairs.
  void load_basis(std::vector<P> gb) {
    basis_ = std::move(gb);
    active_.clear();
    for (std::size_t i = 0; i < basis_.size(); ++i) active_.push_back(i);
    pairs_.clear();
  }

  /// Reduction against the current active basis; `full` also reduces
  /// non-leading terms.
  P reduce(const P& f, bool full) {
    const D& dom = ring_->domain();
    std::vector<TermT> p = f.terms();
    std::vector<TermT> r;
    std::size_t since_content = 0;
    while (!p.empty()) {
      const TermT& lead = p.front();
      const P* divisor = nullptr;
      for (std::size_t idx : active_) {
        if (basis_[idx].lead_monomial().divides(lead.m)) {
          divisor = &basis_[idx];
          break;
        }
      }
      if (!divisor) {
        if (!full) break;
        r.push_back(std::move(p.front()));
        p.erase(p.begin());
        continue;
      }
      tick();
      Monomial shift = lead.m / divisor->lead_monomial();
      if constexpr (D::is_field) {
        V c = dom.div(lead.c, divisor->lead_coeff());
        p = subtract_multiple(p, V{}, false, *divisor, shift, c);
      } else {
        Integer g = boroczky::gcd(lead.c, divisor->lead_coeff());
        Integer sf = divisor->lead_coeff() / g;
        Integer sg = lead.c / g;
        if (sf < 0) {
          sf = -sf;
          sg = -sg;
        }
        bool scale = sf != 1;
        p = subtract_multiple(p, sf, scale, *divisor, shift, sg);
        if (scale)
          for (auto& t : r) t.c *= sf;
        if (++since_content >= 8) {
          since_content = 0;
          remove_content(p, r);
        }
      }
    }
    if (!full) {
      for (auto& t : p) r.push_back(std::move(t));
      p.clear();
    }
    if constexpr (!D::is_field) remove_content(r, p);
    return P::from_sorted(ring_, std::move(r));
  }

  GroebnerStats stats;

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };

  P normalize(P p) {
    if (p.is_zero()) return p;
    if constexpr (D::is_field) return make_monic(p);
    else return primitive_part(p);
  }

  static void remove_content(std::vector<TermT>& a, std::vector<TermT>& b) {
    if constexpr (!D::is_field) {
      Integer g = 0;
      for (const auto& t : a) {
        g = boroczky::gcd(g, t.c);
        if (g == 1) return;
      }
      for (const auto& t : b) {
        g = boroczky::gcd(g, t.c);
        if (g == 1) return;
      }
      if (g <= 1) return;
      for (auto& t : a) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
      for (auto& t : b) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    }
  }

  /// sf * p - c * shift * g, dropping the cancelled leading term.
  std::vector<TermT> subtract_multiple(const std::vector<TermT>& p, const V& sf, bool scale, const P& g,
                                       const Monomial& shift, const V& c) const {
    const D& dom = ring_->domain();
    const auto& gt = g.terms();
    std::vector<TermT> out;
    out.reserve(p.size() + gt.size());
    std::size_t i = 1, j = 1;
    while (i < p.size() || j < gt.size()) {
      int cmp;
      Monomial gm;
      if (j < gt.size()) gm = gt[j].m * shift;
      if (i == p.size()) cmp = -1;
      else if (j == gt.size()) cmp = 1;
      else cmp = ring_->compare(p[i].m, gm);
      if (cmp > 0) {
        out.push_back({p[i].m, scale ? dom.mul(p[i].c, sf) : p[i].c});
        ++i;
      } else if (cmp < 0) {
        out.push_back({gm, dom.neg(dom.mul(gt[j].c, c))});
        ++j;
      } else {
        V v = scale ? dom.mul(p[i].c, sf) : p[i].c;
        v = dom.sub(v, dom.mul(gt[j].c, c));
        if (!dom.is_zero(v)) out.push_back({gm, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  P s_polynomial(const P& f, const P& g, const Monomial& l) const {
    const D& dom = ring_->domain();
    Monomial mf = l / f.lead_monomial(), mg = l / g.lead_monomial();
    if constexpr (D::is_field) {
      return f.mul_term(mf, dom.inv(f.lead_coeff())) - g.mul_term(mg, dom.inv(g.lead_coeff()));
    } else {
      Integer c = boroczky::gcd(f.lead_coeff(), g.lead_coeff());
      return f.mul_term(mf, g.lead_coeff() / c) - g.mul_term(mg, f.lead_coeff() / c);
    }
  }

  /// Gebauer-Moeller update: product and chain criteria.
  void insert(P h) {
    std::size_t k = basis_.size();
    const Monomial hm = h.lead_monomial();
    basis_.push_back(std::move(h));

    std::vector<Pair> c;
    for (std::size_t i : active_) c.push_back({i, k, lcm(basis_[i].lead_monomial(), hm)});
    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      bool keep = coprime(basis_[c[a].i].lead_monomial(), hm);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < c.size() && keep; ++b)
          if (c[b].lcm.divides(c[a].lcm)) keep = false;
        for (std::size_t b = 0; b < d.size() && keep; ++b)
          if (d[b].lcm.divides(c[a].lcm)) keep = false;
      }
      if (keep) d.push_back(c[a]);
      else ++stats.pairs_skipped_by_criteria;
    }
    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      bool chain = hm.divides(p.lcm) && lcm(basis_[p.i].lead_monomial(), hm) != p.lcm &&
                   lcm(basis_[p.j].lead_monomial(), hm) != p.lcm;
      if (chain) ++stats.pairs_skipped_by_criteria;
      else kept.push_back(p);
    }
    for (auto& p : d) {
      if (coprime(basis_[p.i].lead_monomial(), hm)) {
        ++stats.pairs_skipped_by_criteria;
        continue;
      }
      if (opts_.degree_limit >= 0 && static_cast<int>(p.lcm.deg) > opts_.degree_limit) {
        stats.truncated = true;
        continue;
      }
      kept.push_back(p);
    }
    pairs_ = std::move(kept);
    std::vector<std::size_t> still;
    for (std::size_t i : active_)
      if (!hm.divides(basis_[i].lead_monomial())) still.push_back(i);
    still.push_back(k);
    active_ = std::move(still);
  }

  /// Interreduces the active elements into the reduced basis.
  std::vector<P> finish() {
    std::vector<std::size_t> order = active_;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return ring_->compare(basis_[a].lead_monomial(), basis_[b].lead_monomial()) < 0;
    });
    std::vector<P> out;
    for (std::size_t idx : order) {
      active_.clear();
      for (std::size_t other : order)
        if (other != idx) active_.push_back(other);
      P lead_part = P::from_sorted(ring_, {basis_[idx].terms().front()});
      P tail = P::from_sorted(ring_, std::vector<TermT>(basis_[idx].terms().begin() + 1, basis_[idx].terms().end()));
      if constexpr (D::is_field) {
        out.push_back(normalize(lead_part + reduce(tail, true)));
      } else {
        // Fraction-free tail reduction rescales the whole element.
        P whole = basis_[idx];
        std::vector<TermT> head{whole.terms().front()};
        std::vector<TermT> rest(whole.terms().begin() + 1, whole.terms().end());
        out.push_back(normalize(reduce_tail(head, rest)));
      }
    }
    active_ = order;
    return out;
  }

  /// Over Z: reduces every non-leading term, scaling the head accordingly.
  P reduce_tail(std::vector<TermT> head, std::vector<TermT> p) {
    const D& dom = ring_->domain();
    std::vector<TermT> r;
    std::size_t since_content = 0;
    while (!p.empty()) {
      const TermT& lead = p.front();
      const P* divisor = nullptr;
      for (std::size_t idx : active_)
        if (basis_[idx].lead_monomial().divides(lead.m)) {
          divisor = &basis_[idx];
          break;
        }
      if (!divisor) {
        r.push_back(std::move(p.front()));
        p.erase(p.begin());
        continue;
      }
      tick();
      Integer g = boroczky::gcd(lead.c, divisor->lead_coeff());
      Integer sf = divisor->lead_coeff() / g;
      Integer sg = lead.c / g;
      if (sf < 0) {
        sf = -sf;
        sg = -sg;
      }
      bool scale = sf != 1;
      p = subtract_multiple(p, sf, scale, *divisor, lead.m / divisor->lead_monomial(), sg);
      if (scale) {
        for (auto& t : r) t.c = dom.mul(t.c, sf);
        for (auto& t : head) t.c = dom.mul(t.c, sf);
      }
      if (++since_content >= 8) {
        since_content = 0;
        std::vector<TermT> both = head;
        both.insert(both.end(), r.begin(), r.end());
        Integer c = 0;
        for (const auto& t : both) c = boroczky::gcd(c, t.c);
        for (const auto& t : p) c = boroczky::gcd(c, t.c);
        if (c > 1) {
          for (auto* vec : {&head, &r, &p})
            for (auto& t : *vec) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
        }
      }
    }
    head.insert(head.end(), r.begin(), r.end());
    return P::from_sorted(ring_, std::move(head));
  }

  void tick() {
    if (++stats.steps > opts_.step_budget)
      throw Error(ErrorCode::ResourceExceeded, "Groebner step budget of " + std::to_string(opts_.step_budget) + " exhausted");
    if (opts_.time_budget_seconds > 0 && stats.steps % 256 == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > opts_.time_budget_seconds)
      throw Error(ErrorCode::ResourceExceeded, "Groebner time budget exhausted");
  }

  RingPtr<D> ring_;
  GroebnerOptions opts_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  std::vector<P> basis_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

template <class D>
void require_common_ring(const std::vector<Poly<D>>& ps, const RingPtr<D>& ring) {
  for (const auto& p : ps)
    if (!(*p.ring() == *ring)) throw Error(ErrorCode::RingMismatch, "generator belongs to a different ring");
}

}  // namespace detail

/// Reduced Groebner basis, monic, sorted by increasing leading monomial.
inline std::vector<FpPoly> buchberger(const std::vector<FpPoly>& gens, const RingPtr<PrimeField64>& ring,
                                      const GroebnerOptions& opts = {}, GroebnerStats* stats = nullptr) {
  detail::require_common_ring(gens, ring);
  detail::GroebnerEngine<PrimeField64> engine(ring, opts);
  auto out = engine.run(gens);
  if (stats) *stats = engine.stats;
  return out;
}

/// Over Z the basis is primitive with positive leading coefficients.
inline std::vector<ZPoly> buchberger(const std::vector<ZPoly>& gens, const RingPtr<IntegerRing>& ring,
                                     const GroebnerOptions& opts = {}, GroebnerStats* stats = nullptr) {
  detail::require_common_ring(gens, ring);
  detail::GroebnerEngine<IntegerRing> engine(ring, opts);
  auto out = engine.run(gens);
  if (stats) *stats = engine.stats;
  return out;
}

/// Over Q the computation runs fraction-free on primitive integer
/// polynomials; the returned basis is monic.
inline std::vector<QPoly> buchberger(const std::vector<QPoly>& gens, const QRing& ring,
                                     const GroebnerOptions& opts = {}, GroebnerStats* stats = nullptr) {
  detail::require_common_ring(gens, ring);
  auto zring = integer_ring_like(ring);
  std::vector<ZPoly> zgens;
  for (const auto& g : gens) zgens.push_back(primitive_integer(g, zring));
  auto zb = buchberger(zgens, zring, opts, stats);
  std::vector<QPoly> out;
  for (const auto& g : zb) out.push_back(make_monic(to_rational(g, ring)));
  return out;
}

/// Normal form against a Groebner basis (fields).
template <class D>
Poly<D> normal_form(const Poly<D>& f, const std::vector<Poly<D>>& gb) {
  if (gb.empty()) return f;
  return divide(f, gb).remainder;
}

/// Zero test of the normal form over Q using fraction-free reduction; the
/// basis is converted to primitive integer form once per call.
inline bool reduces_to_zero(const QPoly& f, const std::vector<QPoly>& gb, std::uint64_t step_budget = 10'000'000) {
  if (f.is_zero()) return true;
  auto zring = integer_ring_like(f.ring());
  std::vector<ZPoly> zgb;
  for (const auto& g : gb) zgb.push_back(primitive_integer(g, zring));
  GroebnerOptions opts;
  opts.step_budget = step_budget;
  detail::GroebnerEngine<IntegerRing> engine(zring, opts);
  engine.load_basis(std::move(zgb));
  return engine.reduce(primitive_integer(f, zring), true).is_zero();
}

// ---------------------------------------------------------------------------
// Ideals

template <class D>
std::vector<Poly<D>> groebner_basis_of(const std::vector<Poly<D>>& gens, const RingPtr<D>& ring,
                                       const GroebnerOptions& opts, GroebnerStats* stats) {
  return buchberger(gens, ring, opts, stats);
}

/// An ideal with its generators and a lazily computed reduced Groebner basis
/// for the ring's monomial order.
template <class D>
class Ideal {
 public:
  Ideal(RingPtr<D> ring, std::vector<Poly<D>> gens) : ring_(std::move(ring)) {
    detail::require_common_ring(gens, ring_);
    for (auto& g : gens)
      if (!g.is_zero()) gens_.push_back(std::move(g));
    cache_ = std::make_shared<Cache>();
  }

  static Ideal unit(RingPtr<D> ring) { return Ideal(ring, {Poly<D>::from_integer(ring, 1)}); }

  const RingPtr<D>& ring() const { return ring_; }
  const std::vector<Poly<D>>& generators() const { return gens_; }

  /// Cached; the options only matter for the first call.
  const std::vector<Poly<D>>& groebner_basis(const GroebnerOptions& opts = {}) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (!cache_->gb) {
      GroebnerStats stats;
      cache_->gb = buchberger(gens_, ring_, opts, &stats);
      cache_->stats = stats;
    }
    return *cache_->gb;
  }

  const GroebnerStats& groebner_stats() const {
    groebner_basis();
    return cache_->stats;
  }

  bool has_cached_basis() const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->gb.has_value();
  }

  bool contains(const Poly<D>& f) const {
    if (!(*f.ring() == *ring_)) throw Error(ErrorCode::RingMismatch, "polynomial belongs to a different ring");
    const auto& gb = groebner_basis();
    if constexpr (std::is_same_v<D, RationalField>) return reduces_to_zero(f, gb);
    else return normal_form(f, gb).is_zero();
  }

  bool contains(const Ideal& other) const {
    for (const auto& g : other.gens_)
      if (!contains(g)) return false;
    return true;
  }

  bool same_as(const Ideal& other) const { return contains(other) && other.contains(*this); }

 private:
  struct Cache {
    std::mutex mutex;
    std::optional<std::vector<Poly<D>>> gb;
    GroebnerStats stats;
  };

  RingPtr<D> ring_;
  std::vector<Poly<D>> gens_;
  std::shared_ptr<Cache> cache_;
};

using QIdeal = Ideal<RationalField>;

namespace detail {

/// Moves f into `target` placing variable i at index i + offset.
template <class D>
Poly<D> shift_variables(const Poly<D>& f, const RingPtr<D>& target, std::size_t offset) {
  std::vector<Term<D>> out;
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < f.ring()->nvars(); ++i) m.set(i + offset, t.m[i]);
    out.push_back({m, t.c});
  }
  return Poly<D>(target, std::move(out));
}

/// Inverse of shift_variables; the first `offset` variables must be absent.
template <class D>
Poly<D> unshift_variables(const Poly<D>& f, const RingPtr<D>& target, std::size_t offset) {
  std::vector<Term<D>> out;
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < target->nvars(); ++i) m.set(i, t.m[i + offset]);
    out.push_back({m, t.c});
  }
  return Poly<D>(target, std::move(out));
}

template <class D>
void push_unique(std::vector<Poly<D>>& out, Poly<D> p) {
  if (p.is_zero()) return;
  Poly<D> key = p;
  if constexpr (D::is_field) key = make_monic(p);
  for (const auto& q : out) {
    Poly<D> k2 = q;
    if constexpr (D::is_field) k2 = make_monic(q);
    if (k2 == key) return;
  }
  out.push_back(std::move(p));
}

}  // namespace detail

template <class D>
void require_same_ring(const Ideal<D>& i, const Ideal<D>& j) {
  if (!(*i.ring() == *j.ring())) throw Error(ErrorCode::RingMismatch, "ideals belong to different rings");
}

/// Generators of I ∩ J by eliminating t from t*I + (1-t)*J under a block order.
template <class D>
Ideal<D> ideal_intersection(const Ideal<D>& i, const Ideal<D>& j, const GroebnerOptions& opts = {}) {
  require_same_ring(i, j);
  const auto& ring = i.ring();
  std::vector<std::string> vars{"_t"};
  for (const auto& v : ring->vars()) vars.push_back(v);
  auto big = make_ring(ring->domain(), vars, MonomialOrder::block(1));
  auto t = Poly<D>::variable(big, 0);
  auto one_minus_t = Poly<D>::from_integer(big, 1) - t;
  std::vector<Poly<D>> gens;
  for (const auto& g : i.generators()) gens.push_back(t * detail::shift_variables(g, big, 1));
  for (const auto& g : j.generators()) gens.push_back(one_minus_t * detail::shift_variables(g, big, 1));
  std::vector<Poly<D>> out;
  for (const auto& g : buchberger(gens, big, opts))
    if (!g.involves(0)) out.push_back(detail::unshift_variables(g, ring, 1));
  Ideal<D> k(ring, out);
  for (const auto& g : k.generators())
    if (!i.contains(g) || !j.contains(g))
      throw Error(ErrorCode::InternalMismatch, "intersection generator fails membership check");
  return k;
}

template <class D>
Ideal<D> ideal_product(const Ideal<D>& i, const Ideal<D>& j) {
  require_same_ring(i, j);
  std::vector<Poly<D>> out;
  for (const auto& f : i.generators())
    for (const auto& g : j.generators()) detail::push_unique(out, f * g);
  return Ideal<D>(i.ring(), out);
}

template <class D>
Ideal<D> ideal_power(const Ideal<D>& i, unsigned r) {
  if (r == 0) return Ideal<D>::unit(i.ring());
  if (r == 2) {
    // Symmetric products only.
    std::vector<Poly<D>> out;
    const auto& g = i.generators();
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a; b < g.size(); ++b) detail::push_unique(out, g[a] * g[b]);
    return Ideal<D>(i.ring(), out);
  }
  Ideal<D> acc = i;
  for (unsigned k = 1; k < r; ++k) acc = ideal_product(acc, i);
  return acc;
}

/// Generators of I ∩ K[x_k, ..., x_n] for the first k variables eliminated.
template <class D>
std::vector<Poly<D>> eliminate(const Ideal<D>& i, std::size_t k, const GroebnerOptions& opts = {}) {
  const auto& ring = i.ring();
  auto block = make_ring(ring->domain(), ring->vars(), MonomialOrder::block(k));
  std::vector<Poly<D>> gens;
  for (const auto& g : i.generators()) gens.push_back(g.in_ring(block));
  std::vector<Poly<D>> out;
  for (const auto& g : buchberger(gens, block, opts)) {
    bool free = true;
    for (std::size_t v = 0; v < k; ++v) free = free && !g.involves(v);
    if (free) out.push_back(g.in_ring(ring));
  }
  return out;
}

}  // namespace boroczky
