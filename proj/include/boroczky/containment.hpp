#pragma once

// Ideals of finite point sets in P^2 over Q, their symbolic powers, and the
// containment question I^(m) ⊆ I^r.
//
// Symbolic powers come from interpolation: the degree-d piece of I^(m) is the
// kernel of the matrix of all order-(m-1) partial derivatives at the points.
// Membership in I^r is decided by a degree-truncated Groebner basis, over Q
// and modulo a few random word-size primes.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "parallel.hpp"
#include "polyalg.hpp"
#include "projgeom.hpp"

namespace boroczky::containment {

inline QRing xyz_ring() {
  static const QRing ring = make_ring(RationalField{}, {"x", "y", "z"});
  return ring;
}

using RationalPoint = std::array<Rational, 3>;

/// Distinct points of P^2(Q), each scaled so its first nonzero coordinate is 1.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<RationalPoint> pts) {
    for (auto& p : pts) {
      std::size_t lead = 0;
      while (lead < 3 && p[lead] == 0) ++lead;
      if (lead == 3) throw Error(ErrorCode::ZeroInput, "point with all coordinates zero");
      Rational inv = 1 / p[lead];
      for (auto& c : p) {
        c *= inv;
        c.canonicalize();
      }
      if (std::find(points_.begin(), points_.end(), p) != points_.end())
        throw Error(ErrorCode::ParameterInvalid, "point set contains a repeated point");
      points_.push_back(std::move(p));
    }
  }

  /// Points over Q only.
  static PointSet from_points(const std::vector<ProjPoint<FieldElement>>& pts) {
    std::vector<RationalPoint> out;
    for (const auto& p : pts) {
      if (p[0].field()->kind != FieldKind::Rationals)
        throw Error(ErrorCode::UnsupportedField, "containment needs rational points, got " + to_string(p[0].field()));
      out.push_back({p[0].rational(), p[1].rational(), p[2].rational()});
    }
    return PointSet(std::move(out));
  }

  const std::vector<RationalPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<RationalPoint> points_;
};

/// Intersection points of multiplicity at least k.
inline PointSet points_of_multiplicity_at_least(const Configuration<FieldElement>& cfg, std::size_t k) {
  std::vector<ProjPoint<FieldElement>> pts;
  for (const auto& rec : cfg.points)
    if (rec.multiplicity() >= k) pts.push_back(rec.point);
  return PointSet::from_points(pts);
}

inline std::size_t binomial2(std::size_t n) { return n * (n - 1) / 2; }

/// Number of forms of degree d in three variables.
inline std::size_t forms_of_degree(std::size_t d) { return binomial2(d + 2); }

/// Monomials of degree d in x, y, z, ascending in the ring's order.
inline std::vector<Monomial> monomials_of_degree(const QRing& ring, unsigned d) {
  std::vector<Monomial> out;
  for (unsigned i = 0; i <= d; ++i)
    for (unsigned j = 0; i + j <= d; ++j) {
      Monomial m;
      m.set(0, static_cast<std::uint16_t>(i));
      m.set(1, static_cast<std::uint16_t>(j));
      m.set(2, static_cast<std::uint16_t>(d - i - j));
      out.push_back(m);
    }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ring->compare(a, b) < 0; });
  return out;
}

namespace detail {

inline Rational falling(unsigned n, unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= n - i;
  return r;
}

inline Rational power(const Rational& x, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

inline std::vector<Rational> coefficient_vector(const QPoly& f, const std::vector<Monomial>& monos,
                                                const std::unordered_map<Monomial, std::size_t, MonomialHash>& index) {
  std::vector<Rational> v(monos.size(), Rational(0));
  for (const auto& t : f.terms()) {
    auto it = index.find(t.m);
    if (it == index.end()) throw Error(ErrorCode::InternalMismatch, "form of unexpected degree");
    v[it->second] = t.c;
  }
  return v;
}

inline QPoly from_vector(const QRing& ring, const std::vector<Monomial>& monos, const std::vector<Rational>& v) {
  std::vector<Term<RationalField>> terms;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) terms.push_back({monos[i], v[i]});
  return QPoly(ring, std::move(terms));
}

inline std::unordered_map<Monomial, std::size_t, MonomialHash> index_of(const std::vector<Monomial>& monos) {
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
  return index;
}

}  // namespace detail

/// Basis of the degree-d forms vanishing to order >= m at every point, in
/// reduced echelon form: distinct monic leading monomials, and no basis
/// element contains another's leading monomial.
inline std::vector<QPoly> fatpoint_space(const PointSet& ps, unsigned m, unsigned d, unsigned threads = 1) {
  if (m == 0) throw Error(ErrorCode::ParameterInvalid, "multiplicity must be at least 1");
  auto ring = xyz_ring();
  auto monos = monomials_of_degree(ring, d);
  if (ps.size() == 0) {
    std::vector<QPoly> all;
    for (const auto& mono : monos) all.push_back(QPoly::monomial(ring, mono, Rational(1)));
    return all;
  }
  // A nonzero form of degree d < m - 1 cannot vanish to order m, and the
  // order-(m-1) conditions below would be vacuous.
  if (d + 1 < m) return {};
  const std::size_t cols = monos.size();
  // Orders-(m-1) derivatives suffice by Euler's relation once d >= m - 1.
  std::vector<std::array<unsigned, 3>> alphas;
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; i + j < m; ++j) alphas.push_back({i, j, m - 1 - i - j});
  auto rows_per_point = parallel_map(
      ps.size(),
      [&](std::size_t pi) {
        const auto& p = ps.points()[pi];
        Matrix<RationalField> rows;
        for (const auto& al : alphas) {
          std::vector<Rational> row(cols, Rational(0));
          for (std::size_t c = 0; c < cols; ++c) {
            Rational v = 1;
            for (std::size_t k = 0; k < 3 && v != 0; ++k) {
              unsigned e = monos[c].e[k];
              if (e < al[k]) v = 0;
              else v *= detail::falling(e, al[k]) * detail::power(p[k], e - al[k]);
            }
            row[c] = v;
          }
          rows.push_back(std::move(row));
        }
        return rows;
      },
      threads);
  Matrix<RationalField> mat;
  for (auto& rows : rows_per_point)
    for (auto& r : rows) mat.push_back(std::move(r));
  auto basis = kernel(RationalField{}, std::move(mat), cols);
  std::vector<QPoly> out;
  for (const auto& v : basis) out.push_back(detail::from_vector(ring, monos, v));
  std::sort(out.begin(), out.end(),
            [&](const QPoly& a, const QPoly& b) { return ring->compare(a.lead_monomial(), b.lead_monomial()) < 0; });
  return out;
}

/// Generators of a homogeneous ideal together with its Hilbert function up
/// to the last degree examined.
struct IdealPresentation {
  unsigned multiplicity = 1;
  std::vector<QPoly> generators;
  /// dims[d] = dimension of the degree-d piece of the ideal.
  std::vector<std::size_t> dims;
  /// Sum over points of m(m+1)/2.
  std::size_t length = 0;
  /// First degree where the ideal has codimension `length`; the same holds
  /// one degree higher, so generators occur in degrees <= regularity_index + 1.
  unsigned regularity_index = 0;

  unsigned max_generator_degree() const {
    unsigned d = 0;
    for (const auto& g : generators) d = std::max<unsigned>(d, g.total_degree());
    return d;
  }
  std::vector<unsigned> generator_degrees() const {
    std::vector<unsigned> out;
    for (const auto& g : generators) out.push_back(g.total_degree());
    return out;
  }
};

namespace detail {

inline IdealPresentation symbolic_power_once(const PointSet& ps, unsigned m, unsigned max_degree, unsigned threads) {
  auto ring = xyz_ring();
  IdealPresentation out;
  out.multiplicity = m;
  out.length = ps.size() * binomial2(m + 1);
  std::vector<QPoly> previous;
  int stable_run = 0;
  for (unsigned d = 0; d <= max_degree; ++d) {
    auto space = fatpoint_space(ps, m, d, threads);
    out.dims.push_back(space.size());
    auto monos = monomials_of_degree(ring, d);
    auto index = index_of(monos);
    Echelon<RationalField> span(RationalField{}, monos.size());
    for (const auto& g : previous)
      for (std::size_t v = 0; v < 3; ++v) span.insert(coefficient_vector(g * QPoly::variable(ring, v), monos, index));
    for (const auto& g : space)
      if (span.insert(coefficient_vector(g, monos, index))) out.generators.push_back(g);
    previous = std::move(space);
    std::size_t expected = forms_of_degree(d) >= out.length ? forms_of_degree(d) - out.length : 0;
    if (forms_of_degree(d) >= out.length && out.dims.back() == expected) {
      if (++stable_run == 2) {
        out.regularity_index = d - 1;
        return out;
      }
    } else {
      stable_run = 0;
    }
  }
  throw Error(ErrorCode::DegreeBoundTooSmall,
              "Hilbert function not stable by degree " + std::to_string(max_degree) + " for multiplicity " + std::to_string(m));
}

}  // namespace detail

/// Generators of the intersection of the m-th powers of the point ideals,
/// certified complete by two consecutive degrees of Hilbert-function
/// stabilization. A negative bound picks a default and raises it once.
inline IdealPresentation symbolic_power(const PointSet& ps, unsigned m, int max_degree = -1, unsigned threads = 1) {
  if (m == 0) throw Error(ErrorCode::ParameterInvalid, "multiplicity must be at least 1");
  if (max_degree >= 0) return detail::symbolic_power_once(ps, m, static_cast<unsigned>(max_degree), threads);
  // Points impose independent conditions from degree size - 1 on, so the
  // radical ideal needs at most size + 1; each extra order adds at most that.
  unsigned base = static_cast<unsigned>(ps.size()) + 1;
  unsigned bound = m == 1 ? base : 3 * detail::symbolic_power_once(ps, 1, base, threads).max_generator_degree() + 3;
  bound = std::max(bound, m + 1);
  try {
    return detail::symbolic_power_once(ps, m, bound, threads);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegreeBoundTooSmall) throw;
    return detail::symbolic_power_once(ps, m, 2 * bound, threads);
  }
}

inline IdealPresentation point_ideal(const PointSet& ps, int max_degree = -1, unsigned threads = 1) {
  return symbolic_power(ps, 1, max_degree, threads);
}

/// Largest s with every partial derivative of order < s vanishing at p.
inline unsigned vanishing_order(const QPoly& f, const RationalPoint& p) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroInput, "order of the zero form");
  std::vector<Rational> pt(p.begin(), p.end());
  std::vector<QPoly> level{f};
  for (unsigned s = 0;; ++s) {
    for (const auto& g : level)
      if (g.evaluate(pt) != 0) return s;
    // All derivatives of the next order, each produced once.
    std::vector<QPoly> next;
    std::vector<std::array<unsigned, 3>> alphas;
    for (unsigned i = 0; i <= s + 1; ++i)
      for (unsigned j = 0; i + j <= s + 1; ++j) alphas.push_back({i, j, s + 1 - i - j});
    for (const auto& al : alphas) {
      QPoly g = f;
      for (std::size_t v = 0; v < 3; ++v)
        for (unsigned k = 0; k < al[v]; ++k) g = g.derivative(v);
      next.push_back(std::move(g));
    }
    level = std::move(next);
  }
}

struct LineProductWitness {
  QPoly form;
  /// Per configuration point (multiplicity >= 3): order of the product there.
  std::vector<std::pair<std::size_t, unsigned>> orders;
};

/// Product of the line forms of a rational configuration, with its order
/// checked against the multiplicity at each point of multiplicity >= 3.
inline LineProductWitness line_product_witness(const Configuration<FieldElement>& cfg) {
  auto ring = xyz_ring();
  LineProductWitness out{QPoly::from_integer(ring, 1), {}};
  for (const auto& l : cfg.lines) {
    if (l[0].field()->kind != FieldKind::Rationals)
      throw Error(ErrorCode::UnsupportedField, "line product needs rational lines");
    QPoly form(ring);
    for (std::size_t v = 0; v < 3; ++v) form = form + QPoly::variable(ring, v).scaled(l[v].rational());
    out.form = out.form * form;
  }
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    const auto& rec = cfg.points[i];
    if (rec.multiplicity() < 3) continue;
    RationalPoint p{rec.point[0].rational(), rec.point[1].rational(), rec.point[2].rational()};
    unsigned order = vanishing_order(out.form, p);
    if (order != rec.multiplicity())
      throw Error(ErrorCode::InternalMismatch, "line product has order " + std::to_string(order) + " at a point on " +
                                                   std::to_string(rec.multiplicity()) + " lines");
    out.orders.emplace_back(i, order);
  }
  return out;
}

/// Membership of a form of degree d in the ideal generated by `gens`,
/// decided by linear algebra on the degree-d piece.
inline bool linear_membership(const QPoly& w, const std::vector<QPoly>& gens) {
  if (w.is_zero()) return true;
  if (!w.is_homogeneous()) throw Error(ErrorCode::ParameterInvalid, "linear membership needs a homogeneous form");
  auto ring = w.ring();
  unsigned d = w.total_degree();
  auto monos = monomials_of_degree(ring, d);
  auto index = detail::index_of(monos);
  Echelon<RationalField> span(RationalField{}, monos.size());
  for (const auto& g : gens) {
    if (static_cast<unsigned>(g.total_degree()) > d) continue;
    for (const auto& mono : monomials_of_degree(ring, d - g.total_degree()))
      span.insert(detail::coefficient_vector(g.mul_term(mono, Rational(1)), monos, index));
  }
  return span.contains(detail::coefficient_vector(w, monos, index));
}

// ---------------------------------------------------------------------------
// Containment

enum class Status { Contained, NotContained, Inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Contained: return "Contained";
    case Status::NotContained: return "NotContained";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct ContainmentOptions {
  unsigned m = 3;
  unsigned r = 2;
  int max_degree = -1;
  bool exact = true;
  unsigned modular_primes = 5;
  std::uint64_t seed = 0;
  /// Wall-clock budget for the exact Groebner run; zero disables.
  double exact_time_budget_seconds = 0;
  std::uint64_t step_budget = 200'000'000;
  /// Checked before the symbolic-power generators.
  std::optional<QPoly> witness;
  unsigned threads = 0;
};

struct ModularRun {
  std::uint64_t prime = 0;
  bool lucky = false;
  /// Index into the candidate list of the first form outside I^r mod p.
  std::optional<std::size_t> first_outside;
  std::string note;
};

struct ContainmentVerdict {
  Status status = Status::Inconclusive;
  /// "exact", "modular-certified", "modular-only" or "none".
  std::string certification = "none";
  std::optional<QPoly> witness;
  unsigned m = 3, r = 2;
  /// Degree up to which the Groebner basis of I^r was computed.
  int degree_bound = 0;
  std::vector<unsigned> ideal_degrees;
  std::vector<unsigned> symbolic_degrees;
  std::vector<ModularRun> modular;
  bool exact_completed = false;
  std::string exact_note;
  /// Witness has order >= m at every point, checked over Q.
  bool witness_multiplicity_verified = false;
  /// Every lucky modular run agrees with the exact result.
  bool paths_agree = true;
  double seconds = 0;

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    for (const auto& run : modular)
      if (run.lucky) out.push_back(run.prime);
    return out;
  }
};

/// k distinct primes in (2^30, 2^31) drawn from a seeded generator.
inline std::vector<std::uint64_t> random_primes(unsigned k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist((std::uint64_t{1} << 30) + 1, (std::uint64_t{1} << 31) - 1);
  std::vector<std::uint64_t> out;
  while (out.size() < k) {
    std::uint64_t p = dist(rng) | 1;
    while (!is_probable_prime(Integer(static_cast<unsigned long>(p)))) p += 2;
    if (p < (std::uint64_t{1} << 31) && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

namespace detail {

inline std::optional<std::size_t> first_outside_mod_p(std::uint64_t p, const std::vector<QPoly>& ir_gens,
                                                      const std::vector<QPoly>& candidates, int degree_limit,
                                                      std::uint64_t step_budget, std::string& note, bool& lucky) {
  auto fring = make_ring(PrimeField64(p), xyz_ring()->vars());
  std::vector<FpPoly> gens, targets;
  lucky = true;
  try {
    for (const auto& g : ir_gens) {
      FpPoly h = reduce_mod_p(g, fring);
      if (h.is_zero() || h.lead_monomial() != g.lead_monomial()) lucky = false;
      gens.push_back(std::move(h));
    }
    for (const auto& g : candidates) {
      FpPoly h = reduce_mod_p(g, fring);
      if (h.is_zero() || h.lead_monomial() != g.lead_monomial()) lucky = false;
      targets.push_back(std::move(h));
    }
  } catch (const Error&) {
    lucky = false;
  }
  if (!lucky) {
    note = "unlucky: a leading coefficient or denominator vanishes mod p";
    return std::nullopt;
  }
  GroebnerOptions opts;
  opts.degree_limit = degree_limit;
  opts.step_budget = step_budget;
  auto gb = buchberger(gens, fring, opts);
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (!normal_form(targets[i], gb).is_zero()) return i;
  return std::nullopt;
}

}  // namespace detail

/// Decides I^(m) ⊆ I^r for the ideal I of the points.
///
/// Candidates are the optional witness followed by the generators of I^(m).
/// The exact run reduces them against a Groebner basis of I^r truncated at
/// their largest degree; NotContained needs the exact run. Without it the
/// status stays Inconclusive, certified "modular-certified" when at least
/// three lucky primes exhibit the same non-member and that form's order at
/// every point is checked over Q.
inline ContainmentVerdict check_containment(const PointSet& ps, const ContainmentOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  if (opt.m == 0 || opt.r == 0) throw Error(ErrorCode::ParameterInvalid, "m and r must be at least 1");
  auto ring = xyz_ring();
  ContainmentVerdict v;
  v.m = opt.m;
  v.r = opt.r;
  unsigned threads = opt.threads ? opt.threads : default_thread_count();

  IdealPresentation ideal = point_ideal(ps, -1, threads);
  IdealPresentation sym = symbolic_power(ps, opt.m, opt.max_degree, threads);
  v.ideal_degrees = ideal.generator_degrees();
  v.symbolic_degrees = sym.generator_degrees();
  std::vector<QPoly> ir = ideal_power(QIdeal(ring, ideal.generators), opt.r).generators();

  std::vector<QPoly> candidates;
  if (opt.witness) candidates.push_back(*opt.witness);
  for (const auto& g : sym.generators) candidates.push_back(g);
  int limit = 0;
  for (const auto& c : candidates) limit = std::max<int>(limit, static_cast<int>(c.total_degree()));
  v.degree_bound = limit;

  auto verify_witness = [&](const QPoly& w) {
    for (const auto& p : ps.points())
      if (vanishing_order(w, p) < opt.m) return false;
    return true;
  };

  // Modular pre-pass.
  auto primes = random_primes(opt.modular_primes, opt.seed);
  v.modular = parallel_map(
      primes.size(),
      [&](std::size_t i) {
        ModularRun run;
        run.prime = primes[i];
        run.first_outside =
            detail::first_outside_mod_p(primes[i], ir, candidates, limit, opt.step_budget, run.note, run.lucky);
        return run;
      },
      threads);

  // Exact run.
  std::optional<std::optional<std::size_t>> exact_outside;
  if (opt.exact) {
    try {
      GroebnerOptions gopts;
      gopts.degree_limit = limit;
      gopts.step_budget = opt.step_budget;
      gopts.time_budget_seconds = opt.exact_time_budget_seconds;
      auto gb = buchberger(ir, ring, gopts);
      std::optional<std::size_t> outside;
      for (std::size_t i = 0; i < candidates.size() && !outside; ++i)
        if (!reduces_to_zero(candidates[i], gb, opt.step_budget)) outside = i;
      exact_outside = outside;
      v.exact_completed = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResourceExceeded) throw;
      v.exact_note = e.what();
    }
  }

  if (exact_outside) {
    v.certification = "exact";
    if (*exact_outside) {
      v.witness = candidates[**exact_outside];
      v.witness_multiplicity_verified = verify_witness(*v.witness);
      if (!v.witness_multiplicity_verified)
        throw Error(ErrorCode::InternalMismatch, "witness does not vanish to the required order");
      v.status = Status::NotContained;
    } else {
      v.status = Status::Contained;
    }
    for (const auto& run : v.modular)
      if (run.lucky && run.first_outside.has_value() != exact_outside->has_value()) v.paths_agree = false;
  } else {
    std::size_t lucky = 0, outside = 0;
    std::optional<std::size_t> common;
    bool consistent = true;
    for (const auto& run : v.modular) {
      if (!run.lucky) continue;
      ++lucky;
      if (run.first_outside) {
        ++outside;
        if (common && *common != *run.first_outside) consistent = false;
        common = run.first_outside;
      }
    }
    v.status = Status::Inconclusive;
    if (lucky >= 3 && outside == lucky && consistent) {
      v.witness = candidates[*common];
      v.witness_multiplicity_verified = verify_witness(*v.witness);
      v.certification = v.witness_multiplicity_verified ? "modular-certified" : "none";
    } else if (lucky > 0 && outside == 0) {
      v.certification = "modular-only";
    }
  }
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

}  // namespace boroczky::containment
