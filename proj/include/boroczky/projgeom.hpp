#pragma once

// Points and lines of the projective plane over an exact scalar type, their
// joins and meets, and the incidence census of a line arrangement.
//
// Scalars are either FieldElement (any field of the tower) or QPoly, the
// latter standing for homogeneous coordinates over a rational function field
// with the denominators cleared.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polyalg.hpp"
#include "scalar.hpp"

namespace boroczky {

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<FieldElement> {
  static bool is_zero(const FieldElement& x) { return x.is_zero(); }
  static std::string to_string(const FieldElement& x) { return boroczky::to_string(x); }
  static std::string field_name(const FieldElement& x) { return boroczky::to_string(x.field()); }
  static FieldElement constant(const FieldElement& like, long n) { return from_integer(like.field(), n); }

  /// Leading-1 normalization.
  static void canonicalize(std::array<FieldElement, 3>& c) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (c[i].is_zero()) continue;
      if (c[i].is_one()) return;
      FieldElement inv = inverse(c[i]);
      for (std::size_t j = i; j < 3; ++j) c[j] *= inv;
      return;
    }
  }
};

template <>
struct ScalarTraits<QPoly> {
  static bool is_zero(const QPoly& x) { return x.is_zero(); }
  static std::string to_string(const QPoly& x) { return boroczky::to_string(x); }
  static std::string field_name(const QPoly& x) {
    std::string s = "QQ(";
    const auto& v = x.ring()->vars();
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s + ")";
  }
  static QPoly constant(const QPoly& like, long n) { return QPoly::from_integer(like.ring(), n); }

  /// Divides by the gcd of the coordinates, then makes the first nonzero
  /// coordinate monic, which picks one representative per projective point.
  static void canonicalize(std::array<QPoly, 3>& c) {
    QPoly g(c[0].ring());
    for (const auto& x : c)
      if (!x.is_zero()) g = g.is_zero() ? x : gcd(g, x);
    if (g.is_zero()) return;
    if (!g.is_constant())
      for (auto& x : c)
        if (!x.is_zero()) x = divide_exactly(x, g);
    for (auto& x : c) {
      if (x.is_zero()) continue;
      Rational lc = x.lead_coeff();
      if (lc != 1)
        for (auto& y : c) y = y.scaled(1 / lc);
      return;
    }
  }
};

namespace detail {

template <class S>
std::array<S, 3> cross(const std::array<S, 3>& a, const std::array<S, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class S>
S dot(const std::array<S, 3>& a, const std::array<S, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class S>
S det3(const std::array<S, 3>& a, const std::array<S, 3>& b, const std::array<S, 3>& c) {
  return dot(a, cross(b, c));
}

template <class S>
bool all_zero(const std::array<S, 3>& c) {
  return ScalarTraits<S>::is_zero(c[0]) && ScalarTraits<S>::is_zero(c[1]) && ScalarTraits<S>::is_zero(c[2]);
}

}  // namespace detail

/// Homogeneous triple in canonical form with an optional label; labels do
/// not take part in equality. Points and lines share the representation.
template <class S, class Tag>
class Homogeneous {
 public:
  Homogeneous(S x, S y, S z, std::string label = {}) : c_{std::move(x), std::move(y), std::move(z)}, label_(std::move(label)) {
    if (detail::all_zero(c_)) throw Error(ErrorCode::ZeroInput, "homogeneous coordinates are all zero");
    ScalarTraits<S>::canonicalize(c_);
  }
  explicit Homogeneous(std::array<S, 3> c, std::string label = {})
      : Homogeneous(std::move(c[0]), std::move(c[1]), std::move(c[2]), std::move(label)) {}

  const std::array<S, 3>& coords() const { return c_; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  const std::string& label() const { return label_; }
  Homogeneous with_label(std::string label) const {
    Homogeneous h = *this;
    h.label_ = std::move(label);
    return h;
  }

  /// Serialized canonical form, the hashing key for deduplication.
  std::string key() const {
    return ScalarTraits<S>::to_string(c_[0]) + ":" + ScalarTraits<S>::to_string(c_[1]) + ":" +
           ScalarTraits<S>::to_string(c_[2]);
  }

  std::string to_string() const { return "(" + key() + ")"; }

  friend bool operator==(const Homogeneous& a, const Homogeneous& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Homogeneous& a, const Homogeneous& b) { return !(a == b); }

 private:
  std::array<S, 3> c_;
  std::string label_;
};

struct PointTag {};
struct LineTag {};

template <class S>
using ProjPoint = Homogeneous<S, PointTag>;
template <class S>
using ProjLine = Homogeneous<S, LineTag>;

/// Line through two distinct points.
template <class S>
ProjLine<S> join(const ProjPoint<S>& p, const ProjPoint<S>& q) {
  auto c = detail::cross(p.coords(), q.coords());
  if (detail::all_zero(c)) throw Error(ErrorCode::CoincidentPoints, "join of coincident points " + p.to_string());
  return ProjLine<S>(std::move(c));
}

/// Intersection point of two distinct lines.
template <class S>
ProjPoint<S> meet(const ProjLine<S>& l, const ProjLine<S>& m) {
  auto c = detail::cross(l.coords(), m.coords());
  if (detail::all_zero(c)) throw Error(ErrorCode::CoincidentLines, "meet of coincident lines " + l.to_string());
  return ProjPoint<S>(std::move(c));
}

template <class S>
bool incident(const ProjPoint<S>& p, const ProjLine<S>& l) {
  return ScalarTraits<S>::is_zero(detail::dot(p.coords(), l.coords()));
}

template <class S>
S collinearity_determinant(const ProjPoint<S>& p, const ProjPoint<S>& q, const ProjPoint<S>& r) {
  return detail::det3(p.coords(), q.coords(), r.coords());
}

template <class S>
bool collinear(const ProjPoint<S>& p, const ProjPoint<S>& q, const ProjPoint<S>& r) {
  return ScalarTraits<S>::is_zero(collinearity_determinant(p, q, r));
}

template <class S>
bool concurrent(const ProjLine<S>& l, const ProjLine<S>& m, const ProjLine<S>& n) {
  return ScalarTraits<S>::is_zero(detail::det3(l.coords(), m.coords(), n.coords()));
}

// ---------------------------------------------------------------------------
// Census

template <class S>
struct PointRecord {
  ProjPoint<S> point;
  /// Indices of the arrangement lines through the point, increasing.
  std::vector<std::size_t> lines;

  std::size_t multiplicity() const { return lines.size(); }
};

template <class S>
struct Configuration {
  std::string field;
  std::vector<ProjLine<S>> lines;
  std::vector<PointRecord<S>> points;
  /// multiplicity -> number of points.
  std::map<std::size_t, std::size_t> census;

  std::size_t count(std::size_t multiplicity) const {
    auto it = census.find(multiplicity);
    return it == census.end() ? 0 : it->second;
  }

  std::optional<std::size_t> find_point(const ProjPoint<S>& p) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].point == p) return i;
    return std::nullopt;
  }
};

/// All pairwise meets, deduplicated by canonical form. Points appear in the
/// order of their first pair (i, j) in lexicographic order.
template <class S>
Configuration<S> census(const std::vector<ProjLine<S>>& lines) {
  Configuration<S> cfg;
  if (!lines.empty()) cfg.field = ScalarTraits<S>::field_name(lines[0][0]);
  std::unordered_map<std::string, std::size_t> line_keys;
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (!line_keys.emplace(lines[i].key(), i).second)
      throw Error(ErrorCode::DuplicateLines, "line " + lines[i].to_string() + " occurs twice");
  cfg.lines = lines;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      ProjPoint<S> p = meet(lines[i], lines[j]);
      auto [it, fresh] = index.emplace(p.key(), cfg.points.size());
      if (fresh) cfg.points.push_back({std::move(p), {}});
      auto& rec = cfg.points[it->second].lines;
      for (std::size_t k : {i, j})
        if (std::find(rec.begin(), rec.end(), k) == rec.end()) rec.push_back(k);
    }
  for (auto& rec : cfg.points) {
    std::sort(rec.lines.begin(), rec.lines.end());
    ++cfg.census[rec.multiplicity()];
  }
  return cfg;
}

/// Sum over points of C(mult, 2); equals C(#lines, 2) for every census.
template <class S>
std::size_t pair_count(const Configuration<S>& cfg) {
  std::size_t total = 0;
  for (const auto& rec : cfg.points) total += rec.multiplicity() * (rec.multiplicity() - 1) / 2;
  return total;
}

// ---------------------------------------------------------------------------
// Pappus: a doubly perspective triangle pair is triply perspective.

/// Triangles ABC and DEF with center P for A-D, B-E, C-F and center Q for
/// one cyclic shift of the correspondence. Returns the center of the other
/// shift after checking that all three of its joins pass through it.
template <class S>
ProjPoint<S> pappus_third_center(const ProjPoint<S>& a, const ProjPoint<S>& b, const ProjPoint<S>& c,
                                 const ProjPoint<S>& d, const ProjPoint<S>& e, const ProjPoint<S>& f,
                                 const ProjPoint<S>& p, const ProjPoint<S>& q) {
  auto through = [](const ProjPoint<S>& center, const ProjPoint<S>& x, const ProjPoint<S>& y) {
    return x != y && collinear(center, x, y);
  };
  auto perspective = [&](const ProjPoint<S>& center, const ProjPoint<S>& x1, const ProjPoint<S>& x2,
                         const ProjPoint<S>& y1, const ProjPoint<S>& y2, const ProjPoint<S>& z1,
                         const ProjPoint<S>& z2) {
    return through(center, x1, x2) && through(center, y1, y2) && through(center, z1, z2);
  };
  if (!perspective(p, a, d, b, e, c, f))
    throw Error(ErrorCode::NotDoublyPerspective, "triangles are not perspective from the first center");
  std::optional<ProjPoint<S>> r;
  if (perspective(q, a, e, b, f, c, d)) {
    r = meet(join(a, f), join(b, d));
    if (!incident(*r, join(c, e))) r.reset();
  } else if (perspective(q, a, f, b, d, c, e)) {
    r = meet(join(a, e), join(b, f));
    if (!incident(*r, join(c, d))) r.reset();
  } else {
    throw Error(ErrorCode::NotDoublyPerspective, "triangles are not perspective from the second center");
  }
  if (!r) throw Error(ErrorCode::InternalMismatch, "third perspectivity failed for doubly perspective triangles");
  return *r;
}

}  // namespace boroczky
