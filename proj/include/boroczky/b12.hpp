#pragma once

// The 12-line arrangement with 19 triple points, parametrized by three
// ratios (a1:a2), (b1:b2), (c1:c2), and the stratification of its
// degenerations.
//
// Fixed frame: A = (1:0:0), B = (0:1:0), C = (0:0:1), D = (a2:0:a1) on AC,
// E = (b1:b2:0) on AB, F = (0:c1:c2) on BC. The twelve lines are
// AB AC BC AF BD EF ED HJ IK NG CP MO.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parallel.hpp"
#include "projgeom.hpp"
#include "scalar_parse.hpp"

namespace boroczky::b12 {

inline const std::vector<std::string>& point_names() {
  static const std::vector<std::string> names{"A", "B", "C", "D", "E", "F", "G", "H", "I", "J",
                                              "K", "L", "M", "N", "O", "P", "Q", "R", "S"};
  return names;
}

inline const std::vector<std::string>& line_names() {
  static const std::vector<std::string> names{"AB", "AC", "BC", "AF", "BD", "EF", "ED", "HJ", "IK", "NG", "CP", "MO"};
  return names;
}

template <class S>
using Triple = std::array<S, 3>;

template <class S>
struct Labeled {
  std::vector<std::pair<std::string, Triple<S>>> points;
  std::vector<std::pair<std::string, Triple<S>>> lines;

  const Triple<S>& point(std::string_view name) const { return find(points, name); }
  const Triple<S>& line(std::string_view name) const { return find(lines, name); }

 private:
  static const Triple<S>& find(const std::vector<std::pair<std::string, Triple<S>>>& v, std::string_view name) {
    for (const auto& [n, t] : v)
      if (n == name) return t;
    throw Error(ErrorCode::InternalMismatch, "unknown label " + std::string(name));
  }
};

/// Coordinates of all 19 points and 12 lines as polynomial expressions in
/// the parameters.
template <class S>
Labeled<S> closed_forms(const S& a1, const S& a2, const S& b1, const S& b2, const S& c1, const S& c2) {
  const S zero = ScalarTraits<S>::constant(a1, 0);
  const S one = ScalarTraits<S>::constant(a1, 1);
  const S two = ScalarTraits<S>::constant(a1, 2);
  const S p = a1 * b1 * c1;  // a1 b1 c1
  const S q = a2 * b2 * c2;  // a2 b2 c2
  const S w = p * p + q * q + p * q;
  Labeled<S> out;
  out.points = {
      {"A", {one, zero, zero}},
      {"B", {zero, one, zero}},
      {"C", {zero, zero, one}},
      {"D", {a2, zero, a1}},
      {"E", {b1, b2, zero}},
      {"F", {zero, c1, c2}},
      {"G", {a2 * c2, a1 * c1, a1 * c2}},
      {"H", {a2 * b1 * c2, q + p, a1 * b1 * c2}},
      {"I", {zero, a2 * b2, -(a1 * b1)}},
      {"J", {p + q, a1 * b2 * c1, a1 * b2 * c2}},
      {"K", {b1 * c1, zero, -(b2 * c2)}},
      {"L", {a1 * b1 * b1 * c1, -(a2 * b2 * b2 * c2), zero}},
      {"M", {-(a1 * a2 * b1 * b1 * c1), a2 * a2 * b2 * b2 * c2 + a1 * a2 * b1 * b2 * c1, -(a1 * a1 * b1 * b1 * c1)}},
      {"N", {w, zero, a1 * a2 * b2 * b2 * c2 * c2}},
      {"O", {zero, w, a1 * a1 * b1 * b1 * c1 * c2}},
      {"P", {a1 * b1 * b1 * c1 * c1 + a2 * b1 * b2 * c1 * c2, -(a2 * b2 * b2 * c1 * c2), -(a2 * b2 * b2 * c2 * c2)}},
      {"Q", {a2 * a2 * b1 * b2 * c2 * c2, p * p + two * p * q + q * q, a1 * a1 * b1 * b1 * c1 * c2 + two * a1 * a2 * b1 * b2 * c2 * c2}},
      {"R", {a1 * a2 * b1 * b1 * c1 + a2 * a2 * b1 * b2 * c2, -(a2 * a2 * b2 * b2 * c2), a1 * a1 * b1 * b1 * c1 + two * a1 * a2 * b1 * b2 * c2}},
      {"S", {a1 * b1 * b1 * c1 + a2 * b1 * b2 * c2, -(a2 * b2 * b2 * c2), zero}},
  };
  out.lines = {
      {"AB", {zero, zero, one}},
      {"AC", {zero, one, zero}},
      {"BC", {one, zero, zero}},
      {"AF", {zero, c2, -c1}},
      {"BD", {a1, zero, -a2}},
      {"EF", {b2 * c2, -(b1 * c2), b1 * c1}},
      {"ED", {a1 * b2, -(a1 * b1), -(a2 * b2)}},
      {"HJ", {a1 * a2 * b2 * b2 * c2 * c2, a1 * a1 * b1 * b1 * c1 * c2, -w}},
      {"IK", {a2 * b2 * b2 * c2, a1 * b1 * b1 * c1, a2 * b1 * b2 * c1}},
      {"NG", {a1 * a2 * b2 * b2 * c2 * c2, a1 * a1 * b1 * b1 * c1 * c2 + a1 * a2 * b1 * b2 * c2 * c2, -w}},
      {"CP", {a2 * b2 * b2 * c2, a1 * b1 * b1 * c1 + a2 * b1 * b2 * c2, zero}},
      {"MO", {a1 * (p * p + two * p * q + two * q * q), a1 * a1 * a2 * b1 * b1 * c1 * c2, -(a2 * w)}},
  };
  return out;
}

/// The same points and lines built from A, ..., F by joins and meets only.
/// An entry is missing when a join or meet along its recipe degenerates.
template <class S>
struct Constructed {
  std::map<std::string, ProjPoint<S>> points;
  std::map<std::string, ProjLine<S>> lines;
};

template <class S>
Constructed<S> construct(const S& a1, const S& a2, const S& b1, const S& b2, const S& c1, const S& c2) {
  Constructed<S> out;
  auto cf = closed_forms(a1, a2, b1, b2, c1, c2);
  for (const char* name : {"A", "B", "C", "D", "E", "F"}) {
    const auto& t = cf.point(name);
    if (!detail::all_zero(t)) out.points.emplace(name, ProjPoint<S>(t, name));
  }
  auto line = [&](const std::string& name, const char* p, const char* q) {
    auto ip = out.points.find(p), iq = out.points.find(q);
    if (ip == out.points.end() || iq == out.points.end()) return;
    try {
      out.lines.emplace(name, join(ip->second, iq->second).with_label(name));
    } catch (const Error&) {
    }
  };
  auto point = [&](const std::string& name, const char* l, const char* m) {
    auto il = out.lines.find(l), im = out.lines.find(m);
    if (il == out.lines.end() || im == out.lines.end()) return;
    try {
      out.points.emplace(name, meet(il->second, im->second).with_label(name));
    } catch (const Error&) {
    }
  };
  line("AB", "A", "B");
  line("AC", "A", "C");
  line("BC", "B", "C");
  line("AF", "A", "F");
  line("BD", "B", "D");
  line("EF", "E", "F");
  line("ED", "E", "D");
  point("G", "AF", "BD");
  point("H", "BD", "EF");
  point("I", "BC", "ED");
  point("J", "AF", "ED");
  point("K", "AC", "EF");
  line("HJ", "H", "J");
  line("IK", "I", "K");
  point("L", "HJ", "IK");
  point("M", "BD", "IK");
  point("N", "AC", "HJ");
  point("O", "HJ", "BC");
  point("P", "AF", "IK");
  line("NG", "N", "G");
  line("CP", "C", "P");
  point("Q", "EF", "NG");
  point("R", "ED", "CP");
  point("S", "CP", "NG");
  line("MO", "M", "O");
  return out;
}

/// Names of closed-form objects that disagree with their join/meet
/// counterpart; objects missing on either side are skipped.
template <class S>
std::vector<std::string> closed_form_mismatches(const Labeled<S>& cf, const Constructed<S>& jm) {
  std::vector<std::string> bad;
  for (const auto& [name, t] : cf.points) {
    auto it = jm.points.find(name);
    if (it == jm.points.end() || detail::all_zero(t)) continue;
    if (ProjPoint<S>(t) != it->second) bad.push_back(name);
  }
  for (const auto& [name, t] : cf.lines) {
    auto it = jm.lines.find(name);
    if (it == jm.lines.end() || detail::all_zero(t)) continue;
    if (ProjLine<S>(t) != it->second) bad.push_back(name);
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Parameters and classification

/// Three homogeneous ratios over one field, each scaled so its first
/// nonzero entry is 1.
class ParameterTriple {
 public:
  using Ratio = std::array<FieldElement, 2>;

  ParameterTriple(Ratio a, Ratio b, Ratio c) : r_{std::move(a), std::move(b), std::move(c)} {
    const Field& k = r_[0][0].field();
    for (auto& ratio : r_) {
      require_same(k, ratio[0].field());
      require_same(k, ratio[1].field());
      if (ratio[0].is_zero() && ratio[1].is_zero()) throw Error(ErrorCode::ParameterInvalid, "ratio (0:0)");
      FieldElement lead = ratio[0].is_zero() ? ratio[1] : ratio[0];
      if (!lead.is_one()) {
        FieldElement inv = inverse(lead);
        ratio[0] *= inv;
        ratio[1] *= inv;
      }
    }
  }

  const Ratio& operator[](std::size_t i) const { return r_[i]; }
  const FieldElement& a1() const { return r_[0][0]; }
  const FieldElement& a2() const { return r_[0][1]; }
  const FieldElement& b1() const { return r_[1][0]; }
  const FieldElement& b2() const { return r_[1][1]; }
  const FieldElement& c1() const { return r_[2][0]; }
  const FieldElement& c2() const { return r_[2][1]; }
  Field field() const { return r_[0][0].field(); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < 3; ++i)
      s += (i ? ",(" : "(") + boroczky::to_string(r_[i][0]) + ":" + boroczky::to_string(r_[i][1]) + ")";
    return s + ")";
  }

  friend bool operator==(const ParameterTriple& x, const ParameterTriple& y) { return x.r_ == y.r_; }

 private:
  std::array<Ratio, 3> r_;
};

/// Parses "p/q,p/q,p/q" (each p/q read as the ratio (p:q)) or
/// "(p:q),(p:q),(p:q)"; entries are field elements in text form.
inline ParameterTriple parse_parameters(const Field& k, std::string_view text) {
  std::vector<std::string> items;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  items.push_back(cur);
  if (items.size() != 3) throw Error(ErrorCode::ParseError, "expected three ratios in \"" + std::string(text) + "\"");
  std::array<ParameterTriple::Ratio, 3> r;
  for (std::size_t i = 0; i < 3; ++i) {
    std::string s = items[i];
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    std::size_t split = std::string::npos;
    if (!s.empty() && s.front() == '(' && s.back() == ')' && s.find(':') != std::string::npos) {
      s = s.substr(1, s.size() - 2);
      split = s.find(':');
    } else {
      int d = 0;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] == '(') ++d;
        if (s[j] == ')') --d;
        if (s[j] == '/' && d == 0) split = j;
      }
    }
    if (split == std::string::npos) throw Error(ErrorCode::ParseError, "ratio \"" + items[i] + "\" needs the form p/q or (p:q)");
    r[i] = {parse_element(k, s.substr(0, split)), parse_element(k, s.substr(split + 1))};
  }
  return ParameterTriple(r[0], r[1], r[2]);
}

enum class Tag { Generic, D1Smooth, D1Double, D1Triple, D2Menelaus, D3Sextuple, D1D2D3Locus };

inline std::string to_string(Tag t) {
  switch (t) {
    case Tag::Generic: return "Generic";
    case Tag::D1Smooth: return "D1Smooth";
    case Tag::D1Double: return "D1Double";
    case Tag::D1Triple: return "D1Triple";
    case Tag::D2Menelaus: return "D2Menelaus";
    case Tag::D3Sextuple: return "D3Sextuple";
    case Tag::D1D2D3Locus: return "D1D2D3Locus";
  }
  return "?";
}

struct DegenerationClass {
  Tag tag = Tag::Generic;
  /// Names among a1, a2, b1, b2, c1, c2 that vanish.
  std::vector<std::string> zero_coordinates;
  bool condition_i = false;    // a1 a2 b1 b2 c1 c2 = 0
  bool condition_ii = false;   // a1 b1 c1 + a2 b2 c2 = 0
  bool condition_iii = false;  // a1 b1 c1 + 2 a2 b2 c2 = 0
};

inline DegenerationClass classify(const ParameterTriple& m) {
  DegenerationClass out;
  static const char* names[3][2] = {{"a1", "a2"}, {"b1", "b2"}, {"c1", "c2"}};
  int zeros_first = 0, zeros_second = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (m[i][j].is_zero()) {
        out.zero_coordinates.push_back(names[i][j]);
        (j == 0 ? zeros_first : zeros_second) += 1;
      }
  FieldElement p = m.a1() * m.b1() * m.c1();
  FieldElement q = m.a2() * m.b2() * m.c2();
  out.condition_i = !out.zero_coordinates.empty();
  out.condition_ii = (p + q).is_zero();
  out.condition_iii = (p + from_integer(p.field(), 2) * q).is_zero();
  std::size_t zeros = out.zero_coordinates.size();
  if (zeros == 3) out.tag = Tag::D1Triple;
  else if (zeros == 2 && zeros_first == 1 && zeros_second == 1) out.tag = Tag::D1D2D3Locus;
  else if (zeros == 2) out.tag = Tag::D1Double;
  else if (zeros == 1) out.tag = Tag::D1Smooth;
  else if (out.condition_ii) out.tag = Tag::D2Menelaus;
  else if (out.condition_iii) out.tag = Tag::D3Sextuple;
  else out.tag = Tag::Generic;
  return out;
}

// ---------------------------------------------------------------------------
// Numeric build

struct B12Result {
  ParameterTriple params;
  DegenerationClass cls;
  Configuration<FieldElement> configuration;
  /// Point name -> index into configuration.points; several names may share
  /// an index in degenerate cases.
  std::map<std::string, std::size_t> point_labels;
  /// Line name -> index into configuration.lines.
  std::map<std::string, std::size_t> line_labels;
  /// Number of points and lines whose closed form was matched against join/meet.
  std::size_t cross_checked = 0;
};

inline B12Result build(const ParameterTriple& m) {
  DegenerationClass cls = classify(m);
  auto cf = closed_forms(m.a1(), m.a2(), m.b1(), m.b2(), m.c1(), m.c2());
  auto jm = construct(m.a1(), m.a2(), m.b1(), m.b2(), m.c1(), m.c2());
  auto bad = closed_form_mismatches(cf, jm);
  if (!bad.empty()) throw Error(ErrorCode::InternalMismatch, "closed form differs from join/meet for " + bad.front());
  if (cls.tag == Tag::Generic && (jm.points.size() != 19 || jm.lines.size() != 12))
    throw Error(ErrorCode::InternalMismatch, "join/meet construction degenerated at generic parameters " + m.to_string());

  std::vector<ProjLine<FieldElement>> lines;
  std::map<std::string, std::size_t> line_labels;
  for (const auto& [name, t] : cf.lines) {
    if (detail::all_zero(t)) continue;
    ProjLine<FieldElement> l(t, name);
    std::size_t idx = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (lines[i] == l) idx = i;
    if (idx == lines.size()) lines.push_back(l);
    line_labels[name] = idx;
  }
  if (cls.tag == Tag::Generic && lines.size() != 12)
    throw Error(ErrorCode::InternalMismatch, "generic parameters produced " + std::to_string(lines.size()) + " lines");

  B12Result out{m, cls, census(lines), {}, std::move(line_labels), 0};
  for (const auto& [name, t] : cf.points) {
    if (detail::all_zero(t)) continue;
    if (auto idx = out.configuration.find_point(ProjPoint<FieldElement>(t))) out.point_labels[name] = *idx;
  }
  for (const auto& [name, t] : cf.points)
    if (!detail::all_zero(t) && jm.points.count(name)) ++out.cross_checked;
  for (const auto& [name, t] : cf.lines)
    if (!detail::all_zero(t) && jm.lines.count(name)) ++out.cross_checked;
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic identities in Q[a1, a2, b1, b2, c1, c2]

inline QRing parameter_ring() {
  static const QRing ring = make_ring(RationalField{}, {"a1", "a2", "b1", "b2", "c1", "c2"});
  return ring;
}

struct SymbolicReport {
  QPoly l_z, s_z, det_moq, det_mor;
  /// Names whose closed form disagrees with join/meet (expected empty).
  std::vector<std::string> mismatches;
  std::size_t points_constructed = 0;
  std::size_t lines_constructed = 0;
  Labeled<QPoly> closed;

  bool all_vanish() const {
    return l_z.is_zero() && s_z.is_zero() && det_moq.is_zero() && det_mor.is_zero() && mismatches.empty() &&
           points_constructed == 19 && lines_constructed == 12;
  }
};

inline SymbolicReport verify_symbolic_identities() {
  auto r = parameter_ring();
  std::array<QPoly, 6> v;
  for (std::size_t i = 0; i < 6; ++i) v[i] = QPoly::variable(r, i);
  SymbolicReport rep;
  rep.closed = closed_forms(v[0], v[1], v[2], v[3], v[4], v[5]);
  const auto& cf = rep.closed;
  rep.l_z = cf.point("L")[2];
  rep.s_z = cf.point("S")[2];
  rep.det_moq = detail::det3(cf.point("M"), cf.point("O"), cf.point("Q"));
  rep.det_mor = detail::det3(cf.point("M"), cf.point("O"), cf.point("R"));
  auto jm = construct(v[0], v[1], v[2], v[3], v[4], v[5]);
  rep.points_constructed = jm.points.size();
  rep.lines_constructed = jm.lines.size();
  rep.mismatches = closed_form_mismatches(cf, jm);
  return rep;
}

// ---------------------------------------------------------------------------
// Degeneration report

struct DegenerationReport {
  DegenerationClass cls;
  /// One entry per distinct surviving line: the names that coincide on it.
  std::vector<std::vector<std::string>> line_groups;
  std::map<std::size_t, std::size_t> census;
  /// Census restricted to points carrying at least one label.
  std::map<std::size_t, std::size_t> labeled_census;
  std::map<std::string, std::size_t> multiplicity_of;
  /// D3 only: rows A..P against the 12 lines, in the column naming of the
  /// degenerate figure (NG through E is EG, CP is CE, MO is EM).
  std::vector<std::string> table_rows;
  std::vector<std::string> table_columns;
  std::vector<std::vector<bool>> table;
};

inline const std::vector<std::pair<std::string, std::string>>& d3_columns() {
  static const std::vector<std::pair<std::string, std::string>> cols{
      {"AC", "AC"}, {"AB", "AB"}, {"BC", "BC"}, {"AF", "AF"}, {"BD", "BD"}, {"EF", "EF"},
      {"DE", "ED"}, {"HJ", "HJ"}, {"IK", "IK"}, {"EG", "NG"}, {"CE", "CP"}, {"EM", "MO"}};
  return cols;
}

inline DegenerationReport degeneration_report(const B12Result& res) {
  if (res.cls.tag == Tag::Generic)
    throw Error(ErrorCode::GenericParameter, "parameters " + res.params.to_string() + " are not degenerate");
  DegenerationReport rep;
  rep.cls = res.cls;
  const auto& cfg = res.configuration;
  rep.line_groups.resize(cfg.lines.size());
  for (const auto& name : line_names()) {
    auto it = res.line_labels.find(name);
    if (it != res.line_labels.end()) rep.line_groups[it->second].push_back(name);
  }
  rep.census = cfg.census;
  std::vector<bool> labeled(cfg.points.size(), false);
  for (const auto& [name, idx] : res.point_labels) {
    labeled[idx] = true;
    rep.multiplicity_of[name] = cfg.points[idx].multiplicity();
  }
  for (std::size_t i = 0; i < cfg.points.size(); ++i)
    if (labeled[i]) ++rep.labeled_census[cfg.points[i].multiplicity()];
  if (res.cls.tag == Tag::D3Sextuple) {
    for (const auto& [col, line] : d3_columns()) rep.table_columns.push_back(col);
    for (const auto& name : point_names()) {
      if (name > "P") break;
      rep.table_rows.push_back(name);
      std::vector<bool> row;
      auto pi = res.point_labels.find(name);
      for (const auto& [col, line] : d3_columns()) {
        auto li = res.line_labels.find(line);
        bool on = false;
        if (pi != res.point_labels.end() && li != res.line_labels.end()) {
          const auto& ls = cfg.points[pi->second].lines;
          on = std::find(ls.begin(), ls.end(), li->second) != ls.end();
        }
        row.push_back(on);
      }
      rep.table.push_back(std::move(row));
    }
  }
  return rep;
}

inline DegenerationReport degeneration_report(const ParameterTriple& m) { return degeneration_report(build(m)); }

// ---------------------------------------------------------------------------
// Grid scan

struct ScanRecord {
  std::optional<ParameterTriple> params;
  DegenerationClass cls;
  std::map<std::size_t, std::size_t> census;
  std::size_t line_count = 0;
};

using RatioList = std::vector<ParameterTriple::Ratio>;

/// One record per grid point in lexicographic (a, b, c) order.
inline std::vector<ScanRecord> scan(const std::array<RatioList, 3>& grid, unsigned threads = 0) {
  std::size_t na = grid[0].size(), nb = grid[1].size(), nc = grid[2].size();
  std::size_t total = na * nb * nc;
  return parallel_map(
      total,
      [&](std::size_t idx) {
        std::size_t ia = idx / (nb * nc), ib = (idx / nc) % nb, ic = idx % nc;
        ParameterTriple m(grid[0][ia], grid[1][ib], grid[2][ic]);
        B12Result res = build(m);
        if (res.cls.tag == Tag::Generic && (res.configuration.count(3) != 19 || res.configuration.count(2) != 9 ||
                                            res.configuration.census.size() != 2))
          throw Error(ErrorCode::InternalMismatch, "generic parameters " + m.to_string() + " gave an unexpected census");
        ScanRecord rec;
        rec.params = m;
        rec.cls = res.cls;
        rec.census = res.configuration.census;
        rec.line_count = res.configuration.lines.size();
        return rec;
      },
      threads);
}

}  // namespace boroczky::b12
