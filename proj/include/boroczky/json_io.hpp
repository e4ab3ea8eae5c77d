#pragma once

// JSON encodings of configurations and of the reports of each module.
// Scalars and polynomials are written in their text form so that they
// parse back exactly.

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "b12.hpp"
#include "b15.hpp"
#include "containment.hpp"
#include "ellcurve.hpp"
#include "projgeom.hpp"
#include "scalar_parse.hpp"

namespace boroczky::json_io {

using Json = nlohmann::ordered_json;

template <class S>
Json coords(const Homogeneous<S, PointTag>& p) {
  return Json::array({ScalarTraits<S>::to_string(p[0]), ScalarTraits<S>::to_string(p[1]), ScalarTraits<S>::to_string(p[2])});
}

template <class S>
Json coords(const Homogeneous<S, LineTag>& l) {
  return Json::array({ScalarTraits<S>::to_string(l[0]), ScalarTraits<S>::to_string(l[1]), ScalarTraits<S>::to_string(l[2])});
}

inline Json census_json(const std::map<std::size_t, std::size_t>& census) {
  Json out = Json::object();
  // Highest multiplicity first, matching how censuses are usually quoted.
  for (auto it = census.rbegin(); it != census.rend(); ++it) out[std::to_string(it->first)] = it->second;
  return out;
}

/// `labels` maps a point index to its label; absent points get "".
template <class S>
Json configuration(const Configuration<S>& cfg, const std::map<std::size_t, std::string>& labels = {}) {
  Json lines = Json::array();
  for (const auto& l : cfg.lines) lines.push_back(coords(l));
  Json points = Json::array();
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    const auto& rec = cfg.points[i];
    auto it = labels.find(i);
    points.push_back({{"coords", coords(rec.point)},
                      {"mult", rec.multiplicity()},
                      {"lines", rec.lines},
                      {"label", it == labels.end() ? std::string() : it->second}});
  }
  return {{"field", cfg.field}, {"lines", lines}, {"points", points}, {"census", census_json(cfg.census)}};
}

/// Several names on one point are joined with '='.
inline std::map<std::size_t, std::string> invert_labels(const std::map<std::string, std::size_t>& by_name,
                                                        const std::vector<std::string>& order) {
  std::map<std::size_t, std::string> out;
  for (const auto& name : order) {
    auto it = by_name.find(name);
    if (it == by_name.end()) continue;
    auto& s = out[it->second];
    s += (s.empty() ? "" : "=") + name;
  }
  return out;
}

/// Parses the configuration format back: the lines are read in the stored
/// field and the census is recomputed; point labels are kept by coordinates.
struct ParsedConfiguration {
  Configuration<FieldElement> configuration;
  std::map<std::size_t, std::string> labels;
};

inline ParsedConfiguration parse_configuration(const Json& j) {
  try {
    Field k = parse_field(j.at("field").get<std::string>());
    std::vector<ProjLine<FieldElement>> lines;
    for (const auto& l : j.at("lines")) {
      if (l.size() != 3) throw Error(ErrorCode::ParseError, "a line needs three coordinates");
      lines.emplace_back(std::array<FieldElement, 3>{parse_element(k, l[0].get<std::string>()),
                                                     parse_element(k, l[1].get<std::string>()),
                                                     parse_element(k, l[2].get<std::string>())});
    }
    ParsedConfiguration out{census(lines), {}};
    out.configuration.field = to_string(k);
    if (j.contains("points"))
      for (const auto& p : j.at("points")) {
        std::string label = p.value("label", "");
        if (label.empty()) continue;
        const auto& c = p.at("coords");
        ProjPoint<FieldElement> pt(std::array<FieldElement, 3>{parse_element(k, c[0].get<std::string>()),
                                                               parse_element(k, c[1].get<std::string>()),
                                                               parse_element(k, c[2].get<std::string>())});
        if (auto idx = out.configuration.find_point(pt)) out.labels[*idx] = label;
      }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("configuration JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// b12

inline Json params(const b12::ParameterTriple& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < 3; ++i) out.push_back({to_string(m[i][0]), to_string(m[i][1])});
  return out;
}

inline Json degeneration_class(const b12::DegenerationClass& c) {
  return {{"tag", b12::to_string(c.tag)},
          {"zero_coordinates", c.zero_coordinates},
          {"conditions", {{"i", c.condition_i}, {"ii", c.condition_ii}, {"iii", c.condition_iii}}}};
}

inline Json b12_result(const b12::B12Result& r) {
  Json out = configuration(r.configuration, invert_labels(r.point_labels, b12::point_names()));
  Json pts = Json::object(), lns = Json::object();
  for (const auto& name : b12::point_names())
    if (r.point_labels.count(name)) pts[name] = r.point_labels.at(name);
  for (const auto& name : b12::line_names())
    if (r.line_labels.count(name)) lns[name] = r.line_labels.at(name);
  out["class"] = b12::to_string(r.cls.tag);
  out["labels"] = {{"points", pts}, {"lines", lns}};
  out["params"] = params(r.params);
  return out;
}

inline Json degeneration_report(const b12::DegenerationReport& rep) {
  Json out{{"class", degeneration_class(rep.cls)},
           {"line_groups", rep.line_groups},
           {"census", census_json(rep.census)},
           {"labeled_census", census_json(rep.labeled_census)},
           {"multiplicity", rep.multiplicity_of}};
  if (!rep.table.empty()) {
    Json rows = Json::object();
    for (std::size_t i = 0; i < rep.table_rows.size(); ++i) {
      std::string row;
      for (bool b : rep.table[i]) row += b ? '+' : '.';
      rows[rep.table_rows[i]] = row;
    }
    out["table"] = {{"columns", rep.table_columns}, {"rows", rows}};
  }
  return out;
}

inline Json symbolic_report(const b12::SymbolicReport& rep) {
  return {{"L_z", to_string(rep.l_z)},
          {"S_z", to_string(rep.s_z)},
          {"det_MOQ", to_string(rep.det_moq)},
          {"det_MOR", to_string(rep.det_mor)},
          {"points_constructed", rep.points_constructed},
          {"lines_constructed", rep.lines_constructed},
          {"mismatches", rep.mismatches},
          {"all_vanish", rep.all_vanish()}};
}

inline Json scan_record(const b12::ScanRecord& r) {
  return {{"params", params(*r.params)},
          {"class", b12::to_string(r.cls.tag)},
          {"lines", r.line_count},
          {"census", census_json(r.census)}};
}

// ---------------------------------------------------------------------------
// b15

inline Json facts(const b15::FactsReport& f) {
  Json fs = Json::object();
  for (std::size_t i = 0; i < 3; ++i) fs[b15::facts()[i].to_string()] = f.facts[i];
  return fs;
}

inline Json b15_result(const b15::B15Result& r) {
  std::vector<std::string> order;
  for (std::size_t i = 1; i <= 31; ++i) order.push_back(b15::point_name(i));
  Json out = configuration(r.configuration, invert_labels(r.point_labels, order));
  out["a"] = to_string(r.a);
  out["b"] = to_string(r.b);
  out["facts"] = facts(r.facts);
  out["conditions"] = r.facts.conditions;
  return out;
}

inline Json condition_report() {
  Json conds = Json::array();
  auto polys = b15::condition_polynomials();
  for (std::size_t i = 0; i < polys.size(); ++i) {
    auto st = b15::strip_excluded(polys[i]);
    Json stripped = Json::object();
    for (const auto& [name, e] : st.stripped) stripped[name] = e;
    conds.push_back({{"incidence", b15::conditions()[i].to_string()},
                     {"polynomial", to_string(polys[i])},
                     {"excluded_factors", stripped},
                     {"remainder", to_string(st.remainder)},
                     {"divisible_by_f", st.divisible_by_f}});
  }
  return conds;
}

inline Json rational_attempt(const b15::RationalAttempt& r) {
  Json out{{"a", r.a.get_str()}, {"valid_pair", r.valid_pair}, {"explanation", r.explanation}};
  out["discriminant"] = r.discriminant ? Json(r.discriminant->get_str()) : Json(nullptr);
  return out;
}

// ---------------------------------------------------------------------------
// ellcurve

inline Json curve(const ellcurve::EllipticCurve& e) {
  Json out = Json::array();
  for (const auto& c : e.coefficients()) {
    if (c.get_den() == 1 && c.get_num().fits_slong_p()) out.push_back(c.get_num().get_si());
    else out.push_back(c.get_str());
  }
  return out;
}

inline Json points(const std::vector<ellcurve::ECPoint>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline Json rational_points(const ellcurve::RationalPointsReport& r) {
  Json integral = Json::array();
  for (const auto& [x, y] : r.nagell_lutz.integral_points) integral.push_back({x.get_str(), y.get_str()});
  return {{"height_bound", r.height_bound},
          {"search", points(r.search)},
          {"nagell_lutz",
           {{"short_model", {r.nagell_lutz.model.A.get_str(), r.nagell_lutz.model.B.get_str()}},
            {"discriminant_term", r.nagell_lutz.discriminant_term.get_str()},
            {"candidates", r.nagell_lutz.candidates},
            {"integral_points", integral},
            {"torsion", points(r.nagell_lutz.torsion)}}},
          {"agree", r.agree()}};
}

inline Json certificate(const ellcurve::Certificate& c) {
  Json pbs = Json::array();
  for (const auto& pb : c.pullbacks) {
    Json j{{"point", pb.point.to_string()}};
    j["a"] = pb.a ? Json(pb.a->get_str()) : Json(nullptr);
    j["T"] = pb.T ? Json(pb.T->get_str()) : Json(nullptr);
    j["b"] = pb.b ? Json(pb.b->get_str()) : Json(nullptr);
    j["steps"] = pb.steps;
    j["verdict"] = pb.verdict;
    pbs.push_back(std::move(j));
  }
  return {{"curve", curve(c.curve)},
          {"height_bound", c.height_bound},
          {"points", points(c.points)},
          {"methods_agree", c.methods_agree},
          {"pullbacks", pbs},
          {"verdict", c.verdict}};
}

// ---------------------------------------------------------------------------
// containment

inline Json containment_verdict(const containment::ContainmentVerdict& v) {
  Json runs = Json::array();
  for (const auto& run : v.modular) {
    Json j{{"prime", run.prime}, {"lucky", run.lucky}};
    j["first_outside"] = run.first_outside ? Json(*run.first_outside) : Json(nullptr);
    if (!run.note.empty()) j["note"] = run.note;
    runs.push_back(std::move(j));
  }
  Json out{{"status", containment::to_string(v.status)}, {"certification", v.certification}, {"m", v.m}, {"r", v.r}};
  out["witness"] = v.witness ? Json(to_string(*v.witness)) : Json(nullptr);
  if (v.witness) out["witness_degree"] = v.witness->total_degree();
  out["witness_multiplicity_verified"] = v.witness_multiplicity_verified;
  out["degrees"] = {{"ideal", v.ideal_degrees}, {"symbolic_power", v.symbolic_degrees}, {"bound", v.degree_bound}};
  out["primes"] = v.primes();
  out["modular"] = runs;
  out["exact_completed"] = v.exact_completed;
  if (!v.exact_note.empty()) out["exact_note"] = v.exact_note;
  out["paths_agree"] = v.paths_agree;
  return out;
}

}  // namespace boroczky::json_io
