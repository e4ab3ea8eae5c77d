#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace boroczky::cli {

using json_io::Json;

namespace {

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::ParseError, "cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

std::string census_text(const std::map<std::size_t, std::size_t>& census) {
  std::string s = "{";
  bool first = true;
  for (auto it = census.rbegin(); it != census.rend(); ++it) {
    s += (first ? "" : ", ") + std::to_string(it->first) + ": " + std::to_string(it->second);
    first = false;
  }
  return s + "}";
}

Rational parse_rational(const std::string& text) {
  FieldElement x = parse_element(rationals(), text);
  return x.rational();
}

/// A ratio list "p/q,p/q,..." or "(p:q),(p:q),...".
b12::RatioList parse_ratio_list(const Field& k, const std::string& text) {
  b12::RatioList out;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    std::string s = cur;
    cur.clear();
    if (s.empty()) return;
    std::string body = s;
    std::size_t split = std::string::npos;
    if (body.front() == '(' && body.back() == ')' && body.find(':') != std::string::npos) {
      body = body.substr(1, body.size() - 2);
      split = body.find(':');
    } else {
      split = body.rfind('/');
    }
    if (split == std::string::npos) throw Error(ErrorCode::ParseError, "ratio \"" + s + "\" needs the form p/q or (p:q)");
    out.push_back({parse_element(k, body.substr(0, split)), parse_element(k, body.substr(split + 1))});
  };
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) flush();
    else if (ch != ' ') cur += ch;
  }
  flush();
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// b12

int b12_build(const Globals& g, const std::string& field, const std::string& params) {
  auto m = b12::parse_parameters(parse_field(field), params);
  auto res = b12::build(m);
  Output o(g.out);
  bool generic = res.cls.tag == b12::Tag::Generic;
  if (g.json) {
    Json j = json_io::b12_result(res);
    if (!generic) j["degeneration"] = json_io::degeneration_report(b12::degeneration_report(res));
    o.stream() << j.dump(2) << "\n";
  } else {
    auto& s = o.stream();
    s << "parameters " << m.to_string() << "\n";
    s << "class " << b12::to_string(res.cls.tag) << "\n";
    s << "lines " << res.configuration.lines.size() << "\n";
    s << "census " << census_text(res.configuration.census) << "\n";
    s << "closed forms matched against join/meet: " << res.cross_checked << "\n";
    for (const auto& name : b12::point_names()) {
      auto it = res.point_labels.find(name);
      if (it == res.point_labels.end()) continue;
      const auto& rec = res.configuration.points[it->second];
      s << "  " << name << " = " << rec.point.to_string() << "  on " << rec.multiplicity() << " lines\n";
    }
    if (!generic) {
      auto rep = b12::degeneration_report(res);
      s << "labeled census " << census_text(rep.labeled_census) << "\n";
      for (const auto& grp : rep.line_groups) {
        s << "  line";
        for (const auto& n : grp) s << " " << n;
        s << "\n";
      }
      if (!rep.table.empty()) {
        s << "incidence table\n     ";
        for (const auto& c : rep.table_columns) s << " " << c;
        s << "\n";
        for (std::size_t i = 0; i < rep.table_rows.size(); ++i) {
          s << "  " << rep.table_rows[i] << "  ";
          for (bool b : rep.table[i]) s << "  " << (b ? '+' : '.');
          s << "\n";
        }
      }
    }
  }
  return generic ? kOk : kNegative;
}

int b12_classify(const Globals& g, const std::string& field, const std::string& params) {
  auto m = b12::parse_parameters(parse_field(field), params);
  auto cls = b12::classify(m);
  Output o(g.out);
  if (g.json) {
    Json j = json_io::degeneration_class(cls);
    j["params"] = json_io::params(m);
    o.stream() << j.dump(2) << "\n";
  } else {
    o.stream() << b12::to_string(cls.tag) << "\n";
  }
  return cls.tag == b12::Tag::Generic ? kOk : kNegative;
}

int b12_identities(const Globals& g) {
  auto rep = b12::verify_symbolic_identities();
  Output o(g.out);
  if (g.json) {
    o.stream() << json_io::symbolic_report(rep).dump(2) << "\n";
  } else {
    auto& s = o.stream();
    s << "z-coordinate of L: " << to_string(rep.l_z) << "\n";
    s << "z-coordinate of S: " << to_string(rep.s_z) << "\n";
    s << "det(M, O, Q): " << to_string(rep.det_moq) << "\n";
    s << "det(M, O, R): " << to_string(rep.det_mor) << "\n";
    s << "join/meet construction: " << rep.points_constructed << " points, " << rep.lines_constructed
      << " lines, " << rep.mismatches.size() << " closed-form mismatches\n";
  }
  if (!rep.all_vanish()) throw Error(ErrorCode::InternalMismatch, "a symbolic identity fails");
  return kOk;
}

int b12_scan(const Globals& g, const std::string& field, const std::string& all, const std::string& a,
             const std::string& b, const std::string& c, unsigned random) {
  Field k = parse_field(field);
  std::array<b12::RatioList, 3> grid;
  if (random > 0) {
    // Independent random triples, entries in [-9, 9].
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<int> dist(-9, 9);
    Json arr = Json::array();
    Output o(g.out);
    for (unsigned n = 0; n < random; ++n) {
      std::array<b12::RatioList, 3> one;
      for (auto& slot : one) {
        int p = 0, q = 0;
        while (p == 0 && q == 0) p = dist(rng), q = dist(rng);
        slot.push_back({from_integer(k, p), from_integer(k, q)});
      }
      auto r = b12::scan(one, g.threads);
      if (g.json) arr.push_back(json_io::scan_record(r[0]));
      else
        o.stream() << r[0].params->to_string() << " " << b12::to_string(r[0].cls.tag) << " lines " << r[0].line_count
                   << " census " << census_text(r[0].census) << "\n";
    }
    if (g.json) o.stream() << arr.dump(2) << "\n";
    return kOk;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string& text = i == 0 ? a : i == 1 ? b : c;
    grid[i] = parse_ratio_list(k, text.empty() ? all : text);
  }
  auto recs = b12::scan(grid, g.threads);
  Output o(g.out);
  if (g.json) {
    Json arr = Json::array();
    for (const auto& r : recs) arr.push_back(json_io::scan_record(r));
    o.stream() << arr.dump(2) << "\n";
  } else {
    for (const auto& r : recs)
      o.stream() << r.params->to_string() << " " << b12::to_string(r.cls.tag) << " lines " << r.line_count
                 << " census " << census_text(r.census) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// b15

int b15_conditions(const Globals& g) {
  QPoly gen = b15::derive_condition_ideal();
  std::string factored = "(a-1)^2 * (" + to_string(b15::f_polynomial()) + ")";
  Output o(g.out);
  if (g.json) {
    Json j{{"generator", to_string(gen)}, {"factored", factored}, {"conditions", json_io::condition_report()}};
    o.stream() << j.dump(2) << "\n";
  } else {
    o.stream() << factored << "\n";
  }
  return kOk;
}

namespace {

/// The pair (a, b) at a rational a, root index picking one solution of
/// f(a, b) = 0; "generic" works over Q(a)[b]/(f).
b15::B15Parameters b15_params(const std::string& a, unsigned root) {
  if (a == "generic") return b15::generic_parameters();
  auto sol = b15::solve_b(parse_rational(a));
  if (sol.params.empty()) {
    std::string why;
    for (const auto& [b, reason] : sol.rejected) why += (why.empty() ? "" : "; ") + reason;
    throw Error(ErrorCode::ParameterInvalid, "no admissible b for a = " + a + ": " + why);
  }
  if (root >= sol.params.size())
    throw Error(ErrorCode::ParameterInvalid, "root index " + std::to_string(root) + " out of range");
  return sol.params[root];
}

}  // namespace

int b15_build(const Globals& g, const std::string& a, unsigned root) {
  auto res = b15::build(b15_params(a, root));
  Output o(g.out);
  if (g.json) {
    o.stream() << json_io::b15_result(res).dump(2) << "\n";
  } else {
    auto& s = o.stream();
    s << "field " << res.configuration.field << "\n";
    s << "a = " << to_string(res.a) << ", b = " << to_string(res.b) << "\n";
    s << "lines " << res.configuration.lines.size() << "\n";
    s << "census " << census_text(res.configuration.census) << "\n";
    for (std::size_t i = 0; i < 3; ++i)
      s << "fact " << b15::facts()[i].to_string() << ": " << (res.facts.facts[i] ? "holds" : "fails") << "\n";
    for (std::size_t i = 0; i < 8; ++i)
      s << "incidence " << b15::conditions()[i].to_string() << ": " << (res.facts.conditions[i] ? "holds" : "fails")
        << "\n";
    for (const auto& n : res.census_notes) s << "note: " << n << "\n";
  }
  return kOk;
}

int b15_attempt(const Globals& g, const std::string& a) {
  auto r = b15::attempt_rational(parse_rational(a));
  Output o(g.out);
  if (g.json) o.stream() << json_io::rational_attempt(r).dump(2) << "\n";
  else o.stream() << "a = " << r.a.get_str() << ": " << r.explanation << "\n";
  return r.valid_pair ? kOk : kNegative;
}

// ---------------------------------------------------------------------------
// curve

int curve_points(const Globals& g, long bound) {
  auto e = ellcurve::parameter_curve();
  auto rp = ellcurve::rational_points(e, bound, g.threads);
  Output o(g.out);
  if (g.json) {
    o.stream() << json_io::rational_points(rp).dump(2) << "\n";
  } else {
    auto& s = o.stream();
    s << "curve " << e.to_string() << "\n";
    s << "points of height <= " << bound << ":";
    for (const auto& p : rp.search) s << " " << p.to_string();
    s << "\nNagell-Lutz torsion:";
    for (const auto& p : rp.nagell_lutz.torsion) s << " " << p.to_string();
    s << "\nmethods agree: " << (rp.agree() ? "yes" : "no") << "\n";
  }
  return kOk;
}

int curve_certify(const Globals& g, long bound) {
  auto c = ellcurve::certify_no_rational_b15(bound, g.threads);
  Output o(g.out);
  if (g.json) {
    o.stream() << json_io::certificate(c).dump(2) << "\n";
  } else {
    auto& s = o.stream();
    s << "curve " << c.curve.to_string() << "\n";
    for (const auto& pb : c.pullbacks) {
      s << pb.point.to_string() << "\n";
      for (const auto& step : pb.steps) s << "  " << step << "\n";
      s << "  => " << pb.verdict << "\n";
    }
    s << "verdict " << c.verdict << "\n";
  }
  if (c.verdict == "NoRationalB15") return kNegative;
  if (c.verdict == "RationalB15Found") return kOk;
  throw Error(ErrorCode::InternalMismatch, "search and Nagell-Lutz disagree");
}

// ---------------------------------------------------------------------------
// Configuration sources for containment and render

namespace {

json_io::ParsedConfiguration load(const Source& src) {
  int given = !src.in.empty() + !src.b12.empty() + !src.b15.empty();
  if (given != 1) throw Error(ErrorCode::ParameterInvalid, "exactly one of --in, --b12, --b15 is required");
  if (!src.in.empty()) return json_io::parse_configuration(read_json(src.in));
  if (!src.b12.empty()) {
    auto r = b12::build(b12::parse_parameters(rationals(), src.b12));
    return {r.configuration, json_io::invert_labels(r.point_labels, b12::point_names())};
  }
  auto r = b15::build(b15_params(src.b15, src.root));
  std::vector<std::string> order;
  for (std::size_t i = 1; i <= 31; ++i) order.push_back(b15::point_name(i));
  return {r.configuration, json_io::invert_labels(r.point_labels, order)};
}

}  // namespace

int containment_check(const Globals& g, const Source& src, std::size_t min_mult, containment::ContainmentOptions opt,
                      bool line_product) {
  std::optional<containment::PointSet> chosen;
  if (!src.points.empty()) {
    if (!src.in.empty() || !src.b12.empty() || !src.b15.empty() || line_product)
      throw Error(ErrorCode::ParameterInvalid, "--points excludes --in, --b12, --b15 and --line-product");
    std::vector<ProjPoint<FieldElement>> pts;
    std::istringstream in(src.points);
    std::string item;
    while (std::getline(in, item, ';')) {
      auto open = item.find('('), close = item.rfind(')');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw Error(ErrorCode::ParseError, "point \"" + item + "\" needs the form (x:y:z)");
      std::array<FieldElement, 3> c;
      std::istringstream coords(item.substr(open + 1, close - open - 1));
      std::string entry;
      std::size_t n = 0;
      while (std::getline(coords, entry, ':')) {
        if (n == 3) throw Error(ErrorCode::ParseError, "point \"" + item + "\" has more than three coordinates");
        c[n++] = parse_element(rationals(), entry);
      }
      if (n != 3) throw Error(ErrorCode::ParseError, "point \"" + item + "\" needs three coordinates");
      pts.emplace_back(c);
    }
    chosen = containment::PointSet::from_points(pts);
  } else {
    auto cfg = load(src);
    chosen = containment::points_of_multiplicity_at_least(cfg.configuration, min_mult);
    if (line_product) opt.witness = containment::line_product_witness(cfg.configuration).form;
  }
  const auto& ps = *chosen;
  opt.seed = g.seed;
  opt.threads = g.threads;
  auto v = containment::check_containment(ps, opt);
  Output o(g.out);
  if (g.json) {
    Json j = json_io::containment_verdict(v);
    j["points"] = ps.size();
    o.stream() << j.dump(2) << "\n";
  } else {
    auto& s = o.stream();
    s << "points " << ps.size() << " (multiplicity >= " << min_mult << ")\n";
    s << "I^(" << v.m << ") in I^" << v.r << ": " << containment::to_string(v.status) << " [" << v.certification
      << "]\n";
    if (v.witness) s << "witness of degree " << v.witness->total_degree() << ": " << to_string(*v.witness) << "\n";
    for (const auto& run : v.modular) {
      s << "  mod " << run.prime << ": ";
      if (!run.lucky) s << run.note;
      else if (run.first_outside) s << "candidate " << *run.first_outside << " outside";
      else s << "all candidates inside";
      s << "\n";
    }
    if (!v.exact_note.empty()) s << "exact run: " << v.exact_note << "\n";
    std::cerr << "elapsed " << v.seconds << " s\n";
  }
  if (v.status == containment::Status::Contained) return kOk;
  if (v.status == containment::Status::NotContained || v.certification == "modular-certified") return kNegative;
  throw Error(ErrorCode::ResourceExceeded, "containment undecided within the budget");
}

int render_cmd(const Globals& g, const Source& src, const std::string& chart, const std::string& window,
               const std::string& format) {
  auto cfg = load(src);
  render::RenderOptions opt;
  if (chart != "auto") opt.chart = render::parse_chart(chart);
  if (!window.empty()) opt.window = render::parse_window(window);
  opt.point_labels = cfg.labels;
  std::string doc =
      render::render(cfg.configuration, opt, format == "tikz" ? render::Format::Tikz : render::Format::Svg);
  Output o(g.out);
  o.stream() << doc;
  return kOk;
}

}  // namespace boroczky::cli
