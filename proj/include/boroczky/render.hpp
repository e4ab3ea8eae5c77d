#pragma once

// SVG and TikZ drawings of a line arrangement in an affine chart.
//
// Every incidence comes from the Configuration; the renderer only maps
// exact coordinates to decimals and clips lines to the window.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "projgeom.hpp"

namespace boroczky::render {

/// Working precision of the decimal conversion, in bits.
inline constexpr mp_bitcnt_t kPrecision = 256;
/// Significant digits of the stated approximation of each square root.
inline constexpr int kSqrtDigits = 30;
/// Decimals written per coordinate.
inline constexpr int kEmitDecimals = 12;

enum class Format { Svg, Tikz };

/// The affine chart form(p) = 1. The two remaining chart coordinates are
/// u = m1(p) / form(p) and v = m2(p) / form(p).
struct Chart {
  std::array<Rational, 3> form;
  std::array<Rational, 3> m1, m2;
  std::string name;

  static Chart z() { return {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, "z=1"}; }
  static Chart y() { return {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}, "y=1"}; }
  static Chart x() { return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, "x=1"}; }

  /// Completes the form with two coordinate functionals.
  static Chart custom(const std::array<Rational, 3>& form) {
    static const std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (const auto& [i, j] : pairs) {
      std::array<Rational, 3> a{0, 0, 0}, b{0, 0, 0};
      a[i] = 1;
      b[j] = 1;
      if (boroczky::detail::det3(a, b, form) != 0) {
        std::ostringstream name;
        name << form[0] << "*x + " << form[1] << "*y + " << form[2] << "*z = 1";
        return {form, a, b, name.str()};
      }
    }
    throw Error(ErrorCode::ChartDegenerate, "chart form is zero");
  }
};

/// Parses "z", "y", "x" or "a,b,c" (rationals) into a chart.
inline Chart parse_chart(const std::string& text) {
  if (text == "z" || text == "z=1") return Chart::z();
  if (text == "y" || text == "y=1") return Chart::y();
  if (text == "x" || text == "x=1") return Chart::x();
  std::array<Rational, 3> f;
  std::istringstream in(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 3) throw Error(ErrorCode::ParseError, "chart form \"" + text + "\" has more than three entries");
    try {
      f[n] = Rational(item);
      f[n].canonicalize();
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ParseError, "chart entry \"" + item + "\" is not a rational");
    }
    ++n;
  }
  if (n != 3) throw Error(ErrorCode::ParseError, "chart form \"" + text + "\" needs three entries");
  return Chart::custom(f);
}

struct Window {
  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;

  void validate() const {
    if (!(xmax > xmin) || !(ymax > ymin)) throw Error(ErrorCode::EmptyWindow, "window has no area");
  }
};

/// Parses "xmin,xmax,ymin,ymax".
inline Window parse_window(const std::string& text) {
  std::array<double, 4> v{};
  std::istringstream in(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 4) throw Error(ErrorCode::ParseError, "window \"" + text + "\" has more than four entries");
    try {
      v[n++] = std::stod(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "window entry \"" + item + "\" is not a number");
    }
  }
  if (n != 4) throw Error(ErrorCode::ParseError, "window \"" + text + "\" needs four entries");
  Window w{v[0], v[1], v[2], v[3]};
  w.validate();
  return w;
}

// ---------------------------------------------------------------------------
// Exact to decimal

/// Converts field elements of Q and of real quadratic towers over Q to
/// decimals; each square root is replaced by its 30-digit approximation,
/// which is recorded for the document.
class Decimalizer {
 public:
  mpf_class operator()(const FieldElement& x) {
    switch (x.kind()) {
      case FieldKind::Rationals: return mpf_class(x.rational(), kPrecision);
      case FieldKind::QuadExt: {
        const auto& c = x.coeffs();
        mpf_class u = c.size() > 0 ? (*this)(c[0]) : mpf_class(0, kPrecision);
        mpf_class v = c.size() > 1 ? (*this)(c[1]) : mpf_class(0, kPrecision);
        return mpf_class(u + v * root(*x.field()->radicand), kPrecision);
      }
      default:
        throw Error(ErrorCode::UnsupportedField, "cannot draw over " + to_string(x.field()));
    }
  }

  /// "sqrt(d) ~ digits" for every root used so far, in first-use order.
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  mpf_class root(const FieldElement& d) {
    std::string key = to_string(d);
    auto it = roots_.find(key);
    if (it != roots_.end()) return it->second;
    mpf_class value = (*this)(d);
    if (value <= 0) throw Error(ErrorCode::UnsupportedField, "sqrt(" + key + ") is not real");
    mpf_class exact(0, kPrecision);
    mpf_sqrt(exact.get_mpf_t(), value.get_mpf_t());
    mp_exp_t exp;
    std::string digits = exact.get_str(exp, 10, kSqrtDigits);
    mpf_class rounded(0, kPrecision);
    rounded.set_str("0." + digits + "e" + std::to_string(exp), 10);
    roots_.emplace(key, rounded);
    notes_.push_back("sqrt(" + key + ") ~ " + fixed(rounded, std::max<int>(0, kSqrtDigits - static_cast<int>(exp))));
    return rounded;
  }

 public:
  static std::string fixed(const mpf_class& x, int decimals) {
    int n = gmp_snprintf(nullptr, 0, "%.*Ff", decimals, x.get_mpf_t());
    std::string s(static_cast<std::size_t>(n) + 1, '\0');
    gmp_snprintf(s.data(), s.size(), "%.*Ff", decimals, x.get_mpf_t());
    s.pop_back();
    if (!s.empty() && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
  }

 private:
  std::map<std::string, mpf_class> roots_;
  std::vector<std::string> notes_;
};

// ---------------------------------------------------------------------------
// Scene

struct Segment {
  std::size_t line;
  std::string label;
  /// Supporting line a u + b v + c = 0 in chart coordinates.
  std::array<double, 3> equation;
  double x1, y1, x2, y2;
};

struct Marker {
  std::size_t point;
  std::string label;
  std::size_t multiplicity;
  std::vector<std::size_t> lines;
  double x, y;
};

struct Scene {
  std::string chart;
  Window window;
  std::vector<Segment> segments;
  std::vector<Marker> markers;
  /// Lines at infinity, triple points at infinity and lines missing the
  /// window.
  std::vector<std::string> legend;
  std::vector<std::string> approximations;
};

struct RenderOptions {
  /// choose_chart(cfg) when empty.
  std::optional<Chart> chart;
  /// Auto-fit when empty.
  std::optional<Window> window;
  /// Point index -> label; unlabeled points of multiplicity >= 3 get "p<index>".
  std::map<std::size_t, std::string> point_labels;
  /// Margin added on each side by the auto-fit, relative to the extent.
  double margin = 0.15;
};

namespace detail {

inline mpf_class dot(const std::array<Rational, 3>& f, const std::array<mpf_class, 3>& p) {
  mpf_class out(0, kPrecision);
  for (std::size_t i = 0; i < 3; ++i)
    if (f[i] != 0) out += mpf_class(f[i], kPrecision) * p[i];
  return out;
}

inline std::string line_name(const Configuration<FieldElement>& cfg, std::size_t i) {
  const auto& l = cfg.lines[i];
  return l.label().empty() ? "l" + std::to_string(i) : l.label();
}

/// Clips a u + b v + c = 0 to the window; nullopt when it misses.
inline std::optional<std::array<mpf_class, 4>> clip(const std::array<mpf_class, 3>& e, const Window& w) {
  std::vector<std::array<mpf_class, 2>> hits;
  auto add = [&](const mpf_class& u, const mpf_class& v) {
    if (u < w.xmin || u > w.xmax || v < w.ymin || v > w.ymax) return;
    for (const auto& h : hits)
      if (h[0] == u && h[1] == v) return;
    hits.push_back({u, v});
  };
  const mpf_class& a = e[0];
  const mpf_class& b = e[1];
  const mpf_class& c = e[2];
  if (b != 0)
    for (double u : {w.xmin, w.xmax}) add(mpf_class(u, kPrecision), mpf_class(-(a * u + c) / b, kPrecision));
  if (a != 0)
    for (double v : {w.ymin, w.ymax}) add(mpf_class(-(b * v + c) / a, kPrecision), mpf_class(v, kPrecision));
  if (hits.size() < 2) return std::nullopt;
  std::sort(hits.begin(), hits.end());
  return std::array<mpf_class, 4>{hits.front()[0], hits.front()[1], hits.back()[0], hits.back()[1]};
}

}  // namespace detail

/// True if no line of cfg lies at infinity of the chart and no point of
/// multiplicity >= 3 does either.
inline bool shows_everything(const Configuration<FieldElement>& cfg, const Chart& ch) {
  if (cfg.lines.empty()) return true;
  const Field& k = cfg.lines[0][0].field();
  std::array<FieldElement, 3> f{from_rational(k, ch.form[0]), from_rational(k, ch.form[1]), from_rational(k, ch.form[2])};
  for (const auto& l : cfg.lines)
    if (boroczky::detail::all_zero(boroczky::detail::cross(l.coords(), f))) return false;
  for (const auto& rec : cfg.points)
    if (rec.multiplicity() >= 3 && boroczky::detail::dot(rec.point.coords(), f).is_zero()) return false;
  return true;
}

/// z = 1 if it shows every line and triple point, else the first of y = 1,
/// x = 1 and the forms with integer entries of growing size that does.
inline Chart choose_chart(const Configuration<FieldElement>& cfg) {
  for (const auto& ch : {Chart::z(), Chart::y(), Chart::x()})
    if (shows_everything(cfg, ch)) return ch;
  for (int h = 1; h <= 16; ++h)
    for (int i = h; i >= -h; --i)
      for (int j = h; j >= -h; --j)
        for (int k = h; k >= -h; --k) {
          if (std::max({std::abs(i), std::abs(j), std::abs(k)}) != h) continue;
          Chart ch = Chart::custom({Rational(i), Rational(j), Rational(k)});
          if (shows_everything(cfg, ch)) return ch;
        }
  return Chart::z();
}

/// Lays out the configuration; all decimals come from exact coordinates.
inline Scene layout(const Configuration<FieldElement>& cfg, const RenderOptions& opt) {
  const Chart ch = opt.chart ? *opt.chart : choose_chart(cfg);
  if (ch.form[0] == 0 && ch.form[1] == 0 && ch.form[2] == 0) throw Error(ErrorCode::ChartDegenerate, "chart form is zero");
  Rational det = boroczky::detail::det3(ch.m1, ch.m2, ch.form);
  if (det == 0) throw Error(ErrorCode::ChartDegenerate, "chart coordinates are dependent");

  Decimalizer dec;
  Scene scene;
  scene.chart = ch.name;

  // Chart coordinates of points.
  std::vector<std::optional<std::array<mpf_class, 2>>> pos(cfg.points.size());
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    const auto& rec = cfg.points[i];
    if (rec.multiplicity() < 3) continue;
    std::array<mpf_class, 3> p{dec(rec.point[0]), dec(rec.point[1]), dec(rec.point[2])};
    auto label = opt.point_labels.count(i) ? opt.point_labels.at(i) : "p" + std::to_string(i);
    FieldElement w = rec.point[0] * from_rational(rec.point[0].field(), ch.form[0]) +
                     rec.point[1] * from_rational(rec.point[0].field(), ch.form[1]) +
                     rec.point[2] * from_rational(rec.point[0].field(), ch.form[2]);
    if (w.is_zero()) {
      scene.legend.push_back("point at infinity: " + label + " " + rec.point.to_string());
      continue;
    }
    mpf_class wd = detail::dot(ch.form, p);
    pos[i] = std::array<mpf_class, 2>{mpf_class(detail::dot(ch.m1, p) / wd, kPrecision),
                                      mpf_class(detail::dot(ch.m2, p) / wd, kPrecision)};
  }

  // Window.
  if (opt.window) {
    opt.window->validate();
    scene.window = *opt.window;
  } else {
    bool any = false;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const auto& p : pos) {
      if (!p) continue;
      double x = (*p)[0].get_d(), y = (*p)[1].get_d();
      if (!any) xmin = xmax = x, ymin = ymax = y;
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
      any = true;
    }
    double ex = std::max(xmax - xmin, ymax - ymin);
    if (ex <= 0) ex = 2;
    double dx = std::max(xmax - xmin, 0.2 * ex), dy = std::max(ymax - ymin, 0.2 * ex);
    double cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
    scene.window = {cx - dx * (0.5 + opt.margin), cx + dx * (0.5 + opt.margin), cy - dy * (0.5 + opt.margin),
                    cy + dy * (0.5 + opt.margin)};
  }

  // Lines: l(p) = l M^{-1} (u, v, w) with M the rows m1, m2, form.
  const std::array<std::array<Rational, 3>, 3> m{ch.m1, ch.m2, ch.form};
  std::array<std::array<Rational, 3>, 3> inv;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      // Adjugate entry (i, j) is the cofactor of m[j][i].
      std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / det;
    }
  std::size_t visible = 0;
  for (std::size_t li = 0; li < cfg.lines.size(); ++li) {
    const auto& l = cfg.lines[li];
    const Field& k = l[0].field();
    std::array<FieldElement, 3> e;
    for (std::size_t j = 0; j < 3; ++j)
      e[j] = l[0] * from_rational(k, inv[0][j]) + l[1] * from_rational(k, inv[1][j]) + l[2] * from_rational(k, inv[2][j]);
    std::string name = detail::line_name(cfg, li);
    if (e[0].is_zero() && e[1].is_zero()) {
      scene.legend.push_back("line at infinity: " + name + " " + l.to_string());
      continue;
    }
    ++visible;
    std::array<mpf_class, 3> ed{dec(e[0]), dec(e[1]), dec(e[2])};
    auto seg = detail::clip(ed, scene.window);
    if (!seg) {
      scene.legend.push_back("outside window: " + name + " " + l.to_string());
      continue;
    }
    scene.segments.push_back({li, name, {ed[0].get_d(), ed[1].get_d(), ed[2].get_d()}, (*seg)[0].get_d(),
                              (*seg)[1].get_d(), (*seg)[2].get_d(), (*seg)[3].get_d()});
  }
  if (visible == 0) throw Error(ErrorCode::ChartDegenerate, "every line lies at infinity of the chart");

  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    if (!pos[i]) continue;
    auto label = opt.point_labels.count(i) ? opt.point_labels.at(i) : "p" + std::to_string(i);
    scene.markers.push_back(
        {i, label, cfg.points[i].multiplicity(), cfg.points[i].lines, (*pos[i])[0].get_d(), (*pos[i])[1].get_d()});
  }
  scene.approximations = dec.notes();
  return scene;
}

// ---------------------------------------------------------------------------
// Emission

namespace detail {

inline std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", kEmitDecimals, x);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos) s = std::string(buf + (buf[0] == '-' ? 1 : 0));
  return s;
}

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string escape_tex(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '_' || ch == '#' || ch == '%' || ch == '&' || ch == '$') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace detail

/// SVG 1.1; the chart v axis points up.
inline std::string to_svg(const Scene& s) {
  const Window& w = s.window;
  double width = w.xmax - w.xmin, height = w.ymax - w.ymin;
  double unit = std::max(width, height) / 100;
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\""
    << detail::num(600 * height / width) << "\" viewBox=\"" << detail::num(w.xmin) << " " << detail::num(-w.ymax) << " "
    << detail::num(width) << " " << detail::num(height + 6 * unit * (1 + s.legend.size() + s.approximations.size()))
    << "\">\n";
  o << "<!-- chart " << s.chart << " -->\n";
  for (const auto& a : s.approximations) o << "<!-- " << detail::escape_xml(a) << " -->\n";
  o << "<g stroke=\"black\" stroke-width=\"" << detail::num(unit / 4) << "\" fill=\"none\">\n";
  for (const auto& g : s.segments)
    o << "<line id=\"" << detail::escape_xml(g.label) << "\" x1=\"" << detail::num(g.x1) << "\" y1=\"" << detail::num(-g.y1)
      << "\" x2=\"" << detail::num(g.x2) << "\" y2=\"" << detail::num(-g.y2) << "\"/>\n";
  o << "</g>\n<g fill=\"black\" font-family=\"sans-serif\" font-size=\"" << detail::num(3 * unit) << "\">\n";
  for (const auto& m : s.markers) {
    o << "<circle cx=\"" << detail::num(m.x) << "\" cy=\"" << detail::num(-m.y) << "\" r=\"" << detail::num(unit)
      << "\"/>\n";
    o << "<text x=\"" << detail::num(m.x + unit) << "\" y=\"" << detail::num(-m.y - unit) << "\">"
      << detail::escape_xml(m.label) << "</text>\n";
  }
  double y = -w.ymin;
  for (const auto& text : s.legend) {
    y += 6 * unit;
    o << "<text class=\"legend\" x=\"" << detail::num(w.xmin + unit) << "\" y=\"" << detail::num(y) << "\">"
      << detail::escape_xml(text) << "</text>\n";
  }
  for (const auto& text : s.approximations) {
    y += 6 * unit;
    o << "<text class=\"legend\" x=\"" << detail::num(w.xmin + unit) << "\" y=\"" << detail::num(y) << "\">"
      << detail::escape_xml(text) << "</text>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

/// A tikzpicture environment with clipped segments, filled markers and
/// labels; legend entries become nodes below the window.
inline std::string to_tikz(const Scene& s) {
  const Window& w = s.window;
  double scale = 10 / std::max(w.xmax - w.xmin, w.ymax - w.ymin);
  std::ostringstream o;
  o << "% chart " << s.chart << "\n";
  for (const auto& a : s.approximations) o << "% " << a << "\n";
  o << "\\begin{tikzpicture}[scale=" << detail::num(scale) << "]\n";
  for (const auto& g : s.segments)
    o << "\\draw (" << detail::num(g.x1) << "," << detail::num(g.y1) << ") -- (" << detail::num(g.x2) << ","
      << detail::num(g.y2) << "); % " << g.label << "\n";
  for (const auto& m : s.markers)
    o << "\\fill (" << detail::num(m.x) << "," << detail::num(m.y) << ") circle (2pt) node[above right] {$"
      << detail::escape_tex(m.label) << "$};\n";
  double y = w.ymin;
  for (const auto& text : s.legend) {
    y -= 0.6 / scale;
    o << "\\node[right] at (" << detail::num(w.xmin) << "," << detail::num(y) << ") {\\small "
      << detail::escape_tex(text) << "};\n";
  }
  o << "\\end{tikzpicture}\n";
  return o.str();
}

inline std::string render(const Configuration<FieldElement>& cfg, const RenderOptions& opt, Format format) {
  Scene s = layout(cfg, opt);
  return format == Format::Svg ? to_svg(s) : to_tikz(s);
}

}  // namespace boroczky::render
