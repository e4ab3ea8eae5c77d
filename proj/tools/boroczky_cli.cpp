// Command-line front end; see src/commands.hpp for the exit codes.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "commands.hpp"

using namespace boroczky;
using namespace boroczky::cli;

int main(int argc, char** argv) {
  CLI::App app{"Line arrangements with many triple points: construction, degeneration, containment"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Expand all help");
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output")->configurable();
  app.add_option("--seed", g.seed, "Seed for randomized sampling and prime choice");
  app.add_option("--threads", g.threads, "Worker threads (default: BOROCZKY_THREADS or hardware)");
  app.add_option("--out", g.out, "Write output to this file");

  std::string field = "QQ", params;
  int code = kOk;

  auto* b12c = app.add_subcommand("b12", "The 12-line arrangement")->require_subcommand(1);
  auto* b12build = b12c->add_subcommand("build", "Build and census at given parameters");
  b12build->add_option("--params", params, "Ratios p/q,p/q,p/q or (p:q),(p:q),(p:q)")->required();
  b12build->add_option("--field", field, "Field descriptor, e.g. QQ or QQ[sqrt(2)]");
  b12build->callback([&] { code = b12_build(g, field, params); });
  auto* b12cls = b12c->add_subcommand("classify", "Degeneration class of the parameters");
  b12cls->add_option("--params", params, "Ratios p/q,p/q,p/q or (p:q),(p:q),(p:q)")->required();
  b12cls->add_option("--field", field, "Field descriptor");
  b12cls->callback([&] { code = b12_classify(g, field, params); });
  b12c->add_subcommand("verify-identities", "Symbolic identities over Q(a1, ..., c2)")->callback([&] {
    code = b12_identities(g);
  });
  auto* b12scan = b12c->add_subcommand("scan", "Classify and census every point of a grid");
  std::string all, ga, gb, gc;
  unsigned random = 0;
  b12scan->add_option("--values", all, "Ratio list used for every slot");
  b12scan->add_option("--a", ga, "Ratio list for (a1:a2)");
  b12scan->add_option("--b", gb, "Ratio list for (b1:b2)");
  b12scan->add_option("--c", gc, "Ratio list for (c1:c2)");
  b12scan->add_option("--random", random, "Scan this many random triples instead (see --seed)");
  b12scan->add_option("--field", field, "Field descriptor");
  b12scan->callback([&] { code = b12_scan(g, field, all, ga, gb, gc, random); });

  auto* b15c = app.add_subcommand("b15", "The 15-line arrangement")->require_subcommand(1);
  b15c->add_subcommand("conditions", "Generator of the condition ideal in Q[a, b]")->callback([&] {
    code = b15_conditions(g);
  });
  std::string a = "2";
  unsigned root = 0;
  auto* b15build = b15c->add_subcommand("build", "Build at a rational a (b solved from f) or a = generic");
  b15build->add_option("--a", a, "Rational a, or \"generic\"");
  b15build->add_option("--root", root, "Which solution b (0 or 1)");
  b15build->callback([&] { code = b15_build(g, a, root); });
  auto* b15att = b15c->add_subcommand("attempt-rational", "Whether a rational a admits a rational b");
  b15att->add_option("--a", a, "Rational a")->required();
  b15att->callback([&] { code = b15_attempt(g, a); });

  long bound = 100;
  auto* curve = app.add_subcommand("curve", "The elliptic curve of the B15 parameters")->require_subcommand(1);
  auto* cpts = curve->add_subcommand("points", "Rational points by search and by Nagell-Lutz");
  cpts->add_option("--bound", bound, "Height bound of the search");
  cpts->callback([&] { code = curve_points(g, bound); });
  auto* ccert = curve->add_subcommand("certify", "Certificate that no rational B15 exists");
  ccert->add_option("--bound", bound, "Height bound of the search");
  ccert->callback([&] { code = curve_certify(g, bound); });

  Source src;
  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("--in", src.in, "Configuration JSON file");
    cmd->add_option("--b12", src.b12, "Build the 12-line arrangement at these rational parameters");
    cmd->add_option("--b15", src.b15, "Build the 15-line arrangement at this rational a");
    cmd->add_option("--root", src.root, "Solution index for --b15");
  };

  auto* cont = app.add_subcommand("containment", "Symbolic power containment")->require_subcommand(1);
  auto* check = cont->add_subcommand("check", "Decide I^(m) in I^r for the points of multiplicity >= k");
  add_source(check);
  check->add_option("--points", src.points, "Explicit rational points \"(x:y:z);(x:y:z);...\"");
  containment::ContainmentOptions copt;
  std::size_t min_mult = 3;
  bool line_product = false;
  check->add_option("--min-mult", min_mult, "Use the points on at least this many lines");
  check->add_option("--m", copt.m, "Symbolic power");
  check->add_option("--r", copt.r, "Ordinary power");
  check->add_option("--max-degree", copt.max_degree, "Degree bound for the symbolic power (default automatic)");
  check->add_option("--mod-primes", copt.modular_primes, "Number of random primes for the modular pass");
  check->add_flag("--exact,!--no-exact", copt.exact, "Run the exact computation over Q (default on)");
  check->add_option("--budget", copt.exact_time_budget_seconds, "Wall-clock budget of the exact run in seconds");
  check->add_flag("--line-product", line_product, "Test the product of all lines first");
  check->callback([&] { code = containment_check(g, src, min_mult, copt, line_product); });

  std::string chart = "auto", window, format = "svg";
  auto* rend = app.add_subcommand("render", "SVG or TikZ drawing of a configuration");
  add_source(rend);
  rend->add_option("--chart", chart, "auto, z, y, x or a form a,b,c");
  rend->add_option("--window", window, "xmin,xmax,ymin,ymax (default: fit the triple points)");
  rend->add_option("--format", format, "svg or tikz")->check(CLI::IsMember({"svg", "tikz"}));
  rend->callback([&] { code = render_cmd(g, src, chart, window, format); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return code;
}
