#pragma once

// Subcommand implementations behind the command-line front end. Each returns
// the process exit code: 0 success, 1 a valid but negative outcome
// (degenerate class, NotContained, no rational B15). Failures throw.

#include <cstdint>
#include <string>

#include "boroczky/boroczky.hpp"

namespace boroczky::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kError = 2;

struct Globals {
  bool json = false;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
};

/// Where containment and render take their configuration from: a JSON file,
/// B12 parameters, a B15 value of a, or (containment only) explicit points.
struct Source {
  std::string in, b12, b15, points;
  unsigned root = 0;
};

int b12_build(const Globals& g, const std::string& field, const std::string& params);
int b12_classify(const Globals& g, const std::string& field, const std::string& params);
int b12_identities(const Globals& g);
int b12_scan(const Globals& g, const std::string& field, const std::string& all, const std::string& a,
             const std::string& b, const std::string& c, unsigned random);

int b15_conditions(const Globals& g);
int b15_build(const Globals& g, const std::string& a, unsigned root);
int b15_attempt(const Globals& g, const std::string& a);

int curve_points(const Globals& g, long bound);
int curve_certify(const Globals& g, long bound);

int containment_check(const Globals& g, const Source& src, std::size_t min_mult, containment::ContainmentOptions opt,
                      bool line_product);
int render_cmd(const Globals& g, const Source& src, const std::string& chart, const std::string& window,
               const std::string& format);

}  // namespace boroczky::cli
