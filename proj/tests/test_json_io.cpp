#include <gtest/gtest.h>

#include "boroczky/boroczky.hpp"
#include "expect_error.hpp"

using namespace boroczky;
using json_io::Json;

namespace {

void expect_round_trip(const Configuration<FieldElement>& cfg, const std::map<std::size_t, std::string>& labels) {
  Json j = json_io::configuration(cfg, labels);
  auto parsed = json_io::parse_configuration(Json::parse(j.dump()));
  EXPECT_EQ(parsed.configuration.lines, cfg.lines);
  EXPECT_EQ(parsed.configuration.census, cfg.census);
  ASSERT_EQ(parsed.configuration.points.size(), cfg.points.size());
  for (const auto& [idx, label] : labels) {
    auto found = parsed.configuration.find_point(cfg.points[idx].point);
    ASSERT_TRUE(found.has_value()) << label;
    EXPECT_EQ(parsed.labels.at(*found), label);
  }
  EXPECT_EQ(json_io::configuration(parsed.configuration, parsed.labels).dump(), j.dump());
}

}  // namespace

TEST(JsonIo, TwelveLineRoundTrip) {
  auto res = b12::build(b12::parse_parameters(rationals(), "1/1,1/2,1/3"));
  expect_round_trip(res.configuration, json_io::invert_labels(res.point_labels, b12::point_names()));
  Json j = json_io::b12_result(res);
  EXPECT_EQ(j.at("census").dump(), R"({"3":19,"2":9})");
  EXPECT_EQ(j.at("class"), "Generic");
  EXPECT_EQ(j.at("labels").at("points").size(), 19u);
}

TEST(JsonIo, FifteenLineRoundTripOverSqrtFifteen) {
  auto res = b15::build(b15::solve_b(Rational(2)).params.front());
  std::vector<std::string> order;
  for (std::size_t i = 1; i <= 31; ++i) order.push_back(b15::point_name(i));
  expect_round_trip(res.configuration, json_io::invert_labels(res.point_labels, order));
  Json j = json_io::b15_result(res);
  EXPECT_EQ(j.at("field"), "QQ[sqrt(15)]");
  EXPECT_EQ(j.at("conditions").size(), 8u);
  EXPECT_EQ(j.at("facts").size(), 3u);
  EXPECT_EQ(j.at("census").dump(), R"({"3":31,"2":12})");
}

TEST(JsonIo, CoincidentLabelsAreJoined) {
  auto res = b12::build(b12::parse_parameters(rationals(), "(2:1),(1:1),(-1:1)"));
  auto labels = json_io::invert_labels(res.point_labels, b12::point_names());
  EXPECT_EQ(labels.at(res.point_labels.at("E")), "E=Q=R=S");
}

TEST(JsonIo, CertificateSchema) {
  Json j = json_io::certificate(ellcurve::certify_no_rational_b15(20));
  EXPECT_EQ(j.at("curve").dump(), "[1,1,1,0,0]");
  EXPECT_EQ(j.at("points").size(), 4u);
  EXPECT_EQ(j.at("pullbacks").size(), 4u);
  EXPECT_EQ(j.at("verdict"), "NoRationalB15");
}

TEST(JsonIo, ContainmentVerdictSchema) {
  containment::PointSet ps({{Rational(1), Rational(0), Rational(0)},
                            {Rational(0), Rational(1), Rational(0)},
                            {Rational(0), Rational(0), Rational(1)}});
  containment::ContainmentOptions opt;
  opt.modular_primes = 3;
  Json j = json_io::containment_verdict(containment::check_containment(ps, opt));
  EXPECT_EQ(j.at("status"), "Contained");
  EXPECT_TRUE(j.at("witness").is_null());
  EXPECT_TRUE(j.contains("degrees"));
  EXPECT_EQ(j.at("primes").size(), 3u);
}

TEST(JsonIo, MalformedInputThrows) {
  EXPECT_ERROR_CODE(json_io::parse_configuration(Json::parse(R"({"lines": []})")), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(json_io::parse_configuration(Json::parse(R"({"field": "QQ", "lines": [["1", "0"]]})")),
                    ErrorCode::ParseError);
  EXPECT_ERROR_CODE(json_io::parse_configuration(Json::parse(R"({"field": "QQ", "lines": [["1", "x", "0"]]})")),
                    ErrorCode::ParseError);
}
