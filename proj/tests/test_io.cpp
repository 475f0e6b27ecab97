#include <gtest/gtest.h>

#include "cornercut/io.hpp"
#include "cornercut/svg.hpp"
#include "support/random_instances.hpp"

using namespace cornercut;
using cornercut::testing::Rng;

namespace {

const char* kCross =
    R"({"f":["1/2","1/2"],"rays":[["1","0"],["0","1"],["-1","0"],["0","-1"]]})";

std::string error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, ParsesCrossInstance) {
  CornerInstance inst = parse_instance(kCross);
  EXPECT_EQ(inst.f, Vec2(Rational(1, 2), Rational(1, 2)));
  ASSERT_EQ(inst.k(), 4u);
  EXPECT_EQ(inst.rays[2], Vec2(-1, 0));
}

TEST(Io, InstanceErrors) {
  EXPECT_EQ(error_of(R"({"f":["1","1"],"rays":[["1","0"]]})"), "f must not be a lattice point");
  EXPECT_EQ(error_of(R"({"f":["1/2","1/2"],"rays":[["0","0"]]})"), "ray 1 is zero");
  EXPECT_THROW(parse_instance(R"({"f":["1","1"],"rays":[["1","0"]]})"), PreconditionError);
  std::string bad = error_of(R"({"f":["1/2","1/2"],"rays":[["1","0"],["2/-x","1"]]})");
  EXPECT_NE(bad.find("instance.rays[1][0]"), std::string::npos) << bad;
  EXPECT_NE(bad.find("position 3"), std::string::npos) << bad;
  EXPECT_THROW(parse_instance(R"({"f":["1/2","1/2"],"rays":[["1","0"],["2/-x","1"]]})"),
               ParseError);
  EXPECT_NE(error_of(R"({"f":["1/2"],"rays":[]})").find("instance.f"), std::string::npos);
  EXPECT_NE(error_of(R"({"rays":[]})").find("missing field \"f\""), std::string::npos);
  EXPECT_NE(error_of(R"({"f":["1/2","1/2"],"rays":[)").find("invalid JSON at byte"),
            std::string::npos);
}

TEST(Io, InstanceRoundTrip) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    auto inst = cornercut::testing::random_instance(rng, rng.uniform(3, 7), 9);
    CornerInstance back = parse_instance(to_json(inst).dump());
    EXPECT_EQ(back.f, inst.f);
    EXPECT_EQ(back.rays, inst.rays);
  }
  InstanceFile withlabels =
      parse_instance_file(R"({"f":["1/3","0"],"rays":[["1","0"],["-1","0"]],"labels":["a","b"]})");
  EXPECT_EQ(withlabels.labels, (std::vector<std::string>{"a", "b"}));
  auto again = parse_instance_file(to_json(withlabels.instance, withlabels.labels).dump());
  EXPECT_EQ(again.labels, withlabels.labels);
}

TEST(Io, GammaAndBodyFiles) {
  QVec g = parse_gamma(R"({"gamma":["2","0","2","0"]})");
  EXPECT_EQ(g, (QVec{Rational(2), Rational(0), Rational(2), Rational(0)}));
  EXPECT_EQ(parse_gamma(gamma_json(g).dump()), g);
  EXPECT_EQ(parse_gamma(R"(["0.25", "3"])"), (QVec{Rational(1, 4), Rational(3)}));
  EXPECT_THROW(parse_gamma(R"({"gamma":["1/0"]})"), ParseError);

  Vec2 f(Rational(1, 2), Rational(1, 2));
  Body split = parse_body(R"({"rows":[["2","0"],["-2","0"]]})", f);
  EXPECT_EQ(classify(split).tag, BodyTag::Split);
  Body diamond =
      parse_body(R"({"vertices":[["-1/2","1/2"],["1/2","-1/2"],["3/2","1/2"],["1/2","3/2"]]})", f);
  EXPECT_EQ(classify(diamond).tag, BodyTag::Quadrilateral);
  Body back = parse_body(to_json(diamond).dump(), std::nullopt);
  EXPECT_EQ(back, diamond);
  EXPECT_THROW(parse_body(R"({"rows":[["1","0"]]})", std::nullopt), UsageError);
  EXPECT_THROW(parse_body(R"({"vertices":[["0","0"],["1","0"],["0","1"]]})", Vec2(5, Rational(1, 2))),
               DomainError);
}

TEST(Io, ApproxFieldsAreMarkedSeparately) {
  QVec g{Rational(1, 3)};
  Json exact = gamma_json(g), approx = gamma_json(g, JsonStyle{true});
  EXPECT_FALSE(exact.contains("gamma_approx"));
  EXPECT_EQ(approx["gamma"][0], "1/3");
  EXPECT_NEAR(approx["gamma_approx"][0].get<double>(), 1.0 / 3, 1e-15);
}

TEST(Io, FacetListJson) {
  CornerInstance inst = parse_instance(kCross);
  Json j = to_json(enumerate_facets(inst));
  ASSERT_EQ(j["facets"].size(), 2u);
  for (const auto& fc : j["facets"]) {
    EXPECT_TRUE(fc.contains("gamma"));
    EXPECT_TRUE(fc.contains("family"));
    EXPECT_TRUE(fc.contains("body_rows"));
    EXPECT_EQ(fc["certificate_rank"], 4);
    EXPECT_TRUE(fc["tight_rows"].is_array());
  }
}

TEST(Svg, RendersWellFormedDocument) {
  CornerInstance inst = parse_instance(kCross);
  Body diamond = parse_body(
      R"({"vertices":[["-1/2","1/2"],["1/2","-1/2"],["3/2","1/2"],["1/2","3/2"]]})", inst.f);
  std::string svg = render_svg(inst, diamond);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(svg.find("<polygon"), std::string::npos);
  EXPECT_NE(svg.find(">r4</text>"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::string bare = render_svg(inst, std::nullopt);
  EXPECT_EQ(bare.find("<polygon"), std::string::npos);
  SvgOptions o;
  o.window = Window{2, 4, 2, 4};
  EXPECT_THROW(render_svg(inst, diamond, o), UsageError);
}
