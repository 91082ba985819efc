#include <random>

#include <gtest/gtest.h>

#include "lg2lmf/feature_id.hpp"

using namespace lg2lmf;

TEST(FeatureId, Distribution) {
  auto e = parse_feature_id("N0 =: Nhum");
  ASSERT_TRUE(std::holds_alternative<Distribution>(e.parsed));
  EXPECT_EQ(std::get<Distribution>(e.parsed).slot.index, 0);
  EXPECT_EQ(std::get<Distribution>(e.parsed).shape, "Nhum");
  EXPECT_EQ(e.raw, "N0 =: Nhum");
}

TEST(FeatureId, FrozenClitic) {
  auto e = parse_feature_id("Ppv =: en figé");
  ASSERT_TRUE(std::holds_alternative<CliticSpec>(e.parsed));
  EXPECT_EQ(std::get<CliticSpec>(e.parsed), (CliticSpec{"en", true}));
  auto plain = parse_feature_id("Ppv = se");
  EXPECT_EQ(std::get<CliticSpec>(plain.parsed), (CliticSpec{"se", false}));
}

TEST(FeatureId, Construction) {
  auto e = parse_feature_id("N0 V de N2");
  ASSERT_TRUE(std::holds_alternative<Construction>(e.parsed));
  EXPECT_EQ(std::get<Construction>(e.parsed).pattern, "N0 V de N2");
  EXPECT_TRUE(std::holds_alternative<Construction>(parse_feature_id("Il est Vpp N1 W").parsed));
}

TEST(FeatureId, OpaqueFallback) {
  auto e = parse_feature_id("some unknown label");
  EXPECT_TRUE(e.is_opaque());
  EXPECT_EQ(e.raw, "some unknown label");
  EXPECT_TRUE(parse_feature_id("<E>").is_opaque());
}

TEST(FeatureId, Normalization) {
  EXPECT_EQ(normalize_feature_id("Ppv = se figé"), "Ppv =: se figé");
  EXPECT_EQ(normalize_feature_id("  N0   =:  Nhum "), "N0 =: Nhum");
  EXPECT_EQ(normalize_feature_id("N0 =: Nhum"), "N0 =: Nhum");
}

TEST(FeatureId, RenderRoundTripOverGeneratedIds) {
  std::mt19937 rng(7);
  const std::vector<std::string> shapes{"Nhum", "N-hum", "Qu P", "V1-inf W", "à N", "le"};
  const std::vector<std::string> clitics{"se", "en", "y", "<E>"};
  const std::vector<std::string> patterns{"N0 V", "N0 V N1", "N0 V de N2", "Il V N0 W",
                                          "N1 est Vpp W", "N0 V V0-inf W"};
  auto pick = [&](const auto& v) { return v[rng() % v.size()]; };
  for (int i = 0; i < 500; ++i) {
    std::string raw;
    switch (rng() % 3) {
      case 0:
        raw = "N" + std::to_string(rng() % 4) + (rng() % 2 ? " = " : "  =:   ") + pick(shapes);
        break;
      case 1:
        raw = "Ppv" + std::string(rng() % 2 ? " = " : " =: ") + pick(clitics) +
              (rng() % 2 ? " figé" : "");
        break;
      default:
        raw = " " + pick(patterns) + " ";
    }
    auto e = parse_feature_id(raw);
    ASSERT_FALSE(e.is_opaque()) << raw;
    EXPECT_EQ(render_feature_id(e), normalize_feature_id(raw)) << raw;
  }
}
