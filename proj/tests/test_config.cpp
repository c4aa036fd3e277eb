#include <gtest/gtest.h>

#include "vmpt/config.hpp"

using namespace vmpt;

TEST(Config, DefaultsAreValid) { EXPECT_NO_THROW(validate_config(GeneratorConfig{})); }

TEST(Config, JsonRoundTrip) {
  GeneratorConfig c;
  c.environment = env_from_coords(3, 2);
  c.seed = 18446744073709551615ULL;
  c.horizon = 17;
  c.vertical_policy.vary_net = true;
  c.utilization_policy.net_step = {-7, 9};
  const GeneratorConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(back, c);
  EXPECT_EQ(config_digest(back), config_digest(c));
}

TEST(Config, OverlayKeepsBaseFields) {
  GeneratorConfig base;
  base.horizon = 33;
  const auto c = parse_config(R"({"environment":"1,1","sizing":{"cpu":{"min":2,"max":3}}})", base);
  EXPECT_EQ(c.horizon, 33);
  EXPECT_EQ(c.environment, env_from_coords(1, 1));
  EXPECT_EQ(c.sizing.cpu.min, 2);
  EXPECT_EQ(c.sizing.ram.max, base.sizing.ram.max);
  EXPECT_EQ(parse_config(R"({"environment":[2,3]})").environment, env_from_coords(2, 3));
}

TEST(Config, RejectsBadDocuments) {
  EXPECT_THROW(parse_config("{"), ConfigError);
  EXPECT_THROW(parse_config(R"({"horizon":"ten"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"horizn":10})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"sizing":{"cpu":{"min":1}}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"environment":"5,0"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"seed":-1})"), ConfigError);
}

TEST(Config, ValidationCatchesBadKnobs) {
  auto bad = [](auto mutate) {
    GeneratorConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(validate_config(bad([](auto& c) { c.horizon = 0; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](auto& c) { c.num_datacenters = 0; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](auto& c) { c.sizing.cpu = {5, 1}; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](auto& c) { c.vertical_policy.step_probability = 1.5; })),
               ConfigError);
  EXPECT_THROW(validate_config(bad([](auto& c) { c.horizontal_policy.min_vms = 0; })),
               ConfigError);
  EXPECT_THROW(validate_config(bad([](auto& c) { c.sizing.sla = {1, 9}; })), ConfigError);
}

TEST(Config, DigestTracksEveryField) {
  GeneratorConfig a, b;
  b.utilization_policy.allow_exceed_request = true;
  EXPECT_NE(config_digest(a), config_digest(b));
  EXPECT_EQ(config_digest(a).size(), 16u);
}
