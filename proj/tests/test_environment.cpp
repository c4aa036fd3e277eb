#include <gtest/gtest.h>

#include <set>

#include "vmpt/environment.hpp"

using namespace vmpt;

TEST(Environment, SixteenDistinctCells) {
  const auto all = enumerate_environments();
  std::set<std::string> names;
  for (auto env : all) names.insert(env.to_string());
  EXPECT_EQ(names.size(), 16u);
  EXPECT_EQ(all.front().to_string(), "(0,0)");
  EXPECT_EQ(all.back().to_string(), "(3,3)");
}

TEST(Environment, RejectsOutOfRangeCoordinates) {
  EXPECT_THROW(env_from_coords(4, 0), ValidationError);
  EXPECT_THROW(env_from_coords(0, -1), ValidationError);
  EXPECT_THROW(env_from_coords(0, 4), ValidationError);
}

TEST(Environment, CapabilityDecode) {
  const auto c = capabilities(env_from_coords(1, 2));
  EXPECT_TRUE(c.horizontal);
  EXPECT_FALSE(c.vertical);
  EXPECT_FALSE(c.server_overbooking);
  EXPECT_TRUE(c.network_overbooking);
  const auto all = capabilities(env_from_coords(3, 3));
  EXPECT_TRUE(all.horizontal && all.vertical && all.server_overbooking && all.network_overbooking);
  for (auto env : enumerate_environments()) {
    EXPECT_EQ(env_from_capabilities(capabilities(env)), env);
  }
}

TEST(Environment, Labels) {
  EXPECT_EQ(describe(env_from_coords(0, 0)), "(0,0) Not Considered / Not Considered");
  EXPECT_EQ(describe(env_from_coords(3, 1)), "(3,1) Horizontal and Vertical / Server");
  EXPECT_EQ(elasticity_label(env_from_coords(2, 0)), "Vertical");
  EXPECT_EQ(overbooking_label(env_from_coords(0, 3)), "Server and Network");
}

TEST(Environment, ParsesCoordinateText) {
  EXPECT_EQ(parse_environment("2,1"), env_from_coords(2, 1));
  EXPECT_EQ(parse_environment("(3,0)"), env_from_coords(3, 0));
  EXPECT_EQ(parse_environment(" ( 1 , 2 ) "), env_from_coords(1, 2));
  for (const char* bad : {"", "1", "1,", ",1", "4,0", "a,b", "1,2,3", "(1,2", "12,0"}) {
    EXPECT_THROW(parse_environment(bad), ValidationError) << bad;
  }
}
