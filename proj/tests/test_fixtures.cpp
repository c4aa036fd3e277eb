#include <gtest/gtest.h>

#include "vmpt/fixtures.hpp"

using namespace vmpt;

namespace {

const VmSample& at(const Trace& t, Tick tick, VmId id) {
  for (const auto& s : t.samples) {
    if (s.t == tick && s.vm == id) return s;
  }
  throw std::runtime_error("no sample");
}

std::vector<int> column(const Trace& t, VmId id, int which) {
  std::vector<int> out;
  for (const auto& s : t.samples) {
    if (!(s.vm == id)) continue;
    const Decimal values[] = {s.spec.cpu, s.spec.ram, s.spec.net, s.util.cpu, s.util.ram, s.util.net};
    out.push_back(static_cast<int>(values[which].micros() / Decimal::kScale));
  }
  return out;
}

enum Col { Vcpu, Vram, Vnet, Ucpu, Uram, Unet };
std::vector<int> col(const Trace& t, VmId id, Col c) { return column(t, id, c); }
using V = std::vector<int>;

}  // namespace

TEST(Fixtures, HeaderShape) {
  for (FixtureId id : kAllFixtures) {
    const Trace t = example_trace(id);
    EXPECT_EQ(t.header.environment, fixture_environment(id));
    EXPECT_EQ(t.header.horizon, 6);
    EXPECT_EQ(t.header.num_datacenters, 2u);
    EXPECT_EQ(t.header.sla_levels, 1);
    for (const auto& d : t.descriptors) {
      EXPECT_EQ(d.revenue, Decimal(0));
      EXPECT_EQ(d.sla, 1);
    }
  }
}

TEST(Fixtures, Example1Cells) {
  const Trace t = example_trace(FixtureId::Example1_env01);
  const auto& s = at(t, 3, {1, 1, 1});
  EXPECT_EQ(s.util.cpu, Decimal(12));
  EXPECT_EQ(s.util.ram, Decimal(26));
  EXPECT_EQ(s.util.net, Decimal(150));
  EXPECT_EQ(s.spec.cpu, Decimal(8));
  EXPECT_EQ(s.spec.ram, Decimal(16));
  EXPECT_EQ(col(t, {1, 1, 1}, Ucpu), (V{8, 9, 10, 12}));
  EXPECT_EQ(col(t, {1, 1, 2}, Uram), (V{12, 13, 16, 20}));
  EXPECT_EQ(col(t, {1, 2, 1}, Ucpu), (V{5, 4, 4, 5}));
  EXPECT_EQ(col(t, {1, 2, 2}, Uram), (V{18, 20, 22, 25}));
  EXPECT_EQ(col(t, {1, 2, 2}, Vnet), (V{170, 170, 170, 170}));
}

TEST(Fixtures, Example2Cells) {
  const Trace t = example_trace(FixtureId::Example2_env02);
  EXPECT_EQ(at(t, 3, {1, 2, 2}).util.net, Decimal(800));
  EXPECT_EQ(col(t, {1, 1, 2}, Unet), (V{50, 60, 40, 0}));
  EXPECT_EQ(col(t, {1, 2, 1}, Unet), (V{50, 100, 150, 170}));
  EXPECT_EQ(col(t, {1, 1, 1}, Ucpu), col(t, {1, 1, 1}, Vcpu));
}

TEST(Fixtures, Example3Cells) {
  const Trace t = example_trace(FixtureId::Example3_env10);
  int s2 = 0;
  for (const auto& d : t.descriptors) {
    if (d.id.service != 2) continue;
    ++s2;
    EXPECT_EQ(d.t_init, 2);
    EXPECT_EQ(d.t_end, 5);
  }
  EXPECT_EQ(s2, 2);
  EXPECT_EQ(col(t, {2, 1, 3}, Vcpu), (V{2, 2, 2}));
  EXPECT_EQ(col(t, {2, 1, 3}, Vram), (V{10, 10, 10}));
  EXPECT_EQ(col(t, {2, 2, 3}, Vcpu), (V{8, 8, 8}));
  EXPECT_EQ(col(t, {2, 2, 3}, Vram), (V{20, 20, 20}));
  EXPECT_EQ(col(t, {2, 1, 3}, Vnet), (V{60, 60, 60}));
  EXPECT_EQ(col(t, {2, 2, 3}, Vnet), (V{120, 120, 120}));
}

TEST(Fixtures, Example4Cells) {
  const Trace t = example_trace(FixtureId::Example4_env20);
  const auto& s = at(t, 1, {1, 1, 1});
  EXPECT_EQ(s.spec.cpu, Decimal(9));
  EXPECT_EQ(s.spec.ram, Decimal(22));
  EXPECT_EQ(col(t, {1, 1, 1}, Vcpu), (V{8, 9, 9, 11}));
  EXPECT_EQ(col(t, {1, 2, 2}, Vram), (V{18, 10, 10, 12}));
  EXPECT_EQ(col(t, {1, 2, 2}, Ucpu), (V{9, 9, 9, 9}));
}

TEST(Fixtures, ParseIds) {
  EXPECT_EQ(parse_fixture_id("0,1"), FixtureId::Example1_env01);
  EXPECT_EQ(parse_fixture_id("(1,0)"), FixtureId::Example3_env10);
  EXPECT_EQ(parse_fixture_id("Example4_env20"), FixtureId::Example4_env20);
  EXPECT_THROW(parse_fixture_id("3,3"), ValidationError);
  EXPECT_THROW(parse_fixture_id("zz"), ValidationError);
}
