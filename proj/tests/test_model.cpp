#include <gtest/gtest.h>

#include "vmpt/fixtures.hpp"
#include "vmpt/model.hpp"

using namespace vmpt;

TEST(Model, DatacenterPopulation) {
  const Trace ex1 = example_trace(FixtureId::Example1_env01);
  using P = PopulationEntry;
  EXPECT_EQ(dc_population(ex1, 1, 0), (std::vector<P>{{1, 1}, {1, 2}}));
  const Trace ex3 = example_trace(FixtureId::Example3_env10);
  EXPECT_EQ(dc_population(ex3, 1, 2), (std::vector<P>{{1, 1}, {1, 2}, {2, 3}}));
  EXPECT_TRUE(dc_population(ex3, 7, 0).empty());
  EXPECT_THROW(dc_population(ex3, 1, 6), std::out_of_range);
  EXPECT_THROW(dc_population(ex3, 1, -1), std::out_of_range);

  Trace empty;
  EXPECT_TRUE(dc_population(empty, 1, 0).empty());
}

TEST(Model, ServiceVmCount) {
  const Trace ex3 = example_trace(FixtureId::Example3_env10);
  EXPECT_EQ(service_vm_count(ex3, 1, 0), 4u);
  EXPECT_EQ(service_vm_count(ex3, 2, 0), 0u);
  EXPECT_EQ(service_vm_count(ex3, 2, 3), 2u);
  EXPECT_EQ(service_vm_count(ex3, 9, 3), 0u);
}

TEST(Model, FullUtilization) {
  const ResourceSpec spec{Decimal(8), Decimal(16), Decimal(150)};
  const UtilizationSample u = full_utilization(spec);
  EXPECT_EQ(u.cpu, Decimal(8));
  EXPECT_EQ(u.ram, Decimal(16));
  EXPECT_EQ(u.net, Decimal(150));
  const UtilizationSample z = full_utilization(ResourceSpec{});
  EXPECT_EQ(z.cpu, Decimal(0));
}

TEST(Model, NegativeAmountsRejected) {
  ResourceSpec spec{Decimal(-1), Decimal(1), Decimal(1)};
  EXPECT_THROW(spec.check(), ValidationError);
  UtilizationSample u{Decimal(0), Decimal(0), Decimal(-2)};
  EXPECT_THROW(u.check(), ValidationError);
}

TEST(Model, LifetimeIsHalfOpen) {
  VmDescriptor d{VmId{1, 1, 1}, Decimal(0), 1, 2, 5};
  EXPECT_FALSE(d.alive_at(1));
  EXPECT_TRUE(d.alive_at(2));
  EXPECT_TRUE(d.alive_at(4));
  EXPECT_FALSE(d.alive_at(5));
  EXPECT_EQ(d.lifetime(), 3);
}

TEST(Model, EventKindNames) {
  for (auto k : {EventKind::ServiceArrival, EventKind::ServiceDeparture, EventKind::VmScaleOut,
                 EventKind::VmScaleIn}) {
    EXPECT_EQ(event_kind_from_string(to_string(k)), k);
  }
  EXPECT_FALSE(event_kind_from_string("Teleport").has_value());
}

TEST(Model, CanonicalOrder) {
  Trace t = example_trace(FixtureId::Example3_env10);
  Trace shuffled = t;
  std::reverse(shuffled.samples.begin(), shuffled.samples.end());
  std::reverse(shuffled.events.begin(), shuffled.events.end());
  std::reverse(shuffled.descriptors.begin(), shuffled.descriptors.end());
  EXPECT_EQ(canonicalize(shuffled), t);
  // Same tick: arrival sorts before departure.
  const auto& e = t.events;
  for (std::size_t i = 1; i < e.size(); ++i) {
    EXPECT_LE(event_key(e[i - 1]), event_key(e[i]));
  }
}
