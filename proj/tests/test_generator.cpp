#include <gtest/gtest.h>

#include <map>

#include "vmpt/analysis.hpp"
#include "vmpt/generator.hpp"
#include "vmpt/trace_io.hpp"

using namespace vmpt;

namespace {

GeneratorConfig base_config(int e, int o, std::uint64_t seed, Tick horizon = 20) {
  GeneratorConfig c;
  c.environment = env_from_coords(e, o);
  c.seed = seed;
  c.horizon = horizon;
  return c;
}

}  // namespace

TEST(Generator, StaticEnvironmentHasNoDynamics) {
  GeneratorConfig c = base_config(0, 0, 42, 5);
  c.arrival.rate = 0.0;
  const Trace t = generate(c);
  ASSERT_FALSE(t.samples.empty());
  std::map<VmId, ResourceSpec> first;
  for (const auto& s : t.samples) {
    EXPECT_EQ(s.util.cpu, s.spec.cpu);
    EXPECT_EQ(s.util.ram, s.spec.ram);
    EXPECT_EQ(s.util.net, s.spec.net);
    auto [it, fresh] = first.emplace(s.vm, s.spec);
    if (!fresh) {
      EXPECT_EQ(it->second, s.spec);
    }
  }
  std::set<ServiceId> services;
  for (const auto& d : t.descriptors) services.insert(d.id.service);
  EXPECT_EQ(services, std::set<ServiceId>{1});
}

TEST(Generator, HeaderCarriesConfig) {
  const GeneratorConfig c = base_config(2, 1, 9);
  const Trace t = generate(c);
  EXPECT_EQ(t.header.environment, c.environment);
  EXPECT_EQ(t.header.horizon, c.horizon);
  EXPECT_EQ(t.header.num_datacenters, c.num_datacenters);
  EXPECT_EQ(t.header.seed, c.seed);
  EXPECT_EQ(t.header.config_digest, config_digest(c));
  EXPECT_EQ(t.header.sla_levels, c.sizing.sla_levels);
}

TEST(Generator, GuaranteedFullEnvironmentClassifiesBack) {
  GeneratorConfig c = base_config(3, 3, 7);
  c.guarantee_dynamics = true;
  EXPECT_EQ(classify(generate(c)), env_from_coords(3, 3));
}

TEST(Generator, Deterministic) {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    GeneratorConfig c = base_config(3, 3, seed);
    EXPECT_EQ(write_trace_string(generate(c)), write_trace_string(generate(c)));
  }
  EXPECT_NE(write_trace_string(generate(base_config(3, 3, 1))),
            write_trace_string(generate(base_config(3, 3, 2))));
}

TEST(Generator, StrictValidOutput) {
  for (auto env : enumerate_environments()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GeneratorConfig c = base_config(env.elasticity(), env.overbooking(), seed, 30);
      c.guarantee_dynamics = seed % 2 == 0;
      const auto report = validate(generate(c), ValidationMode::Strict);
      EXPECT_TRUE(report.ok()) << env << " seed " << seed << "\n" << report_to_table(report);
    }
  }
}

TEST(Generator, ConfigErrors) {
  GeneratorConfig c = base_config(2, 0, 1, 1);
  c.guarantee_dynamics = true;
  EXPECT_THROW(generate(c), ConfigError);
  c.environment = env_from_coords(0, 3);
  EXPECT_NO_THROW(generate(c));
  c.horizon = 0;
  EXPECT_THROW(generate(c), ConfigError);
  c.horizon = 5;
  c.num_datacenters = 0;
  EXPECT_THROW(generate(c), ConfigError);
}

TEST(SampleService, IndicesPerDatacenter) {
  GeneratorConfig c = base_config(0, 0, 3);
  c.service_shape.vms_per_dc = {2, 2};
  VmIndexAllocator indices(2);
  Rng rng(1);
  const auto s1 = sample_service(rng, c, 0, 1, indices);
  ASSERT_EQ(s1.descriptors.size(), 4u);
  EXPECT_EQ(s1.descriptors[0].id, (VmId{1, 1, 1}));
  EXPECT_EQ(s1.descriptors[1].id, (VmId{1, 1, 2}));
  EXPECT_EQ(s1.descriptors[2].id, (VmId{1, 2, 1}));
  EXPECT_EQ(s1.descriptors[3].id, (VmId{1, 2, 2}));

  c.service_shape.vms_per_dc = {1, 1};
  const auto s2 = sample_service(rng, c, 2, 2, indices);
  ASSERT_EQ(s2.descriptors.size(), 2u);
  EXPECT_EQ(s2.descriptors[0].id, (VmId{2, 1, 3}));
  EXPECT_EQ(s2.descriptors[1].id, (VmId{2, 2, 3}));
  for (const auto& d : s2.descriptors) EXPECT_EQ(d.t_init, 2);
}

TEST(SampleService, LifetimeClippedToHorizon) {
  GeneratorConfig c = base_config(0, 0, 3, 10);
  c.service_shape.lifetime = {50, 60};
  VmIndexAllocator indices(2);
  Rng rng(4);
  const auto s = sample_service(rng, c, 7, 1, indices);
  EXPECT_EQ(s.end, 10);
  for (const auto& d : s.descriptors) EXPECT_EQ(d.t_end, 10);
}

TEST(EvolveVertical, ZeroProbabilityLeavesSpec) {
  VerticalPolicy p;
  p.step_probability = 0.0;
  p.vary_net = true;
  const ResourceSpec spec{Decimal(8), Decimal(16), Decimal(150)};
  Rng rng(5);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(evolve_vertical(rng, spec, p), spec);
}

TEST(EvolveVertical, StepsStayInRangeAndFloor) {
  VerticalPolicy p;
  p.step_probability = 1.0;
  const ResourceSpec spec{Decimal(8), Decimal(1), Decimal(150)};
  Rng rng(6);
  bool grew = false, shrank = false;
  for (int i = 0; i < 2000; ++i) {
    const ResourceSpec next = evolve_vertical(rng, spec, p);
    EXPECT_EQ(next.net, spec.net);  // vary_net off
    EXPECT_GE(next.cpu, Decimal(5));   // 8 * 0.6 = 4.8 -> 5
    EXPECT_LE(next.cpu, Decimal(11));  // 8 * 1.4 = 11.2 -> 11
    EXPECT_GE(next.ram, Decimal(1));   // floor
    EXPECT_TRUE(next.cpu.is_integer());
    grew |= next.cpu > spec.cpu;
    shrank |= next.cpu < spec.cpu;
  }
  EXPECT_TRUE(grew);
  EXPECT_TRUE(shrank);
}

TEST(EvolveVertical, ExampleTransitionsAdmissible) {
  // 8 -> 9 is a +12.5% step, 18 -> 10 a -44.4% step.
  EXPECT_EQ(Decimal(8).scaled_by_basis_points(1250, 0), Decimal(9));
  EXPECT_EQ(Decimal(18).scaled_by_basis_points(-4444, 0), Decimal(10));
  VerticalPolicy p;
  p.step_probability = 1.0;
  p.step_min = 0.44;
  p.step_max = 0.45;
  Rng rng(8);
  bool seen = false;
  for (int i = 0; i < 200 && !seen; ++i) {
    seen = evolve_vertical(rng, {Decimal(9), Decimal(18), Decimal(1)}, p).ram == Decimal(10);
  }
  EXPECT_TRUE(seen);
}

TEST(EvolveHorizontal, RespectsBounds) {
  HorizontalPolicy p;
  p.step_probability = 1.0;
  p.min_vms = 1;
  p.max_vms = 2;
  ServiceState at_max{1, {{1, 2}}};
  ServiceState at_min{1, {{1}}};
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    for (const auto& a : evolve_horizontal(rng, at_max, p)) {
      EXPECT_EQ(a.kind, EventKind::VmScaleIn);
      EXPECT_EQ(a.vm, 2u);  // highest index
    }
    for (const auto& a : evolve_horizontal(rng, at_min, p)) EXPECT_EQ(a.kind, EventKind::VmScaleOut);
  }
  p.max_vms = 1;
  EXPECT_TRUE(evolve_horizontal(rng, at_min, p).empty());
}

TEST(EvolveHorizontal, FrequencyAndDirection) {
  HorizontalPolicy p;
  p.step_probability = 1.0;
  p.min_vms = 1;
  p.max_vms = 4;
  ServiceState s{1, {{1, 2}}};
  Rng rng(10);
  const int ticks = 10000;
  int actions = 0, outs = 0;
  for (int i = 0; i < ticks; ++i) {
    const auto a = evolve_horizontal(rng, s, p);
    actions += static_cast<int>(a.size());
    for (const auto& x : a) outs += x.kind == EventKind::VmScaleOut;
  }
  EXPECT_NEAR(static_cast<double>(actions) / ticks, 1.0, 0.02);
  EXPECT_NEAR(static_cast<double>(outs) / actions, 0.5, 0.02);
}

TEST(EvolveUtilization, DisabledClassesTrackRequest) {
  const ResourceSpec spec{Decimal(8), Decimal(16), Decimal(150)};
  UtilizationPolicy p;
  Rng rng(11);
  const UtilizationSample prev{Decimal(3), Decimal(4), Decimal(5)};
  const auto u = evolve_utilization(rng, prev, spec, p, {false, false});
  EXPECT_EQ(u, full_utilization(spec));
  const auto n = evolve_utilization(rng, prev, spec, p, {false, true});
  EXPECT_EQ(n.cpu, Decimal(8));
  EXPECT_EQ(n.ram, Decimal(16));
}

TEST(EvolveUtilization, WalkStaysInBounds) {
  const ResourceSpec spec{Decimal(8), Decimal(16), Decimal(50)};
  UtilizationPolicy p;
  p.net_step = {-60, 60};
  Rng rng(12);
  UtilizationSample u = full_utilization(spec);
  bool hit_zero = false;
  for (int i = 0; i < 2000; ++i) {
    u = evolve_utilization(rng, u, spec, p, {true, true});
    EXPECT_GE(u.net, Decimal(0));
    EXPECT_LE(u.net, spec.net);
    EXPECT_LE(u.cpu, spec.cpu);
    hit_zero |= u.net == Decimal(0);
  }
  EXPECT_TRUE(hit_zero);
}

TEST(EvolveUtilization, ExceedAllowedUpToTwiceRequest) {
  const ResourceSpec spec{Decimal(8), Decimal(16), Decimal(50)};
  UtilizationPolicy p;
  p.allow_exceed_request = true;
  Rng rng(13);
  UtilizationSample u = full_utilization(spec);
  bool exceeded = false;
  for (int i = 0; i < 2000; ++i) {
    u = evolve_utilization(rng, u, spec, p, {true, false});
    EXPECT_LE(u.cpu, Decimal(16));
    exceeded |= u.cpu > spec.cpu;
  }
  EXPECT_TRUE(exceeded);
}
