#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmpt/environment.hpp"
#include "vmpt/errors.hpp"
#include "vmpt/model.hpp"

namespace vmpt {

// The four hand-worked example environments.
enum class FixtureId {
  Example1_env01,
  Example2_env02,
  Example3_env10,
  Example4_env20,
};

inline constexpr std::array<FixtureId, 4> kAllFixtures = {
    FixtureId::Example1_env01, FixtureId::Example2_env02,
    FixtureId::Example3_env10, FixtureId::Example4_env20};

inline std::string_view to_string(FixtureId id) {
  switch (id) {
    case FixtureId::Example1_env01: return "Example1_env01";
    case FixtureId::Example2_env02: return "Example2_env02";
    case FixtureId::Example3_env10: return "Example3_env10";
    case FixtureId::Example4_env20: return "Example4_env20";
  }
  return "?";
}

// Declared environment of each example.
inline EnvironmentId fixture_environment(FixtureId id) {
  switch (id) {
    case FixtureId::Example1_env01: return env_from_coords(0, 1);
    case FixtureId::Example2_env02: return env_from_coords(0, 2);
    case FixtureId::Example3_env10: return env_from_coords(1, 0);
    case FixtureId::Example4_env20: return env_from_coords(2, 0);
  }
  throw ValidationError("unknown fixture");
}

// Accepts the environment coordinates ("0,1", "(2,0)") or the enum name.
inline FixtureId parse_fixture_id(std::string_view text) {
  for (FixtureId id : kAllFixtures) {
    if (text == to_string(id)) return id;
  }
  const EnvironmentId env = parse_environment(text);
  for (FixtureId id : kAllFixtures) {
    if (fixture_environment(id) == env) return id;
  }
  throw ValidationError("no fixture for environment " + env.to_string() +
                        "; available: 0,1 0,2 1,0 2,0");
}

namespace detail {

// One VM of a worked example: per-tick values starting at t_init.
struct FixtureVm {
  VmId id;
  Tick t_init;
  std::vector<int> vcpu, vram, ucpu, uram, unet;
  std::optional<int> vnet;  // defaults to the first Unet value
};

inline std::vector<int> repeat(int value, std::size_t n) {
  return std::vector<int>(n, value);
}

inline Trace build_fixture(EnvironmentId env,
                           const std::vector<FixtureVm>& vms) {
  Trace trace;
  trace.header.environment = env;
  trace.header.horizon = 6;
  trace.header.num_datacenters = 2;
  trace.header.sla_levels = 1;

  std::vector<ServiceId> seen;
  for (const auto& vm : vms) {
    const std::size_t n = vm.vcpu.size();
    const Decimal vnet(vm.vnet.value_or(vm.unet.front()));
    trace.descriptors.push_back(VmDescriptor{vm.id, Decimal(0), 1, vm.t_init,
                                             vm.t_init + static_cast<Tick>(n)});
    for (std::size_t k = 0; k < n; ++k) {
      trace.samples.push_back(VmSample{
          vm.id, vm.t_init + static_cast<Tick>(k),
          ResourceSpec{Decimal(vm.vcpu[k]), Decimal(vm.vram[k]), vnet},
          UtilizationSample{Decimal(vm.ucpu[k]), Decimal(vm.uram[k]),
                            Decimal(vm.unet[k])}});
    }
  }
  // Service lifetimes span their VMs; every VM of a service shares them here.
  for (const auto& d : trace.descriptors) {
    if (std::find(seen.begin(), seen.end(), d.id.service) != seen.end()) continue;
    seen.push_back(d.id.service);
    trace.events.push_back(TraceEvent::service_event(
        d.t_init, EventKind::ServiceArrival, d.id.service));
    trace.events.push_back(TraceEvent::service_event(
        d.t_end, EventKind::ServiceDeparture, d.id.service));
  }
  return canonicalize(std::move(trace));
}

}  // namespace detail

/// Hand-encoded traces of the four worked examples.
///
/// Every numeric cell is stored verbatim, including cells that contradict the
/// stated environment (utilization above request in example 1, frozen
/// utilization under growing requests in example 4). Fields the examples
/// leave out are filled as R = 0, SLA = 1 and Vnet = the VM's first Unet
/// value. S_1 lives over ticks 0..3 and departs at 4; in example 3 the
/// second service lives over 2..4 and departs at 5. Horizon 6, 2 datacenters.
inline Trace example_trace(FixtureId id) {
  using detail::FixtureVm;
  using detail::repeat;
  constexpr std::size_t n = 4;
  const VmId v111{1, 1, 1}, v112{1, 1, 2}, v121{1, 2, 1}, v122{1, 2, 2};

  switch (id) {
    case FixtureId::Example1_env01:
      return detail::build_fixture(
          fixture_environment(id),
          {
              {v111, 0, repeat(8, n), repeat(16, n), {8, 9, 10, 12}, {16, 18, 22, 26}, repeat(150, n), {}},
              {v112, 0, repeat(5, n), repeat(12, n), {5, 5, 7, 7}, {12, 13, 16, 20}, repeat(50, n), {}},
              {v121, 0, repeat(5, n), repeat(12, n), {5, 4, 4, 5}, {12, 10, 10, 9}, repeat(50, n), {}},
              {v122, 0, repeat(9, n), repeat(18, n), {9, 12, 14, 13}, {18, 20, 22, 25}, repeat(170, n), {}},
          });
    case FixtureId::Example2_env02:
      return detail::build_fixture(
          fixture_environment(id),
          {
              {v111, 0, repeat(8, n), repeat(16, n), repeat(8, n), repeat(16, n), {150, 170, 180, 200}, {}},
              {v112, 0, repeat(5, n), repeat(12, n), repeat(5, n), repeat(12, n), {50, 60, 40, 0}, {}},
              {v121, 0, repeat(5, n), repeat(12, n), repeat(5, n), repeat(12, n), {50, 100, 150, 170}, {}},
              {v122, 0, repeat(9, n), repeat(18, n), repeat(9, n), repeat(18, n), {150, 200, 350, 800}, {}},
          });
    case FixtureId::Example3_env10: {
      constexpr std::size_t m = 3;
      return detail::build_fixture(
          fixture_environment(id),
          {
              {v111, 0, repeat(8, n), repeat(16, n), repeat(8, n), repeat(16, n), repeat(150, n), {}},
              {v112, 0, repeat(5, n), repeat(12, n), repeat(5, n), repeat(12, n), repeat(50, n), {}},
              {v121, 0, repeat(5, n), repeat(12, n), repeat(5, n), repeat(12, n), repeat(50, n), {}},
              {v122, 0, repeat(9, n), repeat(18, n), repeat(9, n), repeat(18, n), repeat(170, n), {}},
              {VmId{2, 1, 3}, 2, repeat(2, m), repeat(10, m), repeat(2, m), repeat(10, m), repeat(60, m), 60},
              {VmId{2, 2, 3}, 2, repeat(8, m), repeat(20, m), repeat(8, m), repeat(20, m), repeat(120, m), 120},
          });
    }
    case FixtureId::Example4_env20:
      return detail::build_fixture(
          fixture_environment(id),
          {
              {v111, 0, {8, 9, 9, 11}, {16, 22, 23, 25}, repeat(8, n), repeat(16, n), repeat(150, n), {}},
              {v112, 0, {5, 6, 6, 5}, {12, 15, 15, 16}, repeat(5, n), repeat(12, n), repeat(50, n), {}},
              {v121, 0, {5, 6, 6, 7}, {12, 18, 18, 20}, repeat(5, n), repeat(12, n), repeat(50, n), {}},
              {v122, 0, {9, 6, 6, 5}, {18, 10, 10, 12}, repeat(9, n), repeat(18, n), repeat(170, n), {}},
          });
  }
  throw ValidationError("unknown fixture");
}

}  // namespace vmpt
