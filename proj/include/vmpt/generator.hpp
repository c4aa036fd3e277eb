#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vmpt/config.hpp"
#include "vmpt/decimal.hpp"
#include "vmpt/environment.hpp"
#include "vmpt/errors.hpp"
#include "vmpt/model.hpp"
#include "vmpt/rng.hpp"

namespace vmpt {

// Hands out VM indices per datacenter: 1, 2, 3, ... regardless of service.
class VmIndexAllocator {
 public:
  explicit VmIndexAllocator(std::uint32_t num_datacenters)
      : next_(num_datacenters + 1, 1) {}

  VmIndex take(DatacenterId dc) { return next_.at(dc)++; }
  VmIndex peek(DatacenterId dc) const { return next_.at(dc); }

 private:
  std::vector<VmIndex> next_;
};

// Request fields drawn for a fresh VM.
struct VmRequest {
  ResourceSpec spec;
  Decimal revenue;
  int sla = 1;
};

// Draw order: cpu, ram, net, revenue, sla.
inline VmRequest draw_vm_request(Rng& rng, const Sizing& sizing) {
  VmRequest r;
  r.spec.cpu = Decimal(rng.uniform_int(sizing.cpu.min, sizing.cpu.max));
  r.spec.ram = Decimal(rng.uniform_int(sizing.ram.min, sizing.ram.max));
  r.spec.net = Decimal(rng.uniform_int(sizing.net.min, sizing.net.max));
  r.revenue = Decimal(rng.uniform_int(sizing.revenue.min, sizing.revenue.max));
  r.sla = static_cast<int>(rng.uniform_int(sizing.sla.min, sizing.sla.max));
  return r;
}

struct ServiceTemplate {
  ServiceId service = 0;
  Tick arrival = 0;
  Tick end = 0;
  std::vector<VmDescriptor> descriptors;
  std::vector<ResourceSpec> initial_specs;  // parallel to descriptors
};

/// Draws a new service arriving at tick `t`: its lifetime (clipped to the
/// horizon) and, for every datacenter, a VM count from service_shape. VM
/// indices continue from `indices`. Each VM's request comes from its own
/// stream vm_stream(seed, b, c, j).
inline ServiceTemplate sample_service(Rng& rng, const GeneratorConfig& config,
                                      Tick t, ServiceId service,
                                      VmIndexAllocator& indices) {
  ServiceTemplate out;
  out.service = service;
  out.arrival = t;
  const Tick lifetime = rng.uniform_int(config.service_shape.lifetime.min,
                                        config.service_shape.lifetime.max);
  out.end = std::min(t + lifetime, config.horizon);
  for (DatacenterId c = 1; c <= config.num_datacenters; ++c) {
    const auto count = rng.uniform_int(config.service_shape.vms_per_dc.min,
                                       config.service_shape.vms_per_dc.max);
    for (std::int64_t i = 0; i < count; ++i) {
      const VmId id{service, c, indices.take(c)};
      Rng vm_rng = vm_stream(config.seed, id.service, id.dc, id.vm);
      const VmRequest req = draw_vm_request(vm_rng, config.sizing);
      out.descriptors.push_back(
          VmDescriptor{id, req.revenue, req.sla, out.arrival, out.end});
      out.initial_specs.push_back(req.spec);
    }
  }
  return out;
}

namespace detail {

inline Decimal vertical_step(Rng& rng, Decimal value,
                             const VerticalPolicy& policy) {
  if (!rng.bernoulli(policy.step_probability)) return value;
  const auto lo = static_cast<std::int64_t>(std::llround(policy.step_min * 1e4));
  const auto hi = static_cast<std::int64_t>(std::llround(policy.step_max * 1e4));
  const std::int64_t magnitude = rng.uniform_int(lo, hi);
  const bool grow = rng.below(2) == 0;
  const Decimal next = value.scaled_by_basis_points(grow ? magnitude : -magnitude,
                                                    policy.decimals);
  return max(next, Decimal(policy.floor));
}

}  // namespace detail

/// One tick of vertical elasticity: cpu and ram (and net when vary_net is
/// set) each step independently with probability step_probability by a
/// factor (1 +/- delta), delta drawn in basis points from
/// [step_min, step_max], rounded half-even to `decimals` places and floored.
inline ResourceSpec evolve_vertical(Rng& rng, const ResourceSpec& spec,
                                    const VerticalPolicy& policy) {
  ResourceSpec out = spec;
  out.cpu = detail::vertical_step(rng, spec.cpu, policy);
  out.ram = detail::vertical_step(rng, spec.ram, policy);
  if (policy.vary_net) out.net = detail::vertical_step(rng, spec.net, policy);
  return out;
}

// Alive VMs of one service, per datacenter (index dc - 1), ascending index.
struct ServiceState {
  ServiceId service = 0;
  std::vector<std::vector<VmIndex>> alive_by_dc;

  std::size_t count(DatacenterId dc) const { return alive_by_dc.at(dc - 1).size(); }
};

struct ScaleAction {
  EventKind kind = EventKind::VmScaleOut;
  DatacenterId dc = 0;
  // Scale-in: the VM removed (highest alive index). Scale-out: 0, the caller
  // allocates the new index.
  VmIndex vm = 0;

  friend bool operator==(const ScaleAction&, const ScaleAction&) = default;
};

/// With probability step_probability, picks one (datacenter, direction)
/// pair uniformly among the feasible ones: scale-out where the count is
/// below max_vms, scale-in where it is above min_vms. Emits at most one
/// action per call.
inline std::vector<ScaleAction> evolve_horizontal(Rng& rng,
                                                  const ServiceState& state,
                                                  const HorizontalPolicy& policy) {
  std::vector<ScaleAction> out;
  if (!rng.bernoulli(policy.step_probability)) return out;
  std::vector<ScaleAction> feasible;
  for (std::size_t i = 0; i < state.alive_by_dc.size(); ++i) {
    const auto dc = static_cast<DatacenterId>(i + 1);
    const auto& alive = state.alive_by_dc[i];
    const auto n = static_cast<std::int64_t>(alive.size());
    if (n < policy.max_vms) feasible.push_back({EventKind::VmScaleOut, dc, 0});
    if (n > policy.min_vms && !alive.empty()) {
      feasible.push_back({EventKind::VmScaleIn, dc, alive.back()});
    }
  }
  if (feasible.empty()) return out;
  out.push_back(feasible[rng.below(feasible.size())]);
  return out;
}

struct UtilizationClasses {
  bool server = false;
  bool network = false;
};

namespace detail {
inline Decimal walk(Rng& rng, Decimal prev, Decimal request,
                    const IntRange& step, bool allow_exceed) {
  const Decimal cap = allow_exceed ? request * 2 : request;
  const Decimal next = prev + Decimal(rng.uniform_int(step.min, step.max));
  return min(max(next, Decimal(0)), cap);
}
}  // namespace detail

/// Bounded random walk per enabled class, clamped to [0, request] (or
/// [0, 2*request] with allow_exceed_request). Disabled classes track the
/// request exactly.
inline UtilizationSample evolve_utilization(Rng& rng,
                                            const UtilizationSample& prev,
                                            const ResourceSpec& spec,
                                            const UtilizationPolicy& policy,
                                            UtilizationClasses classes) {
  UtilizationSample out = full_utilization(spec);
  const bool exceed = policy.allow_exceed_request;
  if (classes.server) {
    out.cpu = detail::walk(rng, prev.cpu, spec.cpu, policy.cpu_step, exceed);
    out.ram = detail::walk(rng, prev.ram, spec.ram, policy.ram_step, exceed);
  }
  if (classes.network) {
    out.net = detail::walk(rng, prev.net, spec.net, policy.net_step, exceed);
  }
  return out;
}

namespace detail {

struct ServicePlan {
  ServiceId service = 0;
  Tick arrival = 0;
  Tick end = 0;
  Rng rng{0};
  ServiceState state;
};

inline bool scale_event_possible(const ServicePlan& s,
                                 const HorizontalPolicy& policy) {
  if (s.end - s.arrival < 2) return false;
  for (const auto& alive : s.state.alive_by_dc) {
    const auto n = static_cast<std::int64_t>(alive.size());
    if (n < policy.max_vms || n > policy.min_vms) return true;
  }
  return false;
}

}  // namespace detail

/// Builds a full trace from `config`. Pure function of the config: the same
/// config (seed included) always yields the same trace.
///
/// Structure comes first (arrivals, lifetimes, horizontal scale actions),
/// then each VM's per-tick requests and utilization are drawn from its own
/// stream. Dynamics the environment does not enable never occur. With
/// guarantee_dynamics, one deterministic instance is injected for every
/// enabled capability that the random draw left unobserved.
inline Trace generate(const GeneratorConfig& config) {
  validate_config(config);
  const Capabilities caps = capabilities(config.environment);
  const Tick horizon = config.horizon;
  if (config.guarantee_dynamics && (caps.vertical || caps.horizontal) &&
      horizon < 2) {
    throw ConfigError("guarantee_dynamics with elasticity needs horizon >= 2");
  }

  std::vector<VmDescriptor> descriptors;
  std::map<VmId, std::size_t> position;
  std::vector<detail::ServicePlan> services;
  VmIndexAllocator indices(config.num_datacenters);
  bool any_scale_event = false;

  auto add_vm = [&](const VmDescriptor& d) {
    position.emplace(d.id, descriptors.size());
    descriptors.push_back(d);
  };

  auto apply = [&](detail::ServicePlan& s, const ScaleAction& action, Tick t) {
    auto& alive = s.state.alive_by_dc.at(action.dc - 1);
    if (action.kind == EventKind::VmScaleOut) {
      const VmId id{s.service, action.dc, indices.take(action.dc)};
      Rng vm_rng = vm_stream(config.seed, id.service, id.dc, id.vm);
      const VmRequest req = draw_vm_request(vm_rng, config.sizing);
      add_vm(VmDescriptor{id, req.revenue, req.sla, t, s.end});
      alive.push_back(id.vm);
    } else {
      const VmId id{s.service, action.dc, alive.back()};
      descriptors[position.at(id)].t_end = t;
      alive.pop_back();
    }
    any_scale_event = true;
  };

  Rng arrivals = arrival_stream(config.seed);
  ServiceId next_service = 1;
  for (Tick t = 0; t < horizon; ++t) {
    if (caps.horizontal) {
      for (auto& s : services) {
        if (!(s.arrival < t && t < s.end)) continue;
        for (const auto& action :
             evolve_horizontal(s.rng, s.state, config.horizontal_policy)) {
          apply(s, action, t);
        }
      }
    }
    std::int64_t count = config.arrival.burst
                             ? arrivals.poisson(config.arrival.rate)
                             : (arrivals.bernoulli(config.arrival.rate) ? 1 : 0);
    if (t == 0 && config.arrival.force_initial_arrival && count == 0) count = 1;
    for (std::int64_t i = 0; i < count; ++i) {
      detail::ServicePlan plan;
      plan.service = next_service++;
      plan.rng = service_stream(config.seed, plan.service);
      const ServiceTemplate tmpl =
          sample_service(plan.rng, config, t, plan.service, indices);
      plan.arrival = tmpl.arrival;
      plan.end = tmpl.end;
      plan.state.service = plan.service;
      plan.state.alive_by_dc.resize(config.num_datacenters);
      for (const auto& d : tmpl.descriptors) {
        add_vm(d);
        plan.state.alive_by_dc[d.id.dc - 1].push_back(d.id.vm);
      }
      services.push_back(std::move(plan));
    }
  }

  if (config.guarantee_dynamics && caps.horizontal && !any_scale_event) {
    // Scale actions only ever happen strictly inside a lifetime, so at
    // arrival + 1 every count is still the initial one.
    bool injected = false;
    for (auto& s : services) {
      if (!detail::scale_event_possible(s, config.horizontal_policy)) continue;
      const Tick t = s.arrival + 1;
      for (DatacenterId c = 1; c <= config.num_datacenters && !injected; ++c) {
        const auto n = static_cast<std::int64_t>(s.state.count(c));
        if (n < config.horizontal_policy.max_vms) {
          apply(s, ScaleAction{EventKind::VmScaleOut, c, 0}, t);
          injected = true;
        } else if (n > config.horizontal_policy.min_vms) {
          apply(s, ScaleAction{EventKind::VmScaleIn, c,
                               s.state.alive_by_dc[c - 1].back()},
                t);
          injected = true;
        }
      }
      if (injected) break;
    }
    if (!injected) {
      throw ConfigError(
          "guarantee_dynamics: no service admits a horizontal scale event");
    }
  }

  Trace trace;
  trace.header.environment = config.environment;
  trace.header.horizon = horizon;
  trace.header.num_datacenters = config.num_datacenters;
  trace.header.sla_levels = config.sizing.sla_levels;
  trace.header.seed = config.seed;
  trace.header.config_digest = config_digest(config);

  for (const auto& s : services) {
    trace.events.push_back(
        TraceEvent::service_event(s.arrival, EventKind::ServiceArrival, s.service));
    if (s.end < horizon) {
      trace.events.push_back(TraceEvent::service_event(
          s.end, EventKind::ServiceDeparture, s.service));
    }
  }
  std::map<ServiceId, const detail::ServicePlan*> by_service;
  for (const auto& s : services) by_service[s.service] = &s;
  for (const auto& d : descriptors) {
    const auto& s = *by_service.at(d.id.service);
    if (d.t_init > s.arrival) {
      trace.events.push_back(
          TraceEvent::scale_event(d.t_init, EventKind::VmScaleOut, d.id));
    }
    if (d.t_end < s.end) {
      trace.events.push_back(
          TraceEvent::scale_event(d.t_end, EventKind::VmScaleIn, d.id));
    }
  }

  std::sort(descriptors.begin(), descriptors.end(),
            [](const VmDescriptor& a, const VmDescriptor& b) { return a.id < b.id; });

  // Per-VM sample runs, kept contiguous by VM until the final canonical sort.
  const UtilizationClasses classes{caps.server_overbooking,
                                   caps.network_overbooking};
  std::vector<VmSample> samples;
  bool any_spec_change = false;
  bool any_server_gap = false;
  bool any_net_gap = false;
  for (const auto& d : descriptors) {
    Rng rng = vm_stream(config.seed, d.id.service, d.id.dc, d.id.vm);
    ResourceSpec spec = draw_vm_request(rng, config.sizing).spec;
    UtilizationSample util = full_utilization(spec);
    for (Tick t = d.t_init; t < d.t_end; ++t) {
      if (t > d.t_init) {
        if (caps.vertical) {
          const ResourceSpec next = evolve_vertical(rng, spec, config.vertical_policy);
          any_spec_change = any_spec_change || !(next == spec);
          spec = next;
        }
        util = evolve_utilization(rng, util, spec, config.utilization_policy, classes);
      }
      any_server_gap = any_server_gap || util.cpu != spec.cpu || util.ram != spec.ram;
      any_net_gap = any_net_gap || util.net != spec.net;
      samples.push_back(VmSample{d.id, t, spec, util});
    }
  }

  if (config.guarantee_dynamics && caps.vertical && !any_spec_change) {
    auto first = std::find_if(descriptors.begin(), descriptors.end(),
                              [](const VmDescriptor& d) { return d.lifetime() >= 2; });
    if (first == descriptors.end()) {
      throw ConfigError("guarantee_dynamics: no VM lives long enough for a "
                        "vertical change");
    }
    const Decimal bump = Decimal::unit(config.vertical_policy.decimals);
    for (auto& s : samples) {
      if (s.vm == first->id && s.t > first->t_init) {
        s.spec.cpu += bump;
        if (!caps.server_overbooking) s.util.cpu = s.spec.cpu;
      }
    }
    any_server_gap = std::any_of(samples.begin(), samples.end(), [](const VmSample& s) {
      return s.util.cpu != s.spec.cpu || s.util.ram != s.spec.ram;
    });
  }
  if (config.guarantee_dynamics && caps.server_overbooking && !any_server_gap) {
    auto it = std::find_if(samples.begin(), samples.end(), [](const VmSample& s) {
      return s.spec.cpu > Decimal(0) || s.spec.ram > Decimal(0);
    });
    if (it == samples.end()) {
      throw ConfigError("guarantee_dynamics: no sample with non-zero cpu or ram");
    }
    if (it->spec.cpu > Decimal(0)) {
      it->util.cpu = max(it->spec.cpu - Decimal(1), Decimal(0));
    } else {
      it->util.ram = max(it->spec.ram - Decimal(1), Decimal(0));
    }
  }
  if (config.guarantee_dynamics && caps.network_overbooking && !any_net_gap) {
    auto it = std::find_if(samples.begin(), samples.end(),
                           [](const VmSample& s) { return s.spec.net > Decimal(0); });
    if (it == samples.end()) {
      throw ConfigError("guarantee_dynamics: no sample with non-zero net");
    }
    it->util.net = max(it->spec.net - Decimal(1), Decimal(0));
  }

  trace.samples = std::move(samples);
  trace.descriptors = std::move(descriptors);
  return canonicalize(std::move(trace));
}

}  // namespace vmpt
