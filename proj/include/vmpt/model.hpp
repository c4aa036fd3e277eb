#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "vmpt/decimal.hpp"
#include "vmpt/environment.hpp"
#include "vmpt/errors.hpp"

namespace vmpt {

using Tick = std::int64_t;
using ServiceId = std::uint32_t;
using DatacenterId = std::uint32_t;
using VmIndex = std::uint32_t;

// Identity of V''_bcj: service b, datacenter c, index j within the datacenter.
struct VmId {
  ServiceId service = 0;
  DatacenterId dc = 0;
  VmIndex vm = 0;

  friend constexpr auto operator<=>(const VmId&, const VmId&) = default;
  friend constexpr bool operator==(const VmId&, const VmId&) = default;

  std::string to_string() const {
    return "V" + std::to_string(service) + "," + std::to_string(dc) + "," +
           std::to_string(vm);
  }
};

namespace detail {
inline void require_non_negative(Decimal v, const char* what) {
  if (v.is_negative()) {
    throw ValidationError(std::string(what) + " must be >= 0, got " +
                          v.to_string());
  }
}
}  // namespace detail

// Requested capacities: cpu [ECU], ram [GB], net [Mbps].
struct ResourceSpec {
  Decimal cpu;
  Decimal ram;
  Decimal net;

  friend constexpr bool operator==(const ResourceSpec&,
                                   const ResourceSpec&) = default;

  void check() const {
    detail::require_non_negative(cpu, "cpu");
    detail::require_non_negative(ram, "ram");
    detail::require_non_negative(net, "net");
  }
};

// Utilized amounts, same units as ResourceSpec.
struct UtilizationSample {
  Decimal cpu;
  Decimal ram;
  Decimal net;

  friend constexpr bool operator==(const UtilizationSample&,
                                   const UtilizationSample&) = default;

  void check() const {
    detail::require_non_negative(cpu, "ucpu");
    detail::require_non_negative(ram, "uram");
    detail::require_non_negative(net, "unet");
  }
};

// Utilization equal to the request in every class (the 100% rule).
constexpr UtilizationSample full_utilization(const ResourceSpec& spec) {
  return UtilizationSample{spec.cpu, spec.ram, spec.net};
}

// A VM request. Lifetime is the half-open tick interval [t_init, t_end).
struct VmDescriptor {
  VmId id;
  Decimal revenue;
  int sla = 1;
  Tick t_init = 0;
  Tick t_end = 1;

  friend bool operator==(const VmDescriptor&, const VmDescriptor&) = default;

  bool alive_at(Tick t) const { return t_init <= t && t < t_end; }
  Tick lifetime() const { return t_end - t_init; }
};

struct VmSample {
  VmId vm;
  Tick t = 0;
  ResourceSpec spec;
  UtilizationSample util;

  friend bool operator==(const VmSample&, const VmSample&) = default;
};

// Same-tick events order as declared here.
enum class EventKind : std::uint8_t {
  ServiceArrival = 0,
  ServiceDeparture = 1,
  VmScaleOut = 2,
  VmScaleIn = 3,
};

inline std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::ServiceArrival: return "ServiceArrival";
    case EventKind::ServiceDeparture: return "ServiceDeparture";
    case EventKind::VmScaleOut: return "VmScaleOut";
    case EventKind::VmScaleIn: return "VmScaleIn";
  }
  return "?";
}

inline std::optional<EventKind> event_kind_from_string(std::string_view s) {
  if (s == "ServiceArrival") return EventKind::ServiceArrival;
  if (s == "ServiceDeparture") return EventKind::ServiceDeparture;
  if (s == "VmScaleOut") return EventKind::VmScaleOut;
  if (s == "VmScaleIn") return EventKind::VmScaleIn;
  return std::nullopt;
}

constexpr bool is_scale_event(EventKind kind) {
  return kind == EventKind::VmScaleOut || kind == EventKind::VmScaleIn;
}

// Datacenter-local part of a VM identity, carried by scale events.
struct VmSlot {
  DatacenterId dc = 0;
  VmIndex vm = 0;

  friend constexpr auto operator<=>(const VmSlot&, const VmSlot&) = default;
  friend constexpr bool operator==(const VmSlot&, const VmSlot&) = default;
};

struct TraceEvent {
  Tick t = 0;
  EventKind kind = EventKind::ServiceArrival;
  ServiceId service = 0;
  std::optional<VmSlot> slot;  // present iff is_scale_event(kind)

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;

  static TraceEvent service_event(Tick t, EventKind kind, ServiceId b) {
    return TraceEvent{t, kind, b, std::nullopt};
  }
  static TraceEvent scale_event(Tick t, EventKind kind, const VmId& id) {
    return TraceEvent{t, kind, id.service, VmSlot{id.dc, id.vm}};
  }

  std::optional<VmId> vm() const {
    if (!slot) return std::nullopt;
    return VmId{service, slot->dc, slot->vm};
  }
};

inline constexpr int kFormatVersion = 1;

struct TraceHeader {
  EnvironmentId environment;
  Tick horizon = 1;
  std::uint32_t num_datacenters = 1;
  int sla_levels = 1;  // s, highest SLA priority level
  std::optional<std::uint64_t> seed;
  std::optional<std::string> config_digest;
  int format_version = kFormatVersion;

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;

  void check() const {
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    if (num_datacenters < 1) throw ValidationError("num_datacenters must be >= 1");
    if (sla_levels < 1) throw ValidationError("s must be >= 1");
  }
};

struct Trace {
  TraceHeader header;
  std::vector<TraceEvent> events;
  std::vector<VmSample> samples;
  std::vector<VmDescriptor> descriptors;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Canonical sort keys.
inline auto event_key(const TraceEvent& e) {
  const VmSlot slot = e.slot.value_or(VmSlot{});
  return std::make_tuple(e.t, static_cast<int>(e.kind), e.service, slot.dc,
                         slot.vm);
}

inline auto sample_key(const VmSample& s) {
  return std::make_tuple(s.t, s.vm.service, s.vm.dc, s.vm.vm);
}

// Sorts events by (t, kind, b, c, j), samples by (t, b, c, j) and
// descriptors by (b, c, j). Stable for equal keys.
inline Trace canonicalize(Trace trace) {
  std::stable_sort(trace.events.begin(), trace.events.end(),
                   [](const TraceEvent& a, const TraceEvent& b) {
                     return event_key(a) < event_key(b);
                   });
  std::stable_sort(trace.samples.begin(), trace.samples.end(),
                   [](const VmSample& a, const VmSample& b) {
                     return sample_key(a) < sample_key(b);
                   });
  std::stable_sort(trace.descriptors.begin(), trace.descriptors.end(),
                   [](const VmDescriptor& a, const VmDescriptor& b) {
                     return a.id < b.id;
                   });
  return trace;
}

namespace detail {
inline void require_tick_in_horizon(const Trace& trace, Tick t) {
  if (t < 0 || t >= trace.header.horizon) {
    throw std::out_of_range("tick " + std::to_string(t) +
                            " outside horizon [0, " +
                            std::to_string(trace.header.horizon) + ")");
  }
}
}  // namespace detail

struct PopulationEntry {
  ServiceId service = 0;
  VmIndex vm = 0;

  friend constexpr auto operator<=>(const PopulationEntry&,
                                    const PopulationEntry&) = default;
  friend constexpr bool operator==(const PopulationEntry&,
                                   const PopulationEntry&) = default;
};

// VMs of datacenter c alive at tick t as (b, j) pairs in canonical order.
// The list length is mDC_c at that tick.
inline std::vector<PopulationEntry> dc_population(const Trace& trace,
                                                  DatacenterId c, Tick t) {
  detail::require_tick_in_horizon(trace, t);
  std::vector<PopulationEntry> out;
  for (const auto& d : trace.descriptors) {
    if (d.id.dc == c && d.alive_at(t)) out.push_back({d.id.service, d.id.vm});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// mS_b at tick t: VMs of service b alive at t across all datacenters.
inline std::size_t service_vm_count(const Trace& trace, ServiceId b, Tick t) {
  detail::require_tick_in_horizon(trace, t);
  return static_cast<std::size_t>(std::count_if(
      trace.descriptors.begin(), trace.descriptors.end(),
      [&](const VmDescriptor& d) { return d.id.service == b && d.alive_at(t); }));
}

}  // namespace vmpt
