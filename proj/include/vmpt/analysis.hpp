#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "vmpt/decimal.hpp"
#include "vmpt/environment.hpp"
#include "vmpt/errors.hpp"
#include "vmpt/model.hpp"

namespace vmpt {

// Strict enforces everything. The relaxed mode ("paper") accepts the worked
// examples as printed: no utilization-above-request check, and under vertical
// elasticity server utilization may differ from the request.
enum class ValidationMode { Strict, Paper };

inline std::string_view to_string(ValidationMode mode) {
  return mode == ValidationMode::Strict ? "strict" : "paper";
}

inline ValidationMode parse_validation_mode(std::string_view text) {
  if (text == "strict") return ValidationMode::Strict;
  if (text == "paper") return ValidationMode::Paper;
  throw ValidationError("unknown validation mode '" + std::string(text) +
                        "', expected strict|paper");
}

// Rule ids. Structural rules come first in every report.
namespace rules {
inline constexpr std::string_view kHeader = "header";
inline constexpr std::string_view kDescriptor = "descriptor";
inline constexpr std::string_view kUniqueVm = "unique-vm";
inline constexpr std::string_view kUnknownVm = "unknown-vm";
inline constexpr std::string_view kDuplicateSample = "duplicate-sample";
inline constexpr std::string_view kLifetime = "lifetime-containment";
inline constexpr std::string_view kDense = "dense-sampling";
inline constexpr std::string_view kNonNegative = "non-negative";
inline constexpr std::string_view kEvents = "event-consistency";
inline constexpr std::string_view kNoVertical = "no-vertical";
inline constexpr std::string_view kNoHorizontal = "no-horizontal";
inline constexpr std::string_view kNoServerOb = "no-server-ob";
inline constexpr std::string_view kNoNetOb = "no-net-ob";
inline constexpr std::string_view kObBound = "ob-bound";

inline bool is_conformance(std::string_view rule) {
  return rule == kNoVertical || rule == kNoHorizontal || rule == kNoServerOb ||
         rule == kNoNetOb || rule == kObBound;
}
}  // namespace rules

struct Violation {
  std::string rule;
  std::optional<Tick> t;
  std::optional<VmId> vm;
  std::optional<std::size_t> event_index;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  ValidationMode mode = ValidationMode::Strict;
  EnvironmentId declared;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  bool cites(std::string_view rule, Tick t, const VmId& vm) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) {
      return v.rule == rule && v.t == t && v.vm == vm;
    });
  }

  std::size_t count(std::string_view rule) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(),
        [&](const Violation& v) { return v.rule == rule; }));
  }
};

namespace detail {

// Samples of each VM ordered by tick. Built once per analysis call.
struct SampleIndex {
  std::map<VmId, std::vector<const VmSample*>> by_vm;
  std::map<ServiceId, std::map<Tick, std::vector<VmId>>> by_service_tick;

  explicit SampleIndex(const Trace& trace) {
    for (const auto& s : trace.samples) {
      by_vm[s.vm].push_back(&s);
      by_service_tick[s.vm.service][s.t].push_back(s.vm);
    }
    for (auto& [id, run] : by_vm) {
      std::stable_sort(run.begin(), run.end(),
                       [](const VmSample* a, const VmSample* b) { return a->t < b->t; });
    }
    for (auto& [b, ticks] : by_service_tick) {
      for (auto& [t, vms] : ticks) {
        std::sort(vms.begin(), vms.end());
        vms.erase(std::unique(vms.begin(), vms.end()), vms.end());
      }
    }
  }
};

// A within-VM request change: spec at t differs from spec at t-1.
struct SpecChange {
  VmId vm;
  Tick t;
};

inline std::vector<SpecChange> spec_changes(const SampleIndex& index) {
  std::vector<SpecChange> out;
  for (const auto& [id, run] : index.by_vm) {
    for (std::size_t k = 1; k < run.size(); ++k) {
      if (run[k]->t == run[k - 1]->t + 1 && !(run[k]->spec == run[k - 1]->spec)) {
        out.push_back({id, run[k]->t});
      }
    }
  }
  return out;
}

// A tick strictly inside a service's sampled span where its VM count differs
// from the previous tick. `vm` is the first VM (canonical order) that appears
// or disappears at that tick.
struct CountChange {
  ServiceId service;
  Tick t;
  VmId vm;
};

inline std::vector<CountChange> count_changes(const SampleIndex& index) {
  std::vector<CountChange> out;
  for (const auto& [b, ticks] : index.by_service_tick) {
    if (ticks.empty()) continue;
    const Tick first = ticks.begin()->first;
    const Tick last = ticks.rbegin()->first;
    static const std::vector<VmId> kNone;
    auto at = [&](Tick t) -> const std::vector<VmId>& {
      auto it = ticks.find(t);
      return it == ticks.end() ? kNone : it->second;
    };
    for (Tick t = first + 1; t <= last; ++t) {
      const auto& now = at(t);
      const auto& before = at(t - 1);
      if (now.size() == before.size()) continue;
      std::vector<VmId> diff;
      std::set_symmetric_difference(now.begin(), now.end(), before.begin(),
                                    before.end(), std::back_inserter(diff));
      out.push_back({b, t, diff.front()});
    }
  }
  return out;
}

// Services whose first sampled tick is > 0 while another service has a
// sample at that tick.
inline std::vector<ServiceId> overlapping_arrivals(const SampleIndex& index) {
  std::vector<ServiceId> out;
  for (const auto& [b, ticks] : index.by_service_tick) {
    const Tick arrival = ticks.begin()->first;
    if (arrival == 0) continue;
    for (const auto& [other, other_ticks] : index.by_service_tick) {
      if (other != b && other_ticks.count(arrival) != 0) {
        out.push_back(b);
        break;
      }
    }
  }
  return out;
}

inline bool server_gap(const VmSample& s) {
  return s.util.cpu != s.spec.cpu || s.util.ram != s.spec.ram;
}
inline bool net_gap(const VmSample& s) { return s.util.net != s.spec.net; }

class ReportBuilder {
 public:
  explicit ReportBuilder(ValidationReport& report) : report_(report) {}

  void at(std::string_view rule, Tick t, const VmId& vm, std::string message) {
    report_.violations.push_back(
        Violation{std::string(rule), t, vm, std::nullopt, std::move(message)});
  }
  void event(std::string_view rule, std::size_t index, std::string message) {
    report_.violations.push_back(
        Violation{std::string(rule), std::nullopt, std::nullopt, index, std::move(message)});
  }
  void global(std::string_view rule, std::string message) {
    report_.violations.push_back(Violation{std::string(rule), std::nullopt,
                                           std::nullopt, std::nullopt,
                                           std::move(message)});
  }

 private:
  ValidationReport& report_;
};

inline void check_structure(const Trace& trace, const SampleIndex& index,
                            ReportBuilder& out) {
  const TraceHeader& h = trace.header;
  const Tick horizon = h.horizon;
  if (h.horizon < 1) out.global(rules::kHeader, "horizon must be >= 1");
  if (h.num_datacenters < 1) out.global(rules::kHeader, "num_datacenters must be >= 1");
  if (h.sla_levels < 1) out.global(rules::kHeader, "s must be >= 1");

  std::map<VmId, const VmDescriptor*> descriptors;
  for (const auto& d : trace.descriptors) {
    if (!descriptors.emplace(d.id, &d).second) {
      out.at(rules::kUniqueVm, d.t_init, d.id, "duplicate descriptor for " + d.id.to_string());
      continue;
    }
    if (d.id.service == 0 || d.id.dc == 0 || d.id.vm == 0) {
      out.at(rules::kDescriptor, d.t_init, d.id, "identity components must be positive");
    }
    if (d.id.dc > h.num_datacenters) {
      out.at(rules::kDescriptor, d.t_init, d.id,
             "datacenter " + std::to_string(d.id.dc) + " exceeds num_datacenters");
    }
    if (d.t_init < 0 || d.t_init >= d.t_end || d.t_end > horizon) {
      out.at(rules::kDescriptor, d.t_init, d.id,
             "lifetime [" + std::to_string(d.t_init) + "," + std::to_string(d.t_end) +
                 ") is empty or outside the horizon");
    }
    if (d.sla < 1 || d.sla > h.sla_levels) {
      out.at(rules::kDescriptor, d.t_init, d.id,
             "sla " + std::to_string(d.sla) + " outside 1.." + std::to_string(h.sla_levels));
    }
    if (d.revenue.is_negative()) {
      out.at(rules::kDescriptor, d.t_init, d.id, "revenue must be >= 0");
    }
  }

  std::set<std::tuple<Tick, VmId>> seen;
  for (const auto& s : trace.samples) {
    if (!seen.emplace(s.t, s.vm).second) {
      out.at(rules::kDuplicateSample, s.t, s.vm, "duplicate sample");
    }
    const auto it = descriptors.find(s.vm);
    if (it == descriptors.end()) {
      out.at(rules::kUnknownVm, s.t, s.vm, "sample has no descriptor");
    } else if (!it->second->alive_at(s.t)) {
      out.at(rules::kLifetime, s.t, s.vm, "sample outside VM lifetime");
    }
    if (s.spec.cpu.is_negative() || s.spec.ram.is_negative() || s.spec.net.is_negative() ||
        s.util.cpu.is_negative() || s.util.ram.is_negative() || s.util.net.is_negative()) {
      out.at(rules::kNonNegative, s.t, s.vm, "negative resource amount");
    }
  }

  for (const auto& [id, d] : descriptors) {
    for (Tick t = std::max<Tick>(d->t_init, 0); t < std::min(d->t_end, horizon); ++t) {
      if (seen.count({t, id}) == 0) out.at(rules::kDense, t, id, "missing sample");
    }
  }

  // Service spans from descriptors: [first t_init, last t_end).
  struct Span {
    Tick first = 0;
    Tick end = 0;
  };
  std::map<ServiceId, Span> spans;
  for (const auto& [id, d] : descriptors) {
    auto [it, fresh] = spans.emplace(id.service, Span{d->t_init, d->t_end});
    if (!fresh) {
      it->second.first = std::min(it->second.first, d->t_init);
      it->second.end = std::max(it->second.end, d->t_end);
    }
  }

  std::map<ServiceId, std::vector<Tick>> arrivals, departures;
  std::set<std::tuple<Tick, int, ServiceId, VmId>> seen_events;
  std::set<VmId> scaled_out, scaled_in;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const TraceEvent& e = trace.events[i];
    const std::string where = std::string(to_string(e.kind)) + " of S" +
                              std::to_string(e.service) + " at t=" + std::to_string(e.t);
    if (!seen_events.emplace(e.t, static_cast<int>(e.kind), e.service,
                             e.vm().value_or(VmId{}))
             .second) {
      out.event(rules::kEvents, i, "duplicate event: " + where);
      continue;
    }
    if (e.t < 0 || e.t > horizon) {
      out.event(rules::kEvents, i, where + " outside [0, horizon]");
    }
    if (is_scale_event(e.kind) != e.slot.has_value()) {
      out.event(rules::kEvents, i, where + ": scale events need dc/vm, service events must not");
      continue;
    }
    const auto span = spans.find(e.service);
    if (span == spans.end()) {
      out.event(rules::kEvents, i, where + ": service has no VMs");
      continue;
    }
    switch (e.kind) {
      case EventKind::ServiceArrival: arrivals[e.service].push_back(e.t); break;
      case EventKind::ServiceDeparture: departures[e.service].push_back(e.t); break;
      case EventKind::VmScaleOut:
      case EventKind::VmScaleIn: {
        const VmId id = *e.vm();
        const auto d = descriptors.find(id);
        if (d == descriptors.end()) {
          out.event(rules::kEvents, i, where + ": unknown VM " + id.to_string());
          break;
        }
        const bool out_kind = e.kind == EventKind::VmScaleOut;
        const Tick expected = out_kind ? d->second->t_init : d->second->t_end;
        if (e.t != expected) {
          out.event(rules::kEvents, i,
                    where + ": VM lifetime " + (out_kind ? "starts" : "ends") +
                        " at " + std::to_string(expected));
        } else if (!(span->second.first < e.t && e.t < span->second.end)) {
          out.event(rules::kEvents, i, where + ": not strictly inside the service lifetime");
        }
        (out_kind ? scaled_out : scaled_in).insert(id);
        break;
      }
    }
  }

  for (const auto& [b, span] : spans) {
    const auto& arr = arrivals[b];
    const auto& dep = departures[b];
    const std::string name = "S" + std::to_string(b);
    if (arr.size() != 1) {
      out.global(rules::kEvents, name + " needs exactly one ServiceArrival, found " +
                                     std::to_string(arr.size()));
    } else if (arr.front() != span.first) {
      out.global(rules::kEvents, name + " arrives at " + std::to_string(arr.front()) +
                                     " but its first VM starts at " + std::to_string(span.first));
    }
    if (dep.size() > 1) {
      out.global(rules::kEvents, name + " has more than one ServiceDeparture");
    } else if (dep.size() == 1 && dep.front() != span.end) {
      out.global(rules::kEvents, name + " departs at " + std::to_string(dep.front()) +
                                     " but its last VM ends at " + std::to_string(span.end));
    } else if (dep.empty() && span.end != horizon) {
      out.global(rules::kEvents, name + " ends at " + std::to_string(span.end) +
                                     " before the horizon without a ServiceDeparture");
    }
    if (!arr.empty() && !dep.empty() && !(arr.front() < dep.front())) {
      out.global(rules::kEvents, name + " departs before it arrives");
    }
  }
  for (const auto& [id, d] : descriptors) {
    const auto span = spans.at(id.service);
    if (d->t_init > span.first && scaled_out.count(id) == 0) {
      out.at(rules::kEvents, d->t_init, id, "VM starts mid-service without VmScaleOut");
    }
    if (d->t_end < span.end && scaled_in.count(id) == 0) {
      out.at(rules::kEvents, d->t_end, id, "VM ends mid-service without VmScaleIn");
    }
  }
  (void)index;
}

}  // namespace detail

/// Checks structural rules, then conformance of the observed dynamics with
/// `declared` (the header's environment when absent). Never throws on bad
/// data; every finding becomes a report entry.
inline ValidationReport validate(const Trace& trace, ValidationMode mode,
                                 std::optional<EnvironmentId> declared = std::nullopt) {
  ValidationReport report;
  report.mode = mode;
  report.declared = declared.value_or(trace.header.environment);
  detail::ReportBuilder out(report);
  const detail::SampleIndex index(trace);
  detail::check_structure(trace, index, out);

  const Capabilities caps = capabilities(report.declared);
  if (!caps.vertical) {
    for (const auto& c : detail::spec_changes(index)) {
      out.at(rules::kNoVertical, c.t, c.vm, "request changed without vertical elasticity");
    }
  }
  if (!caps.horizontal) {
    for (const auto& c : detail::count_changes(index)) {
      out.at(rules::kNoHorizontal, c.t, c.vm,
             "VM count of S" + std::to_string(c.service) +
                 " changed without horizontal elasticity");
    }
  }
  const bool relax_server = mode == ValidationMode::Paper && caps.vertical;
  for (const auto& s : trace.samples) {
    if (!caps.server_overbooking && !relax_server && detail::server_gap(s)) {
      out.at(rules::kNoServerOb, s.t, s.vm,
             "cpu/ram utilization differs from request without server overbooking");
    }
    if (!caps.network_overbooking && detail::net_gap(s)) {
      out.at(rules::kNoNetOb, s.t, s.vm,
             "net utilization differs from request without network overbooking");
    }
    if (mode == ValidationMode::Strict) {
      const bool server_over =
          caps.server_overbooking && (s.util.cpu > s.spec.cpu || s.util.ram > s.spec.ram);
      const bool net_over = caps.network_overbooking && s.util.net > s.spec.net;
      if (server_over || net_over) {
        out.at(rules::kObBound, s.t, s.vm, "utilization exceeds request");
      }
    }
  }
  return report;
}

/// Infers the minimal environment consistent with the observed dynamics.
///
/// vertical: some VM's request differs between consecutive ticks.
/// horizontal: some service's VM count changes strictly inside its span, or,
///   with `arrival_as_horizontal`, a service arrives at t > 0 while another
///   is alive.
/// server / network overbooking: some sample has U != V in that class.
///
/// Throws ValidationError when the trace is structurally invalid.
inline EnvironmentId classify(const Trace& trace, bool arrival_as_horizontal = false) {
  ValidationReport structural;
  detail::ReportBuilder out(structural);
  const detail::SampleIndex index(trace);
  detail::check_structure(trace, index, out);
  if (!structural.ok()) {
    const auto& v = structural.violations.front();
    throw ValidationError("cannot classify a structurally invalid trace (" +
                          std::to_string(structural.violations.size()) +
                          " findings, first: " + v.rule + ": " + v.message + ")");
  }
  Capabilities caps;
  caps.vertical = !detail::spec_changes(index).empty();
  caps.horizontal = !detail::count_changes(index).empty() ||
                    (arrival_as_horizontal && !detail::overlapping_arrivals(index).empty());
  caps.server_overbooking = std::any_of(trace.samples.begin(), trace.samples.end(),
                                        detail::server_gap);
  caps.network_overbooking = std::any_of(trace.samples.begin(), trace.samples.end(),
                                         detail::net_gap);
  return env_from_capabilities(caps);
}

// --- statistics -------------------------------------------------------------

struct ResourceTotals {
  Decimal cpu;
  Decimal ram;
  Decimal net;

  friend bool operator==(const ResourceTotals&, const ResourceTotals&) = default;
};

struct StatsPoint {
  DatacenterId dc = 0;
  Tick t = 0;
  std::size_t vm_count = 0;
  ResourceTotals requested;
  ResourceTotals utilized;
  // utilized / requested per resource, absent when requested == 0.
  std::optional<Decimal> ratio_cpu;
  std::optional<Decimal> ratio_ram;
  std::optional<Decimal> ratio_net;

  friend bool operator==(const StatsPoint&, const StatsPoint&) = default;
};

struct StatsSeries {
  int precision = 4;
  Tick horizon = 0;
  std::vector<StatsPoint> points;  // ordered by (dc, t)

  const StatsPoint* find(DatacenterId dc, Tick t) const {
    auto it = std::lower_bound(points.begin(), points.end(), std::make_pair(dc, t),
                               [](const StatsPoint& p, const std::pair<DatacenterId, Tick>& k) {
                                 return std::make_pair(p.dc, p.t) < k;
                               });
    return (it != points.end() && it->dc == dc && it->t == t) ? &*it : nullptr;
  }
};

/// Per-(datacenter, tick) request and utilization totals. Datacenters
/// 1..num_datacenters always appear (empty ones with zero totals).
inline StatsSeries stats(const Trace& trace, int precision = 4) {
  if (precision < 0 || precision > Decimal::kMaxDecimals) {
    throw ValidationError("stats precision must lie in 0..6");
  }
  StatsSeries series;
  series.precision = precision;
  series.horizon = trace.header.horizon;
  std::map<std::pair<DatacenterId, Tick>, StatsPoint> acc;
  for (DatacenterId c = 1; c <= trace.header.num_datacenters; ++c) {
    for (Tick t = 0; t < trace.header.horizon; ++t) {
      StatsPoint& p = acc[{c, t}];
      p.dc = c;
      p.t = t;
    }
  }
  for (const auto& s : trace.samples) {
    StatsPoint& p = acc[{s.vm.dc, s.t}];
    p.dc = s.vm.dc;
    p.t = s.t;
    ++p.vm_count;
    p.requested.cpu += s.spec.cpu;
    p.requested.ram += s.spec.ram;
    p.requested.net += s.spec.net;
    p.utilized.cpu += s.util.cpu;
    p.utilized.ram += s.util.ram;
    p.utilized.net += s.util.net;
  }
  auto ratio = [precision](Decimal used, Decimal requested) -> std::optional<Decimal> {
    if (requested == Decimal(0)) return std::nullopt;
    return Decimal::ratio(used, requested, precision);
  };
  for (auto& [key, p] : acc) {
    p.ratio_cpu = ratio(p.utilized.cpu, p.requested.cpu);
    p.ratio_ram = ratio(p.utilized.ram, p.requested.ram);
    p.ratio_net = ratio(p.utilized.net, p.requested.net);
    series.points.push_back(p);
  }
  return series;
}

// --- rendering --------------------------------------------------------------

inline std::string report_to_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["mode"] = std::string(to_string(report.mode));
  doc["declared"] = report.declared.to_string();
  doc["ok"] = report.ok();
  doc["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json item;
    item["rule"] = v.rule;
    if (v.t) item["t"] = *v.t;
    if (v.vm) {
      item["service"] = v.vm->service;
      item["dc"] = v.vm->dc;
      item["vm"] = v.vm->vm;
    }
    if (v.event_index) item["event_index"] = *v.event_index;
    item["message"] = v.message;
    doc["violations"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

inline std::string report_to_table(const ValidationReport& report) {
  std::ostringstream os;
  os << "mode: " << to_string(report.mode) << "  declared: " << report.declared
     << "  violations: " << report.violations.size() << "  "
     << (report.ok() ? "OK" : "FAILED") << "\n";
  if (report.ok()) return os.str();
  os << std::left << std::setw(22) << "rule" << std::setw(8) << "t" << std::setw(16)
     << "vm (b,c,j)" << "message\n";
  for (const auto& v : report.violations) {
    std::string where = "-";
    if (v.vm) {
      where = "(" + std::to_string(v.vm->service) + "," + std::to_string(v.vm->dc) + "," +
              std::to_string(v.vm->vm) + ")";
    } else if (v.event_index) {
      where = "event#" + std::to_string(*v.event_index);
    }
    os << std::left << std::setw(22) << v.rule << std::setw(8)
       << (v.t ? std::to_string(*v.t) : std::string("-")) << std::setw(16) << where
       << v.message << "\n";
  }
  return os.str();
}

// Hand-written so decimals keep their exact text form.
inline std::string stats_to_json(const StatsSeries& series) {
  auto totals = [](const ResourceTotals& r) {
    return "{\"cpu\":" + r.cpu.to_string() + ",\"ram\":" + r.ram.to_string() +
           ",\"net\":" + r.net.to_string() + "}";
  };
  std::string out = "{\"precision\":" + std::to_string(series.precision) +
                    ",\"horizon\":" + std::to_string(series.horizon) + ",\"series\":[";
  bool first = true;
  for (const auto& p : series.points) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "{\"dc\":" + std::to_string(p.dc) + ",\"t\":" + std::to_string(p.t) +
           ",\"vm_count\":" + std::to_string(p.vm_count) +
           ",\"requested\":" + totals(p.requested) + ",\"utilized\":" + totals(p.utilized) +
           ",\"ratio\":{";
    std::string ratios;
    auto add = [&](const char* key, const std::optional<Decimal>& r) {
      if (!r) return;
      if (!ratios.empty()) ratios += ",";
      ratios += std::string("\"") + key + "\":" + r->to_string();
    };
    add("cpu", p.ratio_cpu);
    add("ram", p.ratio_ram);
    add("net", p.ratio_net);
    out += ratios + "}}";
  }
  out += "\n]}\n";
  return out;
}

inline std::string stats_to_table(const StatsSeries& series) {
  std::ostringstream os;
  auto ratio = [](const std::optional<Decimal>& r) { return r ? r->to_string() : std::string("-"); };
  os << std::right << std::setw(4) << "dc" << std::setw(6) << "t" << std::setw(5) << "vms"
     << std::setw(10) << "Vcpu" << std::setw(10) << "Vram" << std::setw(10) << "Vnet"
     << std::setw(10) << "Ucpu" << std::setw(10) << "Uram" << std::setw(10) << "Unet"
     << std::setw(9) << "r_cpu" << std::setw(9) << "r_ram" << std::setw(9) << "r_net" << "\n";
  for (const auto& p : series.points) {
    os << std::setw(4) << p.dc << std::setw(6) << p.t << std::setw(5) << p.vm_count
       << std::setw(10) << p.requested.cpu << std::setw(10) << p.requested.ram
       << std::setw(10) << p.requested.net << std::setw(10) << p.utilized.cpu
       << std::setw(10) << p.utilized.ram << std::setw(10) << p.utilized.net
       << std::setw(9) << ratio(p.ratio_cpu) << std::setw(9) << ratio(p.ratio_ram)
       << std::setw(9) << ratio(p.ratio_net) << "\n";
  }
  return os.str();
}

}  // namespace vmpt
