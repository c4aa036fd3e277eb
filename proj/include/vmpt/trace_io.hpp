#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
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

inline constexpr std::string_view kTraceExtension = ".vmpt.jsonl";

// Line layouts, fixed key order:
//   {"type":"header","format_version":1,"environment":"(e,o)","horizon":T,
//    "num_datacenters":K,"s":S[,"seed":N][,"config_digest":"hex"]}
//   {"type":"event","t":T,"kind":"VmScaleOut","service":B[,"dc":C,"vm":J]}
//   {"type":"sample","t":T,"service":B,"dc":C,"vm":J,"vcpu":..,"vram":..,
//    "vnet":..,"ucpu":..,"uram":..,"unet":..,"revenue":..,"sla":N}

namespace detail {

inline std::string header_line(const TraceHeader& h) {
  std::string line = "{\"type\":\"header\",\"format_version\":" +
                     std::to_string(h.format_version) + ",\"environment\":\"" +
                     h.environment.to_string() +
                     "\",\"horizon\":" + std::to_string(h.horizon) +
                     ",\"num_datacenters\":" + std::to_string(h.num_datacenters) +
                     ",\"s\":" + std::to_string(h.sla_levels);
  if (h.seed) line += ",\"seed\":" + std::to_string(*h.seed);
  if (h.config_digest) {
    line += ",\"config_digest\":" + nlohmann::json(*h.config_digest).dump();
  }
  line += "}\n";
  return line;
}

inline std::string event_line(const TraceEvent& e) {
  std::string line = "{\"type\":\"event\",\"t\":" + std::to_string(e.t) +
                     ",\"kind\":\"" + std::string(to_string(e.kind)) +
                     "\",\"service\":" + std::to_string(e.service);
  if (e.slot) {
    line += ",\"dc\":" + std::to_string(e.slot->dc) +
            ",\"vm\":" + std::to_string(e.slot->vm);
  }
  line += "}\n";
  return line;
}

inline std::string sample_line(const VmSample& s, const VmDescriptor& d) {
  std::string line;
  line.reserve(160);
  line += "{\"type\":\"sample\",\"t\":";
  line += std::to_string(s.t);
  line += ",\"service\":" + std::to_string(s.vm.service);
  line += ",\"dc\":" + std::to_string(s.vm.dc);
  line += ",\"vm\":" + std::to_string(s.vm.vm);
  line += ",\"vcpu\":" + s.spec.cpu.to_string();
  line += ",\"vram\":" + s.spec.ram.to_string();
  line += ",\"vnet\":" + s.spec.net.to_string();
  line += ",\"ucpu\":" + s.util.cpu.to_string();
  line += ",\"uram\":" + s.util.ram.to_string();
  line += ",\"unet\":" + s.util.net.to_string();
  line += ",\"revenue\":" + d.revenue.to_string();
  line += ",\"sla\":" + std::to_string(d.sla);
  line += "}\n";
  return line;
}

class CountingWriter {
 public:
  explicit CountingWriter(std::ostream& os) : os_(os) {}

  void put(const std::string& text) {
    os_.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os_) throw IoError(bytes_, "failed to write trace");
    bytes_ += text.size();
  }

  std::uint64_t bytes() const { return bytes_; }

 private:
  std::ostream& os_;
  std::uint64_t bytes_ = 0;
};

inline std::map<VmId, const VmDescriptor*> descriptor_index(const Trace& trace) {
  std::map<VmId, const VmDescriptor*> index;
  for (const auto& d : trace.descriptors) index.emplace(d.id, &d);
  return index;
}

}  // namespace detail

/// Writes the canonical JSON-Lines document for `trace` and returns the
/// number of bytes written. The same trace always produces the same bytes.
inline std::uint64_t write_trace(const Trace& trace, std::ostream& sink) {
  const Trace canonical = canonicalize(trace);
  const auto index = detail::descriptor_index(canonical);
  detail::CountingWriter out(sink);
  out.put(detail::header_line(canonical.header));
  for (const auto& e : canonical.events) out.put(detail::event_line(e));
  for (const auto& s : canonical.samples) {
    const auto it = index.find(s.vm);
    if (it == index.end()) {
      throw IntegrityError("sample references " + s.vm.to_string() +
                           " which has no descriptor");
    }
    out.put(detail::sample_line(s, *it->second));
  }
  sink.flush();
  if (!sink) throw IoError(out.bytes(), "failed to flush trace");
  return out.bytes();
}

inline std::string write_trace_string(const Trace& trace) {
  std::ostringstream os;
  write_trace(trace, os);
  return os.str();
}

namespace detail {

class LineReader {
 public:
  LineReader(const nlohmann::json& obj, std::size_t line)
      : obj_(obj), line_(line) {}

  const nlohmann::json* find(const char* key) const {
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::int64_t integer(const char* key) const {
    const auto* v = find(key);
    if (v == nullptr || !v->is_number_integer()) fail(key, "an integer");
    return v->get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const char* key) const {
    const auto* v = find(key);
    if (v == nullptr || !v->is_number_unsigned()) fail(key, "an unsigned integer");
    return v->get<std::uint64_t>();
  }

  std::uint32_t id(const char* key) const {
    const std::int64_t v = integer(key);
    if (v < 1 || v > 0xffffffffLL) fail(key, "a positive 32-bit id");
    return static_cast<std::uint32_t>(v);
  }

  std::string string(const char* key) const {
    const auto* v = find(key);
    if (v == nullptr || !v->is_string()) fail(key, "a string");
    return v->get<std::string>();
  }

  Decimal decimal(const char* key) const {
    const auto* v = find(key);
    if (v == nullptr || !v->is_number()) fail(key, "a number");
    Decimal d;
    try {
      if (v->is_number_integer()) {
        d = Decimal(v->get<std::int64_t>());
      } else {
        d = Decimal::from_double(v->get<double>());
      }
    } catch (const ValidationError& e) {
      throw ParseError(line_, std::string("field '") + key + "': " + e.what());
    }
    if (d.is_negative()) throw ParseError(line_, std::string("field '") + key + "' must be >= 0");
    return d;
  }

  [[noreturn]] void fail(const char* key, const char* expected) const {
    throw ParseError(line_, std::string("field '") + key + "' missing or not " +
                                expected);
  }

  std::size_t line() const { return line_; }

 private:
  const nlohmann::json& obj_;
  std::size_t line_;
};

struct RawSample {
  VmSample sample;
  Decimal revenue;
  int sla = 1;
  std::size_t line = 0;
};

inline TraceHeader parse_header(const LineReader& r) {
  const std::int64_t version = r.integer("format_version");
  if (version != kFormatVersion) {
    throw FormatError("unsupported format_version " + std::to_string(version) +
                      " (this reader handles " + std::to_string(kFormatVersion) +
                      ")");
  }
  TraceHeader h;
  h.format_version = static_cast<int>(version);
  try {
    h.environment = parse_environment(r.string("environment"));
  } catch (const ValidationError& e) {
    throw ParseError(r.line(), e.what());
  }
  h.horizon = r.integer("horizon");
  const std::int64_t dcs = r.integer("num_datacenters");
  const std::int64_t s = r.integer("s");
  if (h.horizon < 1) throw ParseError(r.line(), "horizon must be >= 1");
  if (dcs < 1 || dcs > 0xffffffffLL) throw ParseError(r.line(), "num_datacenters must be >= 1");
  if (s < 1 || s > 1'000'000) throw ParseError(r.line(), "s must be >= 1");
  h.num_datacenters = static_cast<std::uint32_t>(dcs);
  h.sla_levels = static_cast<int>(s);
  if (r.find("seed") != nullptr) h.seed = r.unsigned_integer("seed");
  if (r.find("config_digest") != nullptr) h.config_digest = r.string("config_digest");
  return h;
}

inline TraceEvent parse_event(const LineReader& r) {
  TraceEvent e;
  e.t = r.integer("t");
  const std::string kind = r.string("kind");
  const auto parsed = event_kind_from_string(kind);
  if (!parsed) throw ParseError(r.line(), "unknown event kind '" + kind + "'");
  e.kind = *parsed;
  e.service = r.id("service");
  const bool has_slot = r.find("dc") != nullptr || r.find("vm") != nullptr;
  if (is_scale_event(e.kind)) {
    e.slot = VmSlot{r.id("dc"), r.id("vm")};
  } else if (has_slot) {
    throw ParseError(r.line(), kind + " events carry no dc/vm");
  }
  return e;
}

inline RawSample parse_sample(const LineReader& r) {
  RawSample raw;
  raw.line = r.line();
  VmSample& s = raw.sample;
  s.t = r.integer("t");
  s.vm = VmId{r.id("service"), r.id("dc"), r.id("vm")};
  s.spec = ResourceSpec{r.decimal("vcpu"), r.decimal("vram"), r.decimal("vnet")};
  s.util = UtilizationSample{r.decimal("ucpu"), r.decimal("uram"), r.decimal("unet")};
  raw.revenue = r.decimal("revenue");
  const std::int64_t sla = r.integer("sla");
  if (sla < 1 || sla > 1'000'000) throw ParseError(r.line(), "sla must be >= 1");
  raw.sla = static_cast<int>(sla);
  return raw;
}

}  // namespace detail

/// Parses a trace document. Event and sample lines may come in any order;
/// the result is canonicalized. VM descriptors are rebuilt from the sample
/// runs: t_init/t_end from the first/last sampled tick, revenue and SLA from
/// the (necessarily identical) values on every sample of the VM.
inline Trace read_trace(std::istream& source) {
  Trace trace;
  bool have_header = false;
  std::vector<detail::RawSample> raws;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(source, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");
    const detail::LineReader r(obj, line_no);
    const std::string type = r.string("type");
    if (type == "header") {
      if (have_header) {
        throw FormatError("line " + std::to_string(line_no) + ": duplicate header");
      }
      trace.header = detail::parse_header(r);
      have_header = true;
      continue;
    }
    if (type != "event" && type != "sample") {
      throw FormatError("line " + std::to_string(line_no) + ": unknown type '" +
                        type + "'");
    }
    if (!have_header) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": missing header (must be the first line)");
    }
    if (type == "event") {
      trace.events.push_back(detail::parse_event(r));
    } else {
      raws.push_back(detail::parse_sample(r));
    }
  }
  if (source.bad()) throw IoError("failed to read trace");
  if (!have_header) throw FormatError("missing header");

  const Tick horizon = trace.header.horizon;
  std::map<VmId, std::vector<const detail::RawSample*>> by_vm;
  std::set<std::tuple<Tick, VmId>> seen;
  for (const auto& raw : raws) {
    const auto& s = raw.sample;
    if (!seen.emplace(s.t, s.vm).second) {
      throw IntegrityError("line " + std::to_string(raw.line) +
                           ": duplicate sample for " + s.vm.to_string() +
                           " at t=" + std::to_string(s.t));
    }
    if (s.t < 0 || s.t >= horizon) {
      throw IntegrityError("line " + std::to_string(raw.line) + ": sample tick " +
                           std::to_string(s.t) + " outside horizon");
    }
    by_vm[s.vm].push_back(&raw);
  }

  // Lifetime ends declared by events.
  std::map<ServiceId, Tick> departure;
  std::map<VmId, Tick> scale_in;
  for (const auto& e : trace.events) {
    if (e.kind == EventKind::ServiceDeparture) {
      auto [it, fresh] = departure.emplace(e.service, e.t);
      if (!fresh) it->second = std::min(it->second, e.t);
    } else if (e.kind == EventKind::VmScaleIn) {
      auto [it, fresh] = scale_in.emplace(*e.vm(), e.t);
      if (!fresh) it->second = std::min(it->second, e.t);
    }
  }

  for (auto& [id, run] : by_vm) {
    std::sort(run.begin(), run.end(), [](const auto* a, const auto* b) {
      return a->sample.t < b->sample.t;
    });
    const Tick first = run.front()->sample.t;
    const Tick last = run.back()->sample.t;
    if (last - first + 1 != static_cast<Tick>(run.size())) {
      throw IntegrityError("samples of " + id.to_string() + " are not contiguous");
    }
    for (const auto* raw : run) {
      if (raw->revenue != run.front()->revenue || raw->sla != run.front()->sla) {
        throw IntegrityError("line " + std::to_string(raw->line) +
                             ": revenue/sla differ across samples of " +
                             id.to_string());
      }
    }
    Tick end = horizon;
    if (auto it = departure.find(id.service); it != departure.end()) end = it->second;
    if (auto it = scale_in.find(id); it != scale_in.end()) end = std::min(end, it->second);
    if (last >= end) {
      throw IntegrityError("line " + std::to_string(run.back()->line) +
                           ": sample of " + id.to_string() + " at t=" +
                           std::to_string(last) +
                           " is at or after the VM's end tick " +
                           std::to_string(end));
    }
    trace.descriptors.push_back(
        VmDescriptor{id, run.front()->revenue, run.front()->sla, first, last + 1});
    for (const auto* raw : run) trace.samples.push_back(raw->sample);
  }
  return canonicalize(std::move(trace));
}

inline Trace read_trace_string(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_trace(is);
}

inline constexpr std::string_view kCsvHeader =
    "t,service,dc,vm,vcpu,vram,vnet,ucpu,uram,unet,revenue,sla";

/// Samples-only CSV export. Lossy: events and the header are dropped.
inline std::uint64_t write_csv(const Trace& trace, std::ostream& sink) {
  const Trace canonical = canonicalize(trace);
  const auto index = detail::descriptor_index(canonical);
  detail::CountingWriter out(sink);
  out.put(std::string(kCsvHeader) + "\n");
  for (const auto& s : canonical.samples) {
    const auto it = index.find(s.vm);
    if (it == index.end()) {
      throw IntegrityError("sample references " + s.vm.to_string() +
                           " which has no descriptor");
    }
    const VmDescriptor& d = *it->second;
    out.put(std::to_string(s.t) + "," + std::to_string(s.vm.service) + "," +
            std::to_string(s.vm.dc) + "," + std::to_string(s.vm.vm) + "," +
            s.spec.cpu.to_string() + "," + s.spec.ram.to_string() + "," +
            s.spec.net.to_string() + "," + s.util.cpu.to_string() + "," +
            s.util.ram.to_string() + "," + s.util.net.to_string() + "," +
            d.revenue.to_string() + "," + std::to_string(d.sla) + "\n");
  }
  sink.flush();
  if (!sink) throw IoError(out.bytes(), "failed to flush csv");
  return out.bytes();
}

}  // namespace vmpt
