#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <type_traits>

#include <nlohmann/json.hpp>

#include "vmpt/decimal.hpp"
#include "vmpt/environment.hpp"
#include "vmpt/errors.hpp"
#include "vmpt/model.hpp"

namespace vmpt {

struct IntRange {
  std::int64_t min = 0;
  std::int64_t max = 0;

  friend bool operator==(const IntRange&, const IntRange&) = default;
  bool contains(std::int64_t v) const { return min <= v && v <= max; }
};

struct ArrivalModel {
  double rate = 0.1;  // expected new services per tick
  bool force_initial_arrival = true;
  bool burst = false;  // Poisson count per tick instead of at most one
  friend bool operator==(const ArrivalModel&, const ArrivalModel&) = default;
};

struct ServiceShape {
  IntRange vms_per_dc{1, 2};
  IntRange lifetime{5, 30};
  friend bool operator==(const ServiceShape&, const ServiceShape&) = default;
};

struct Sizing {
  IntRange cpu{1, 16};
  IntRange ram{1, 32};
  IntRange net{10, 1000};
  IntRange revenue{0, 100};
  IntRange sla{1, 3};
  int sla_levels = 3;
  friend bool operator==(const Sizing&, const Sizing&) = default;
};

struct VerticalPolicy {
  double step_probability = 0.2;
  // Relative step magnitude; the sign is drawn separately.
  double step_min = 0.10;
  double step_max = 0.40;
  bool vary_net = false;
  std::int64_t floor = 1;
  int decimals = 0;
  friend bool operator==(const VerticalPolicy&, const VerticalPolicy&) = default;
};

struct HorizontalPolicy {
  double step_probability = 0.1;
  std::int64_t min_vms = 1;  // per (service, datacenter)
  std::int64_t max_vms = 4;
  friend bool operator==(const HorizontalPolicy&,
                         const HorizontalPolicy&) = default;
};

struct UtilizationPolicy {
  IntRange cpu_step{-2, 2};
  IntRange ram_step{-4, 4};
  IntRange net_step{-50, 50};
  bool allow_exceed_request = false;
  friend bool operator==(const UtilizationPolicy&,
                         const UtilizationPolicy&) = default;
};

struct GeneratorConfig {
  EnvironmentId environment;
  Tick horizon = 50;
  std::uint32_t num_datacenters = 2;
  std::uint64_t seed = 0;
  ArrivalModel arrival;
  ServiceShape service_shape;
  Sizing sizing;
  VerticalPolicy vertical_policy;
  HorizontalPolicy horizontal_policy;
  UtilizationPolicy utilization_policy;
  bool guarantee_dynamics = false;

  friend bool operator==(const GeneratorConfig&,
                         const GeneratorConfig&) = default;
};

namespace detail {

inline void check_range(const IntRange& r, const char* name) {
  if (r.min > r.max) {
    throw ConfigError(std::string(name) + ": min " + std::to_string(r.min) +
                      " > max " + std::to_string(r.max));
  }
}

inline void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace detail

// Throws ConfigError on the first unusable knob.
inline void validate_config(const GeneratorConfig& c) {
  using detail::check_probability;
  using detail::check_range;
  if (c.horizon < 1) throw ConfigError("horizon must be >= 1");
  if (c.num_datacenters < 1) throw ConfigError("num_datacenters must be >= 1");
  if (!(c.arrival.rate >= 0.0) || c.arrival.rate > 1e6) {
    throw ConfigError("arrival.rate must be a non-negative number");
  }
  check_range(c.service_shape.vms_per_dc, "service_shape.vms_per_dc");
  if (c.service_shape.vms_per_dc.min < 1) {
    throw ConfigError("service_shape.vms_per_dc.min must be >= 1");
  }
  check_range(c.service_shape.lifetime, "service_shape.lifetime");
  if (c.service_shape.lifetime.min < 1) {
    throw ConfigError("service_shape.lifetime.min must be >= 1");
  }
  const Sizing& s = c.sizing;
  check_range(s.cpu, "sizing.cpu");
  check_range(s.ram, "sizing.ram");
  check_range(s.net, "sizing.net");
  check_range(s.revenue, "sizing.revenue");
  check_range(s.sla, "sizing.sla");
  if (s.cpu.min < 0 || s.ram.min < 0 || s.net.min < 0 || s.revenue.min < 0) {
    throw ConfigError("sizing ranges must be non-negative");
  }
  if (s.sla_levels < 1) throw ConfigError("sizing.sla_levels must be >= 1");
  if (s.sla.min < 1 || s.sla.max > s.sla_levels) {
    throw ConfigError("sizing.sla must lie within 1..sla_levels");
  }
  const VerticalPolicy& v = c.vertical_policy;
  check_probability(v.step_probability, "vertical_policy.step_probability");
  if (!(v.step_min >= 0.0 && v.step_min <= v.step_max && v.step_max <= 1.0)) {
    throw ConfigError(
        "vertical_policy step range must satisfy 0 <= step_min <= step_max <= 1");
  }
  if (v.floor < 0) throw ConfigError("vertical_policy.floor must be >= 0");
  if (v.decimals < 0 || v.decimals > Decimal::kMaxDecimals) {
    throw ConfigError("vertical_policy.decimals must lie in 0..6");
  }
  const HorizontalPolicy& h = c.horizontal_policy;
  check_probability(h.step_probability, "horizontal_policy.step_probability");
  if (h.min_vms < 1 || h.min_vms > h.max_vms) {
    throw ConfigError("horizontal_policy needs 1 <= min_vms <= max_vms");
  }
  const UtilizationPolicy& u = c.utilization_policy;
  check_range(u.cpu_step, "utilization_policy.cpu_step");
  check_range(u.ram_step, "utilization_policy.ram_step");
  check_range(u.net_step, "utilization_policy.net_step");
}

// --- JSON binding -----------------------------------------------------------

inline void to_json(nlohmann::json& j, const IntRange& r) {
  j = nlohmann::json{{"min", r.min}, {"max", r.max}};
}

inline nlohmann::json config_to_json(const GeneratorConfig& c) {
  using nlohmann::json;
  return json{
      {"environment", c.environment.to_string()},
      {"horizon", c.horizon},
      {"num_datacenters", c.num_datacenters},
      {"seed", c.seed},
      {"arrival",
       {{"rate", c.arrival.rate},
        {"force_initial_arrival", c.arrival.force_initial_arrival},
        {"burst", c.arrival.burst}}},
      {"service_shape",
       {{"vms_per_dc", c.service_shape.vms_per_dc},
        {"lifetime", c.service_shape.lifetime}}},
      {"sizing",
       {{"cpu", c.sizing.cpu},
        {"ram", c.sizing.ram},
        {"net", c.sizing.net},
        {"revenue", c.sizing.revenue},
        {"sla", c.sizing.sla},
        {"sla_levels", c.sizing.sla_levels}}},
      {"vertical_policy",
       {{"step_probability", c.vertical_policy.step_probability},
        {"step_min", c.vertical_policy.step_min},
        {"step_max", c.vertical_policy.step_max},
        {"vary_net", c.vertical_policy.vary_net},
        {"floor", c.vertical_policy.floor},
        {"decimals", c.vertical_policy.decimals}}},
      {"horizontal_policy",
       {{"step_probability", c.horizontal_policy.step_probability},
        {"min_vms", c.horizontal_policy.min_vms},
        {"max_vms", c.horizontal_policy.max_vms}}},
      {"utilization_policy",
       {{"cpu_step", c.utilization_policy.cpu_step},
        {"ram_step", c.utilization_policy.ram_step},
        {"net_step", c.utilization_policy.net_step},
        {"allow_exceed_request", c.utilization_policy.allow_exceed_request}}},
      {"guarantee_dynamics", c.guarantee_dynamics},
  };
}

namespace detail {

// Reads the keys of `obj` into fields through `visit(key, value)`; any key
// the visitor does not claim is rejected so typos surface as errors.
template <typename Visit>
void read_object(const nlohmann::json& obj, std::string_view where,
                 Visit&& visit) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + " must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!visit(key, value)) {
      throw ConfigError("unknown config field '" + std::string(where) + "." +
                        key + "'");
    }
  }
}

template <typename T>
T read_value(const nlohmann::json& v, std::string_view where) {
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError("");
    }
    return v.get<T>();
  } catch (const std::exception&) {
    throw ConfigError("config field '" + std::string(where) +
                      "' has the wrong type");
  }
}

inline IntRange read_range(const nlohmann::json& v, const std::string& where) {
  IntRange r;
  bool has_min = false, has_max = false;
  read_object(v, where, [&](const std::string& k, const nlohmann::json& x) {
    if (k == "min") {
      r.min = read_value<std::int64_t>(x, where + ".min");
      has_min = true;
    } else if (k == "max") {
      r.max = read_value<std::int64_t>(x, where + ".max");
      has_max = true;
    } else {
      return false;
    }
    return true;
  });
  if (!has_min || !has_max) {
    throw ConfigError(where + " needs both min and max");
  }
  return r;
}

}  // namespace detail

/// Overlays the fields present in `doc` onto `base`. Absent fields keep
/// their value from `base`; unknown fields are a ConfigError. The result is
/// not validated; call validate_config().
inline GeneratorConfig config_from_json(const nlohmann::json& doc,
                                        GeneratorConfig base = {}) {
  using detail::read_object;
  using detail::read_range;
  using detail::read_value;
  using nlohmann::json;
  GeneratorConfig c = std::move(base);
  read_object(doc, "config", [&](const std::string& k, const json& v) {
    if (k == "environment") {
      if (v.is_string()) {
        try {
          c.environment = parse_environment(v.get<std::string>());
        } catch (const ValidationError& e) {
          throw ConfigError(e.what());
        }
      } else if (v.is_array() && v.size() == 2) {
        try {
          c.environment = env_from_coords(read_value<int>(v[0], "environment"),
                                          read_value<int>(v[1], "environment"));
        } catch (const ValidationError& e) {
          throw ConfigError(e.what());
        }
      } else {
        throw ConfigError("environment must be \"(e,o)\" or [e,o]");
      }
    } else if (k == "horizon") {
      c.horizon = read_value<Tick>(v, k);
    } else if (k == "num_datacenters") {
      const auto n = read_value<std::int64_t>(v, k);
      if (n < 1 || n > 1'000'000) throw ConfigError("num_datacenters out of range");
      c.num_datacenters = static_cast<std::uint32_t>(n);
    } else if (k == "seed") {
      if (!v.is_number_unsigned()) {
        throw ConfigError("seed must be an unsigned 64-bit integer");
      }
      c.seed = v.get<std::uint64_t>();
    } else if (k == "arrival") {
      read_object(v, "arrival", [&](const std::string& a, const json& x) {
        if (a == "rate") c.arrival.rate = read_value<double>(x, "arrival.rate");
        else if (a == "force_initial_arrival")
          c.arrival.force_initial_arrival = read_value<bool>(x, "arrival." + a);
        else if (a == "burst") c.arrival.burst = read_value<bool>(x, "arrival.burst");
        else return false;
        return true;
      });
    } else if (k == "service_shape") {
      read_object(v, "service_shape", [&](const std::string& a, const json& x) {
        if (a == "vms_per_dc") c.service_shape.vms_per_dc = read_range(x, "service_shape." + a);
        else if (a == "lifetime") c.service_shape.lifetime = read_range(x, "service_shape." + a);
        else return false;
        return true;
      });
    } else if (k == "sizing") {
      read_object(v, "sizing", [&](const std::string& a, const json& x) {
        if (a == "cpu") c.sizing.cpu = read_range(x, "sizing.cpu");
        else if (a == "ram") c.sizing.ram = read_range(x, "sizing.ram");
        else if (a == "net") c.sizing.net = read_range(x, "sizing.net");
        else if (a == "revenue") c.sizing.revenue = read_range(x, "sizing.revenue");
        else if (a == "sla") c.sizing.sla = read_range(x, "sizing.sla");
        else if (a == "sla_levels") c.sizing.sla_levels = read_value<int>(x, "sizing.sla_levels");
        else return false;
        return true;
      });
    } else if (k == "vertical_policy") {
      auto& p = c.vertical_policy;
      read_object(v, "vertical_policy", [&](const std::string& a, const json& x) {
        const std::string where = "vertical_policy." + a;
        if (a == "step_probability") p.step_probability = read_value<double>(x, where);
        else if (a == "step_min") p.step_min = read_value<double>(x, where);
        else if (a == "step_max") p.step_max = read_value<double>(x, where);
        else if (a == "vary_net") p.vary_net = read_value<bool>(x, where);
        else if (a == "floor") p.floor = read_value<std::int64_t>(x, where);
        else if (a == "decimals") p.decimals = read_value<int>(x, where);
        else return false;
        return true;
      });
    } else if (k == "horizontal_policy") {
      auto& p = c.horizontal_policy;
      read_object(v, "horizontal_policy", [&](const std::string& a, const json& x) {
        const std::string where = "horizontal_policy." + a;
        if (a == "step_probability") p.step_probability = read_value<double>(x, where);
        else if (a == "min_vms") p.min_vms = read_value<std::int64_t>(x, where);
        else if (a == "max_vms") p.max_vms = read_value<std::int64_t>(x, where);
        else return false;
        return true;
      });
    } else if (k == "utilization_policy") {
      auto& p = c.utilization_policy;
      read_object(v, "utilization_policy", [&](const std::string& a, const json& x) {
        const std::string where = "utilization_policy." + a;
        if (a == "cpu_step") p.cpu_step = read_range(x, where);
        else if (a == "ram_step") p.ram_step = read_range(x, where);
        else if (a == "net_step") p.net_step = read_range(x, where);
        else if (a == "allow_exceed_request") p.allow_exceed_request = read_value<bool>(x, where);
        else return false;
        return true;
      });
    } else if (k == "guarantee_dynamics") {
      c.guarantee_dynamics = read_value<bool>(v, k);
    } else {
      return false;
    }
    return true;
  });
  return c;
}

inline GeneratorConfig parse_config(std::string_view text,
                                    GeneratorConfig base = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(doc, std::move(base));
}

// FNV-1a 64 over the compact JSON form (keys sorted), as 16 hex digits.
inline std::string config_digest(const GeneratorConfig& c) {
  const std::string canonical = config_to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vmpt
