#pragma once

#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "vmpt/errors.hpp"

namespace vmpt {

/// One cell of the 4x4 dynamic-environment lattice.
///
/// The elasticity coordinate encodes {none, horizontal, vertical, both} and
/// the overbooking coordinate {none, server, network, both}; bit 0 of each
/// coordinate is the first kind, bit 1 the second. Construct through
/// env_from_coords() to get range checking.
class EnvironmentId {
 public:
  constexpr EnvironmentId() = default;

  constexpr int elasticity() const { return elasticity_; }
  constexpr int overbooking() const { return overbooking_; }

  // Rendered exactly as "(e,o)".
  std::string to_string() const {
    return "(" + std::to_string(elasticity_) + "," +
           std::to_string(overbooking_) + ")";
  }

  friend constexpr auto operator<=>(EnvironmentId, EnvironmentId) = default;
  friend constexpr bool operator==(EnvironmentId, EnvironmentId) = default;

  friend std::ostream& operator<<(std::ostream& os, EnvironmentId env) {
    return os << env.to_string();
  }

 private:
  constexpr EnvironmentId(int e, int o) : elasticity_(e), overbooking_(o) {}
  friend EnvironmentId env_from_coords(int, int);
  friend constexpr std::array<EnvironmentId, 16> enumerate_environments();

  std::uint8_t elasticity_ = 0;
  std::uint8_t overbooking_ = 0;
};

struct Capabilities {
  bool horizontal = false;
  bool vertical = false;
  bool server_overbooking = false;
  bool network_overbooking = false;

  friend constexpr bool operator==(const Capabilities&,
                                   const Capabilities&) = default;
};

inline EnvironmentId env_from_coords(int elasticity, int overbooking) {
  if (elasticity < 0 || elasticity > 3) {
    throw ValidationError("elasticity out of range: " +
                          std::to_string(elasticity));
  }
  if (overbooking < 0 || overbooking > 3) {
    throw ValidationError("overbooking out of range: " +
                          std::to_string(overbooking));
  }
  return EnvironmentId(elasticity, overbooking);
}

constexpr Capabilities capabilities(EnvironmentId env) {
  return Capabilities{
      .horizontal = (env.elasticity() & 1) != 0,
      .vertical = (env.elasticity() & 2) != 0,
      .server_overbooking = (env.overbooking() & 1) != 0,
      .network_overbooking = (env.overbooking() & 2) != 0,
  };
}

inline EnvironmentId env_from_capabilities(const Capabilities& caps) {
  return env_from_coords((caps.horizontal ? 1 : 0) | (caps.vertical ? 2 : 0),
                         (caps.server_overbooking ? 1 : 0) |
                             (caps.network_overbooking ? 2 : 0));
}

// Lexicographic: (0,0), (0,1), ..., (3,3).
constexpr std::array<EnvironmentId, 16> enumerate_environments() {
  std::array<EnvironmentId, 16> out{};
  for (int e = 0; e < 4; ++e) {
    for (int o = 0; o < 4; ++o) out[e * 4 + o] = EnvironmentId(e, o);
  }
  return out;
}

inline std::string_view elasticity_label(EnvironmentId env) {
  static constexpr std::array<std::string_view, 4> kLabels = {
      "Not Considered", "Horizontal", "Vertical", "Horizontal and Vertical"};
  return kLabels[env.elasticity()];
}

inline std::string_view overbooking_label(EnvironmentId env) {
  static constexpr std::array<std::string_view, 4> kLabels = {
      "Not Considered", "Server", "Network", "Server and Network"};
  return kLabels[env.overbooking()];
}

// "(e,o) <elasticity> / <overbooking>"
inline std::string describe(EnvironmentId env) {
  std::string out = env.to_string();
  out += ' ';
  out += elasticity_label(env);
  out += " / ";
  out += overbooking_label(env);
  return out;
}

// Accepts "E,O" with optional surrounding parentheses and blanks.
inline EnvironmentId parse_environment(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    s = trim(s.substr(1, s.size() - 2));
  }
  const auto comma = s.find(',');
  auto digit = [&](std::string_view part) -> std::optional<int> {
    part = trim(part);
    int value = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || p != part.data() + part.size()) {
      return std::nullopt;
    }
    return value;
  };
  if (comma == std::string_view::npos) {
    throw ValidationError("bad environment '" + std::string(text) +
                          "', expected E,O");
  }
  const auto e = digit(s.substr(0, comma));
  const auto o = digit(s.substr(comma + 1));
  if (!e || !o) {
    throw ValidationError("bad environment '" + std::string(text) +
                          "', expected E,O");
  }
  return env_from_coords(*e, *o);
}

}  // namespace vmpt
