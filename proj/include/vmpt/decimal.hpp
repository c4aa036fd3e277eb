#pragma once

#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "vmpt/errors.hpp"

namespace vmpt {

// Fixed-point decimal with six fractional digits, stored as a count of
// micro-units. Every value it holds has an exact, shortest decimal text form,
// which is what makes serialized traces byte-reproducible.
class Decimal {
 public:
  static constexpr int kMaxDecimals = 6;
  static constexpr std::int64_t kScale = 1'000'000;

  constexpr Decimal() = default;
  constexpr Decimal(std::int64_t whole) : micros_(whole * kScale) {}  // NOLINT

  static constexpr Decimal from_micros(std::int64_t micros) {
    Decimal d;
    d.micros_ = micros;
    return d;
  }

  // One unit at the given number of fractional digits (0 -> 1, 2 -> 0.01).
  static constexpr Decimal unit(int decimals) {
    return from_micros(pow10(kMaxDecimals - decimals));
  }

  // Parses plain decimal text ("12", "-0.5", "3.250"). No exponents.
  static Decimal parse(std::string_view text) {
    if (text.empty()) throw ValidationError("empty decimal");
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-') {
      negative = true;
      pos = 1;
    }
    const std::size_t dot = text.find('.', pos);
    const std::string_view whole_part =
        text.substr(pos, dot == std::string_view::npos ? std::string_view::npos
                                                       : dot - pos);
    std::string_view frac_part;
    if (dot != std::string_view::npos) frac_part = text.substr(dot + 1);
    if (whole_part.empty() ||
        (dot != std::string_view::npos && frac_part.empty())) {
      throw ValidationError("malformed decimal '" + std::string(text) + "'");
    }
    if (frac_part.size() > static_cast<std::size_t>(kMaxDecimals)) {
      throw ValidationError("decimal '" + std::string(text) +
                            "' has more than 6 fractional digits");
    }
    std::int64_t whole = 0;
    auto [p, ec] = std::from_chars(whole_part.data(),
                                   whole_part.data() + whole_part.size(), whole);
    if (ec != std::errc() || p != whole_part.data() + whole_part.size() ||
        whole > std::numeric_limits<std::int64_t>::max() / kScale) {
      throw ValidationError("malformed decimal '" + std::string(text) + "'");
    }
    std::int64_t frac = 0;
    if (!frac_part.empty()) {
      auto [q, ec2] = std::from_chars(frac_part.data(),
                                      frac_part.data() + frac_part.size(), frac);
      if (ec2 != std::errc() || q != frac_part.data() + frac_part.size() ||
          frac_part[0] == '-' || frac_part[0] == '+') {
        throw ValidationError("malformed decimal '" + std::string(text) + "'");
      }
      frac *= pow10(kMaxDecimals - static_cast<int>(frac_part.size()));
    }
    const std::int64_t micros = whole * kScale + frac;
    return from_micros(negative ? -micros : micros);
  }

  // Converts a binary double that was parsed from decimal text with at most
  // six fractional digits. Rejects values that are not on the micro grid.
  static Decimal from_double(double value) {
    if (!std::isfinite(value) || std::fabs(value) > 9.0e12) {
      throw ValidationError("decimal out of range");
    }
    const double scaled = value * static_cast<double>(kScale);
    const double rounded = std::nearbyint(scaled);
    if (std::fabs(scaled - rounded) > 1e-3) {
      throw ValidationError("decimal has more than 6 fractional digits");
    }
    return from_micros(static_cast<std::int64_t>(rounded));
  }

  constexpr std::int64_t micros() const { return micros_; }
  constexpr bool is_integer() const { return micros_ % kScale == 0; }
  constexpr bool is_negative() const { return micros_ < 0; }

  // Shortest exact decimal text: integers carry no fractional part.
  std::string to_string() const {
    const std::uint64_t mag =
        micros_ < 0 ? static_cast<std::uint64_t>(-(micros_ + 1)) + 1
                    : static_cast<std::uint64_t>(micros_);
    std::string out = micros_ < 0 ? "-" : "";
    out += std::to_string(mag / kScale);
    std::uint64_t frac = mag % kScale;
    if (frac != 0) {
      std::string digits = std::to_string(frac);
      digits.insert(0, kMaxDecimals - digits.size(), '0');
      while (digits.back() == '0') digits.pop_back();
      out += '.';
      out += digits;
    }
    return out;
  }

  double to_double() const {
    return static_cast<double>(micros_) / static_cast<double>(kScale);
  }

  // Rounds to `decimals` fractional digits, ties to even.
  Decimal rounded(int decimals) const {
    const std::int64_t step = pow10(kMaxDecimals - decimals);
    return from_micros(div_round_half_even(micros_, step) * step);
  }

  // Multiplies by (10000 + basis_points) / 10000 and rounds to `decimals`
  // fractional digits (ties to even). Pure integer arithmetic.
  Decimal scaled_by_basis_points(std::int64_t basis_points, int decimals) const {
    const __int128 num =
        static_cast<__int128>(micros_) * (10'000 + basis_points);
    const std::int64_t step = pow10(kMaxDecimals - decimals);
    const __int128 den = static_cast<__int128>(10'000) * step;
    return from_micros(
        static_cast<std::int64_t>(div_round_half_even(num, den)) * step);
  }

  // a / b rounded half-even to `decimals` places; b must be non-zero.
  static Decimal ratio(Decimal a, Decimal b, int decimals) {
    const std::int64_t step = pow10(kMaxDecimals - decimals);
    const __int128 num = static_cast<__int128>(a.micros_) * kScale;
    const __int128 den = static_cast<__int128>(b.micros_) * step;
    return from_micros(
        static_cast<std::int64_t>(div_round_half_even(num, den)) * step);
  }

  friend constexpr Decimal operator+(Decimal a, Decimal b) {
    return from_micros(a.micros_ + b.micros_);
  }
  friend constexpr Decimal operator-(Decimal a, Decimal b) {
    return from_micros(a.micros_ - b.micros_);
  }
  friend constexpr Decimal operator*(Decimal a, std::int64_t k) {
    return from_micros(a.micros_ * k);
  }
  Decimal& operator+=(Decimal o) {
    micros_ += o.micros_;
    return *this;
  }
  Decimal& operator-=(Decimal o) {
    micros_ -= o.micros_;
    return *this;
  }

  friend constexpr auto operator<=>(Decimal, Decimal) = default;
  friend constexpr bool operator==(Decimal, Decimal) = default;

  friend std::ostream& operator<<(std::ostream& os, Decimal d) {
    return os << d.to_string();
  }

 private:
  static constexpr std::int64_t pow10(int n) {
    std::int64_t v = 1;
    for (int i = 0; i < n; ++i) v *= 10;
    return v;
  }

  template <typename Int>
  static constexpr Int div_round_half_even(Int num, Int den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    Int q = num / den;
    Int r = num % den;
    if (r < 0) {
      q -= 1;
      r += den;
    }
    // now num = q*den + r with 0 <= r < den
    const Int twice = r * 2;
    if (twice > den || (twice == den && (q % 2 != 0))) q += 1;
    return q;
  }

  std::int64_t micros_ = 0;
};

inline Decimal min(Decimal a, Decimal b) { return b < a ? b : a; }
inline Decimal max(Decimal a, Decimal b) { return a < b ? b : a; }

}  // namespace vmpt
