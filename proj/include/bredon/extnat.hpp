#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace bredon {

/// Natural numbers extended by a single countably-infinite value, printed "w".
/// Arithmetic follows cardinal rules: a + w = w, a * w = w for a >= 1, 0 * w = 0.
/// The order is total: 0 < 1 < 2 < ... < w.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr explicit ExtNat(std::uint64_t v) : value_(v) {}

  static constexpr ExtNat omega() {
    ExtNat e;
    e.omega_ = true;
    return e;
  }

  constexpr bool is_omega() const { return omega_; }
  constexpr bool is_zero() const { return !omega_ && value_ == 0; }

  /// Finite value, or nullopt for w.
  constexpr std::optional<std::uint64_t> finite() const {
    if (omega_) return std::nullopt;
    return value_;
  }

  /// Finite value; throws if the value is w.
  std::uint64_t finite_or_throw() const {
    if (omega_) throw std::logic_error("ExtNat: expected a finite value, got w");
    return value_;
  }

  friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.omega_ || b.omega_) return omega();
    std::uint64_t s = a.value_ + b.value_;
    if (s < a.value_) throw std::overflow_error("ExtNat: addition overflow");
    return ExtNat(s);
  }

  friend constexpr ExtNat operator*(ExtNat a, ExtNat b) {
    if (a.is_zero() || b.is_zero()) return ExtNat(0);
    if (a.omega_ || b.omega_) return omega();
    if (a.value_ > UINT64_MAX / b.value_)
      throw std::overflow_error("ExtNat: multiplication overflow");
    return ExtNat(a.value_ * b.value_);
  }

  ExtNat& operator+=(ExtNat o) { return *this = *this + o; }

  friend constexpr bool operator==(ExtNat a, ExtNat b) {
    return a.omega_ == b.omega_ && (a.omega_ || a.value_ == b.value_);
  }

  friend constexpr bool operator<(ExtNat a, ExtNat b) {
    if (a.omega_) return false;
    if (b.omega_) return true;
    return a.value_ < b.value_;
  }
  friend constexpr bool operator<=(ExtNat a, ExtNat b) { return a == b || a < b; }
  friend constexpr bool operator>(ExtNat a, ExtNat b) { return b < a; }
  friend constexpr bool operator>=(ExtNat a, ExtNat b) { return b <= a; }

  std::string to_string() const { return omega_ ? "w" : std::to_string(value_); }

  /// Inverse of to_string. Accepts "w" or an unsigned decimal literal.
  static std::optional<ExtNat> parse(const std::string& s) {
    if (s == "w") return omega();
    if (s.empty()) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      if (v > UINT64_MAX / 10) return std::nullopt;
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return ExtNat(v);
  }

 private:
  std::uint64_t value_ = 0;
  bool omega_ = false;
};

}  // namespace bredon
