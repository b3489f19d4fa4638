#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace traceq {

/// Exact rational number with normalized sign and gcd-reduced terms.
/// Supports fall in [0,1] and thresholds are tiny, so 64-bit terms with
/// 128-bit cross multiplication are plenty.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
  }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  /// Renders "p/q", or just "p" when q == 1.
  std::string str() const;

  /// Accepts "3/4", "0.75", "1", ".5". Exact; never rounds.
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_;
  std::int64_t den_;  // > 0
};

/// Rational in (0, 1].
class SupportThreshold {
 public:
  explicit SupportThreshold(Rational value) : value_(value) {
    if (value <= Rational(0) || Rational(1) < value)
      throw std::invalid_argument("support threshold must lie in (0, 1]");
  }
  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

}  // namespace traceq
