#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

#include "logalg/rational.hpp"

namespace logalg {

/// Non-negative real with a 64-bit binary exponent: value = mantissa * 2^exponent,
/// mantissa in [0.5, 1) or exactly 0. Carries masses like 2^-10000 and their
/// reciprocals through products without leaving double precision.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  explicit ExtendedReal(double value) {
    int e = 0;
    mantissa_ = std::frexp(value, &e);
    exponent_ = mantissa_ == 0.0 ? 0 : e;
  }

  static ExtendedReal fromParts(double mantissa, std::int64_t exponent) {
    ExtendedReal r(mantissa);
    if (r.mantissa_ != 0.0) r.exponent_ += exponent;
    return r;
  }

  /// exp(logValue), split so the fractional part stays well conditioned.
  static ExtendedReal fromLog(double logValue) {
    const double log2Value = logValue / std::log(2.0);
    const double whole = std::floor(log2Value);
    return fromParts(std::exp2(log2Value - whole), static_cast<std::int64_t>(whole));
  }

  static ExtendedReal fromRational(const Rational& r);

  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool isZero() const { return mantissa_ == 0.0; }

  /// Nearest double (inf / 0 outside double range).
  double toDouble() const {
    if (isZero()) return 0.0;
    if (exponent_ > 2000) return HUGE_VAL;
    if (exponent_ < -2000) return 0.0;
    return std::ldexp(mantissa_, static_cast<int>(exponent_));
  }

  double log() const {
    return isZero() ? -HUGE_VAL : std::log(mantissa_) + static_cast<double>(exponent_) * std::log(2.0);
  }

  friend ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) {
    return fromParts(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }
  friend ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b) {
    return fromParts(a.mantissa_ / b.mantissa_, a.exponent_ - b.exponent_);
  }
  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.isZero()) return b;
    if (b.isZero()) return a;
    const ExtendedReal& big = a.exponent_ >= b.exponent_ ? a : b;
    const ExtendedReal& small = a.exponent_ >= b.exponent_ ? b : a;
    const std::int64_t gap = big.exponent_ - small.exponent_;
    if (gap > 1100) return big;
    return fromParts(big.mantissa_ + std::ldexp(small.mantissa_, -static_cast<int>(gap)), big.exponent_);
  }
  ExtendedReal& operator+=(const ExtendedReal& o) { return *this = *this + o; }
  ExtendedReal& operator*=(const ExtendedReal& o) { return *this = *this * o; }

  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.isZero() || b.isZero()) return a.mantissa_ <=> b.mantissa_;
    if (a.exponent_ != b.exponent_) return a.exponent_ <=> b.exponent_;
    return a.mantissa_ <=> b.mantissa_;
  }
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
  }

 private:
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

/// base^e by repeated squaring; relative error grows like log2(e) ulps.
ExtendedReal ipow(ExtendedReal base, std::uint64_t e);

}  // namespace logalg
