#include "logalg/rational.hpp"

#include <cctype>
#include <cmath>

#include "logalg/errors.hpp"

namespace logalg {

namespace {

BigInt parseDigits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw InputError("malformed rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw InputError("malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (ch - '0');
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Signed integer or decimal with optional exponent, parsed exactly.
Rational parseDecimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::int64_t exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view expText = text.substr(e + 1);
    bool expNegative = false;
    if (!expText.empty() && (expText.front() == '+' || expText.front() == '-')) {
      expNegative = expText.front() == '-';
      expText.remove_prefix(1);
    }
    if (expText.empty() || expText.size() > 6)
      throw InputError("malformed rational '" + std::string(whole) + "'");
    BigInt magnitude = parseDigits(expText, whole);
    exponent = magnitude.convert_to<std::int64_t>();
    if (expNegative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view intPart = text.substr(0, dot);
    std::string_view fracPart = text.substr(dot + 1);
    if (intPart.empty() && fracPart.empty())
      throw InputError("malformed rational '" + std::string(whole) + "'");
    digits.append(intPart);
    digits.append(fracPart);
    exponent -= static_cast<std::int64_t>(fracPart.size());
  } else {
    digits.append(text);
  }
  Rational value(parseDigits(digits, whole));
  value *= ipow(Rational(10), exponent);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parseRational(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parseDecimal(trim(text.substr(0, slash)), whole);
    Rational den = parseDecimal(trim(text.substr(slash + 1)), whole);
    if (den == 0) throw InputError("zero denominator in '" + std::string(whole) + "'");
    return num / den;
  }
  return parseDecimal(text, whole);
}

std::string toString(const Rational& r) {
  if (isInteger(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double toDouble(const Rational& r) {
  if (r == 0) return 0.0;
  const double lg = logOf(r < 0 ? Rational(-r) : r);
  if (lg > 710.0) return r < 0 ? -HUGE_VAL : HUGE_VAL;
  if (lg < -746.0) return r < 0 ? -0.0 : 0.0;
  return r.convert_to<double>();
}

double logOf(const BigInt& x) {
  if (x <= 0) return -HUGE_VAL;
  const unsigned bits = msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 60;
  BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double logOf(const Rational& r) { return logOf(numerator(r)) - logOf(denominator(r)); }

Rational ipow(const Rational& r, std::int64_t e) {
  if (e < 0) {
    if (r == 0) throw InputError("zero raised to a negative power");
    return ipow(Rational(1) / r, -e);
  }
  Rational result = 1;
  Rational base = r;
  auto k = static_cast<std::uint64_t>(e);
  while (k != 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k != 0) base *= base;
  }
  return result;
}

std::int64_t toInt64(const Rational& r) { return numerator(r).convert_to<std::int64_t>(); }

}  // namespace logalg
