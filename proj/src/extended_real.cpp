#include "logalg/extended_real.hpp"

#include "logalg/errors.hpp"

namespace logalg {

namespace {

ExtendedReal fromInteger(const BigInt& x) {
  if (x == 0) return ExtendedReal();
  const unsigned bits = msb(x);
  if (bits < 1000) return ExtendedReal(x.convert_to<double>());
  const unsigned shift = bits - 60;
  BigInt top = x >> shift;
  return ExtendedReal::fromParts(top.convert_to<double>(), static_cast<std::int64_t>(shift));
}

}  // namespace

ExtendedReal ExtendedReal::fromRational(const Rational& r) {
  if (r < 0) throw InputError("ExtendedReal holds non-negative values only");
  return fromInteger(numerator(r)) / fromInteger(denominator(r));
}

ExtendedReal ipow(ExtendedReal base, std::uint64_t e) {
  ExtendedReal result(1.0);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

}  // namespace logalg
