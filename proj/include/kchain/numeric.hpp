#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kchain {

/// Arbitrary-precision integers and rationals back every report-level
/// quantity; no floating point ever decides a pass/fail.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int ipow(Int base, std::uint64_t n) {
  Int r = 1;
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

inline Int ipow(std::uint64_t base, std::uint64_t n) { return ipow(Int(base), n); }

inline Int int_from_u128(unsigned __int128 v) {
  const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
  const std::uint64_t lo = static_cast<std::uint64_t>(v);
  Int r = hi;
  r <<= 64;
  r |= lo;
  return r;
}

/// q^d as a plain count, guarded by an enumeration limit.
inline std::uint64_t checked_space_size(std::uint64_t q, std::uint32_t d, std::uint64_t limit) {
  Int n = ipow(q, d);
  if (n > limit)
    throw std::runtime_error("enumeration bound exceeded: q^d = " + n.str() + " > " +
                             std::to_string(limit));
  return n.convert_to<std::uint64_t>();
}

inline std::string to_decimal(const Int& v) { return v.str(); }

/// Lowest-terms "n" or "n/d".
inline std::string to_decimal(const Rational& v) {
  const Int num = boost::multiprecision::numerator(v);
  const Int den = boost::multiprecision::denominator(v);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline double approx(const Int& v) { return v.convert_to<double>(); }
inline double approx(const Rational& v) { return v.convert_to<double>(); }

}  // namespace kchain
