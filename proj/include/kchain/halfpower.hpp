#pragma once

#include <cmath>
#include <cstdint>

#include "kchain/numeric.hpp"

namespace kchain {

/// Exact nonnegative quantity a * p^(b/2). Bound comparisons square both
/// sides and compare integers, so half-integer exponents never force a float
/// into a pass/fail decision.
struct HalfPower {
  Int coeff;               // a >= 0
  std::uint32_t half_exp;  // b
  std::uint32_t p;

  Int squared() const { return coeff * coeff * ipow(Int(p), half_exp); }

  double value_approx() const {
    return approx(coeff) * std::pow(double(p), double(half_exp) / 2.0);
  }

  HalfPower scaled(const Int& factor) const { return {coeff * factor, half_exp, p}; }

  friend HalfPower operator*(const HalfPower& a, const HalfPower& b) {
    return {a.coeff * b.coeff, a.half_exp + b.half_exp, a.p};
  }
};

/// |x| <= a * p^(b/2), decided exactly.
inline bool abs_within(const Int& x, const HalfPower& h) { return x * x <= h.squared(); }

/// -1 / 0 / +1 comparing two half-powers over the same p.
inline int compare(const HalfPower& a, const HalfPower& b) {
  const Int lhs = a.squared(), rhs = b.squared();
  return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

}  // namespace kchain
