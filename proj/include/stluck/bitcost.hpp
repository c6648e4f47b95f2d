#pragma once

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "stluck/errors.hpp"

namespace stluck {

/// A non-negative quantity of information in bits. All logarithms in the
/// engine are base 2 and costs stay real-valued (no rounding to whole bits).
struct BitCost {
  double bits = 0.0;

  BitCost() = default;
  explicit BitCost(double b) : bits(b) {
    if (!std::isfinite(b) || b < 0.0) {
      throw domain_error("bit cost must be finite and non-negative, got " +
                         std::to_string(b));
    }
  }

  friend BitCost operator+(BitCost a, BitCost b) {
    return BitCost(a.bits + b.bits);
  }
  auto operator<=>(const BitCost&) const = default;
};

/// Self-delimiting cost of an unbounded non-negative integer:
/// 2*floor(log2(v+1)) + 1 bits (the length of the Elias gamma code of v+1).
/// Monotone non-decreasing in v.
inline BitCost integer_cost(std::uint64_t v) {
  const int f = std::bit_width(v + 1) - 1;  // floor(log2(v+1))
  return BitCost(static_cast<double>(2 * f + 1));
}

}  // namespace stluck
