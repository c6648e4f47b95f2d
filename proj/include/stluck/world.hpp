#pragma once

// A World is the observer's model of the independent choices the environment
// had to make to produce an outcome; its generation complexity is the sum of
// per-choice selection costs.

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "stluck/bitcost.hpp"
#include "stluck/errors.hpp"

namespace stluck::mdl {

/// A choice among `cardinality` equally available alternatives.
struct FiniteChoice {
  long cardinality = 1;
};

/// A choice of a position on an interval of the given extent, resolved at
/// the given precision.
struct ContinuousChoice {
  double extent = 1.0;
  double precision = 1.0;
};

using ChoicePoint = std::variant<FiniteChoice, ContinuousChoice>;

struct World {
  std::vector<ChoicePoint> choices;
};

/// Bits the world needs to settle every choice point: log2(cardinality) for
/// finite choices, log2(extent / precision) for continuous ones.
inline BitCost generation_complexity(const World& world) {
  double total = 0.0;
  for (const ChoicePoint& cp : world.choices) {
    if (const auto* f = std::get_if<FiniteChoice>(&cp)) {
      if (f->cardinality < 1) {
        throw stluck::domain_error("finite choice cardinality must be >= 1");
      }
      total += std::log2(static_cast<double>(f->cardinality));
    } else {
      const auto& c = std::get<ContinuousChoice>(cp);
      if (!(c.precision > 0.0) || c.extent < c.precision) {
        throw stluck::domain_error(
            "continuous choice requires extent >= precision > 0");
      }
      total += std::log2(c.extent / c.precision);
    }
  }
  return BitCost(total);
}

/// The world behind a draw of `count` symbols from a finite alphabet.
inline World uniform_draw_world(std::size_t count, long alphabet_size) {
  World w;
  w.choices.assign(count, FiniteChoice{alphabet_size});
  return w;
}

}  // namespace stluck::mdl
