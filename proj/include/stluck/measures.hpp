#pragma once

// Core observer measures. An outcome is unexpected when it is cheaper to
// describe than it was for the world to generate; unexpectedness converts to
// a subjective probability, adds to a baseline feeling to give the felt
// emotion, and travels along causal links at the cost of the link.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "stluck/bitcost.hpp"
#include "stluck/errors.hpp"

namespace stluck::measures {

/// Unexpectedness in bits: generation cost minus description cost. May be
/// negative (mundane outcomes); clamping is the caller's choice per context.
inline double unexpectedness(BitCost generation, BitCost description) {
  return generation.bits - description.bits;
}

struct Probability {
  double value = 1.0;
  bool clamped = false;  // true when negative unexpectedness was raised to 0
};

/// 2^-max(U, 0): one chance in 2^U. Unexpectedness below zero means "at
/// least as likely as typical" and is clamped, with the clamp reported.
inline Probability subjective_probability(double u) {
  const bool clamped = u < 0.0;
  return Probability{std::exp2(-std::max(u, 0.0)), clamped};
}

struct Emotion {
  double value = 0.0;
  bool clamped = false;  // true when the raw sum fell below zero
};

/// Felt intensity: baseline feeling plus unexpectedness. The baseline may be
/// negative (aversive news can be dampened by expectedness) but the felt
/// intensity itself cannot, so negative sums clamp to zero and say so.
inline Emotion emotion(double baseline, double u) {
  const double raw = baseline + u;
  return Emotion{std::max(raw, 0.0), raw < 0.0};
}

/// Expected feeling of a merely anticipated outcome: utility discounted by
/// the bits the world still has to spend to bring it about.
inline double anticipated_emotion(double utility, double u) {
  return utility - u;
}

/// Unexpectedness of an effect seen through its cause: the cause's own
/// unexpectedness plus the generation cost of the link.
inline double propagate_unexpectedness(double u_cause, BitCost link_cost) {
  return u_cause + link_cost.bits;
}

/// Emotion carried backwards across a causal link: the effect's intensity
/// less the link's cost, clamped like emotion().
inline Emotion retro_emotion(Emotion effect, BitCost link_cost) {
  const double raw = effect.value - link_cost.bits;
  return Emotion{std::max(raw, 0.0), raw < 0.0};
}

/// An outcome as the observer holds it: description and generation costs,
/// optionally a utility and/or an explicit expected-feeling baseline.
struct Situation {
  std::string id;
  BitCost description_cost;
  BitCost generation_cost;
  std::optional<double> utility;           // V, in the same bit-scaled units
  std::optional<double> expected_emotion;  // Eh, when known directly

  double unexpectedness_bits() const {
    return unexpectedness(generation_cost, description_cost);
  }

  /// Explicit baseline when given; otherwise derived from utility. Never
  /// guessed: with neither field this throws.
  double expected_emotion_or_derived() const {
    if (expected_emotion) return *expected_emotion;
    if (utility) return anticipated_emotion(*utility, unexpectedness_bits());
    throw config_error("situation '" + id +
                       "' has neither an expected emotion nor a utility");
  }
};

}  // namespace stluck::measures
