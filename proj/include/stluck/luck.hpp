#pragma once

// Luck intensities. Three readings of one event: the actual outcome on its
// own (L1), the gap to an explicit counterfactual discounted by the cost of
// imagining the world producing it (L2), and the gap to the expected outcome
// (L3). Near-miss geometries make the counterfactual costs concrete and are
// optimized over the imagined landing shift. Two simpler published measures
// (emotion times improbability; utility gap over distance) are provided as
// comparison baselines.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stluck/bitcost.hpp"
#include "stluck/errors.hpp"
#include "stluck/measures.hpp"

namespace stluck::luck {

enum class Mode { L1, L2, L3, Rescher, Teigen };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::L1: return "L1";
    case Mode::L2: return "L2";
    case Mode::L3: return "L3";
    case Mode::Rescher: return "rescher";
    case Mode::Teigen: return "teigen";
  }
  return "?";
}

struct Term {
  std::string name;
  double bits = 0.0;
};

struct LuckReport {
  Mode mode = Mode::L1;
  double value = 0.0;
  double eta_star = 0.0;  // chosen counterfactual shift, 0 when not optimized
  std::vector<Term> terms;
  std::optional<std::string> counterfactual_id;
  std::vector<std::string> notes;
};

namespace detail {

// Reports carry their own breakdown; the value is the left-to-right sum of
// the terms, so the two stay bit-identical.
inline LuckReport make_report(Mode mode, std::vector<Term> terms) {
  LuckReport r;
  r.mode = mode;
  r.terms = std::move(terms);
  double v = 0.0;
  for (const Term& t : r.terms) v += t.bits;
  r.value = v;
  return r;
}

}  // namespace detail

/// Luck of the bare outcome, no counterfactual: baseline feeling plus
/// unexpectedness. Left unclamped so orderings across scenes survive;
/// clamping is a presentation concern.
inline LuckReport luck_actual(double expected_emotion, double u) {
  return detail::make_report(Mode::L1, {{"Eh", expected_emotion}, {"U", u}});
}

/// Luck against an explicit counterfactual: its conditional feeling plus its
/// unexpectedness, minus the bits needed to rewrite the world into it.
inline LuckReport luck_counterfactual(double expected_emotion_cond, double u_s2,
                                      BitCost rewrite_cost) {
  return detail::make_report(
      Mode::L2,
      {{"Eh_cond", expected_emotion_cond}, {"U_s2", u_s2}, {"Cwc", -rewrite_cost.bits}});
}

enum class Geometry { discrete_bounded, continuous_unbounded };

/// A losing landing at distance delta from the nearest edge of a winning
/// region of extent l2, inside a space of total extent l0 holding k disjoint
/// winning regions. alpha is the landing precision of the continuous case.
struct NearMissScene {
  Geometry geometry = Geometry::discrete_bounded;
  double l0 = 1.0;
  double l2 = 1.0;
  double delta = 1.0;
  long k = 1;
  double alpha = 1.0;
  double v = 0.0;  // utility of winning

  void validate() const {
    if (!(l0 > 0.0) || !(l2 > 0.0) || l2 > l0) {
      throw stluck::domain_error("near miss requires 0 < l2 <= l0");
    }
    if (k < 1) throw stluck::domain_error("winning region count k must be >= 1");
    if (!(delta > 0.0)) throw stluck::domain_error("miss distance must be positive");
    if (geometry == Geometry::continuous_unbounded && !(alpha > 0.0)) {
      throw stluck::domain_error("landing precision must be positive");
    }
  }
};

namespace detail {

struct SweepResult {
  double eta = 0.0;
  double base = 0.0;  // value before the sector penalty
};

// Assembles a near-miss report from the swept optimum. The sector penalty is
// applied last, as its own term, so that for any fixed scene the value at k
// equals the value at k=1 minus log2(k) bit for bit.
inline LuckReport finish_near_miss(Mode mode, const NearMissScene& scene,
                                   const SweepResult& opt, std::vector<Term> terms) {
  terms.push_back({"sector_penalty", -std::log2(static_cast<double>(scene.k))});
  LuckReport r = make_report(mode, std::move(terms));
  r.eta_star = opt.eta;
  return r;
}

}  // namespace detail

/// Discrete bounded near miss, counterfactual assessed from the actual
/// landing. The imagined winning landing sits eta positions inside the
/// region's near edge; both the landing's description (edge bit plus shift)
/// and the rewrite cost (direction bit plus distance) grow with eta, so the
/// sweep is expected to settle on eta = 0; verified, not assumed.
inline LuckReport near_miss_discrete(const NearMissScene& scene) {
  scene.validate();
  if (scene.geometry != Geometry::discrete_bounded) {
    throw stluck::domain_error("near_miss_discrete requires discrete geometry");
  }
  if (scene.delta < 1.0) {
    throw stluck::domain_error(
        "not a near miss: landing inside winning region (delta < 1)");
  }
  const long eta_max = std::max(0L, static_cast<long>(std::floor(scene.l2 - 1.0)));
  detail::SweepResult opt;
  bool have = false;
  for (long e = 0; e <= eta_max; ++e) {
    const double eta = static_cast<double>(e);
    double val = scene.v + std::log2(scene.l0);
    val -= 1.0 + std::log2(1.0 + eta);
    val -= 1.0 + std::log2(scene.delta + eta);
    if (!have || val > opt.base) {  // ties keep the smallest shift
      opt = detail::SweepResult{eta, val};
      have = true;
    }
  }
  return detail::finish_near_miss(
      Mode::L2, scene, opt,
      {{"V", scene.v},
       {"Cw_s2", std::log2(scene.l0)},
       {"C_s2", -(1.0 + std::log2(1.0 + opt.eta))},
       {"Cwc_s2_s1", -(1.0 + std::log2(scene.delta + opt.eta))}});
}

/// Near miss judged against the expected outcome instead of the actual one:
/// the generation term shrinks from the whole space to the winning extent.
inline LuckReport near_miss_expectation_baseline(const NearMissScene& scene) {
  scene.validate();
  if (scene.geometry != Geometry::discrete_bounded) {
    throw stluck::domain_error(
        "near_miss_expectation_baseline requires discrete geometry");
  }
  if (scene.delta < 1.0) {
    throw stluck::domain_error(
        "not a near miss: landing inside winning region (delta < 1)");
  }
  const long eta_max = std::max(0L, static_cast<long>(std::floor(scene.l2 - 1.0)));
  detail::SweepResult opt;
  bool have = false;
  for (long e = 0; e <= eta_max; ++e) {
    const double eta = static_cast<double>(e);
    double val = scene.v + std::log2(scene.l2);
    val -= 1.0 + std::log2(1.0 + eta);
    val -= 1.0 + std::log2(scene.delta + eta);
    if (!have || val > opt.base) {
      opt = detail::SweepResult{eta, val};
      have = true;
    }
  }
  LuckReport r = detail::finish_near_miss(
      Mode::L3, scene, opt,
      {{"V", scene.v},
       {"Cw_s2", std::log2(scene.l2)},
       {"C_s2", -(1.0 + std::log2(1.0 + opt.eta))},
       {"Cwc_s2_s1", -(1.0 + std::log2(scene.delta + opt.eta))}});
  if (scene.delta >= scene.l2) {
    r.notes.push_back("no emotional contrast against expectation");
  }
  return r;
}

/// Continuous near miss on a space bounded on one side only. The winning
/// region has a single edge, so the imagined landing needs no edge bit; the
/// rewrite cost keeps a direction bit even at zero shift, which leaves the
/// optimum one bit above the bounded case. The value is invariant under the
/// choice of precision: alpha cancels at the optimum.
inline LuckReport near_miss_continuous(const NearMissScene& scene) {
  scene.validate();
  if (scene.geometry != Geometry::continuous_unbounded) {
    throw stluck::domain_error("near_miss_continuous requires continuous geometry");
  }
  std::vector<std::string> notes;
  double delta = scene.delta;
  if (delta < scene.alpha) {
    delta = scene.alpha;
    notes.push_back("at precision threshold");
  }
  const long steps = static_cast<long>(std::floor(scene.l0 / scene.alpha));
  detail::SweepResult opt;
  bool have = false;
  for (long ix = 0; ix <= steps; ++ix) {
    const double eta = static_cast<double>(ix) * scene.alpha;
    double val = scene.v + std::log2(scene.l0 / scene.alpha);
    val -= std::log2(1.0 + eta / scene.alpha);
    val -= 1.0 + std::log2((delta + eta) / scene.alpha);
    if (!have || val > opt.base) {
      opt = detail::SweepResult{eta, val};
      have = true;
    }
  }
  LuckReport r = detail::finish_near_miss(
      Mode::L2, scene, opt,
      {{"V", scene.v},
       {"Cw_s2", std::log2(scene.l0 / scene.alpha)},
       {"C_s2", -std::log2(1.0 + opt.eta / scene.alpha)},
       {"Cwc_s2_s1", -(1.0 + std::log2((delta + opt.eta) / scene.alpha))}});
  r.notes.insert(r.notes.end(), notes.begin(), notes.end());
  return r;
}

/// Best-case expected feeling of winning before the draw: utility discounted
/// by the bits separating "somewhere" from "somewhere winning".
inline double expected_win_emotion(double l0, double l2, double v) {
  if (!(l0 > 0.0) || !(l2 > 0.0) || l2 > l0) {
    throw stluck::domain_error("expected_win_emotion requires 0 < l2 <= l0");
  }
  return v - std::log2(l0 / l2);
}

/// A directed causal link: bits the world spends producing the effect from
/// the cause, and bits needed to alter the cause itself (its mutability).
struct CausalLink {
  std::string cause_id;
  std::string effect_id;
  BitCost generation_cost;  // producing the effect given the cause
  BitCost mutability_cost;  // altering the cause in imagination
};

/// Luck of the bare outcome traced to a cause: surprising causes and
/// materially costly links both raise the felt intensity. Identical, bit for
/// bit, to propagating the cause's unexpectedness and scoring the outcome.
inline LuckReport causal_luck_actual(double expected_emotion, double u_cause,
                                     const CausalLink& link) {
  LuckReport inner = luck_actual(
      expected_emotion,
      measures::propagate_unexpectedness(u_cause, link.generation_cost));
  LuckReport r;
  r.mode = Mode::L1;
  r.value = inner.value;
  r.terms = {{"Eh", expected_emotion},
             {"U_s3", u_cause},
             {"Cw_s1_s3", link.generation_cost.bits}};
  return r;
}

/// Counterfactual luck routed through an altered cause: the rewrite cost
/// splits into producing the alternative outcome from the altered cause and
/// the mutability of the cause itself.
inline LuckReport causal_luck_counterfactual(double expected_emotion_cond,
                                             double u_s2, const CausalLink& link,
                                             BitCost mutability) {
  return detail::make_report(Mode::L2, {{"Eh_cond", expected_emotion_cond},
                                        {"U_s2", u_s2},
                                        {"Cw_s2_s4", -link.generation_cost.bits},
                                        {"mutability", -mutability.bits}});
}

struct CounterfactualCandidate {
  measures::Situation situation;
  BitCost rewrite_cost;  // bits to rewrite the world into this alternative
};

/// The observer keeps whichever reading feels strongest: the actual outcome
/// alone, or the gap to one of the offered counterfactuals. Ties prefer the
/// actual reading, then earlier candidates, and are noted.
inline LuckReport assess(const measures::Situation& actual,
                         std::span<const CounterfactualCandidate> candidates) {
  LuckReport best = luck_actual(actual.expected_emotion_or_derived(),
                                actual.unexpectedness_bits());
  bool tied = false;
  for (const CounterfactualCandidate& cand : candidates) {
    LuckReport r = luck_counterfactual(cand.situation.expected_emotion_or_derived(),
                                       cand.situation.unexpectedness_bits(),
                                       cand.rewrite_cost);
    r.counterfactual_id = cand.situation.id;
    if (r.value > best.value) {
      best = std::move(r);
      tied = false;
    } else if (r.value == best.value) {
      tied = true;
    }
  }
  if (tied) best.notes.push_back("tie: kept the earliest of equally intense readings");
  return best;
}

/// Baseline: emotional stake scaled by improbability, E * (1 - p). Kept for
/// comparison output; it barely separates moderately from highly unlikely
/// outcomes.
inline LuckReport rescher_luck(double emotional_stake, double p) {
  if (!(p >= 0.0) || p > 1.0) {
    throw stluck::domain_error("probability must lie in [0, 1]");
  }
  return detail::make_report(Mode::Rescher,
                             {{"E(1-p)", emotional_stake * (1.0 - p)}});
}

/// Baseline: utility gap over distance to the alternative, delta_u / D.
inline LuckReport teigen_luck(double delta_u, double distance) {
  if (!(distance > 0.0)) {
    throw stluck::domain_error("distance to the alternative must be positive");
  }
  return detail::make_report(Mode::Teigen, {{"du_over_D", delta_u / distance}});
}

}  // namespace stluck::luck
