#pragma once

// JSON faces of the engine: machine-readable renderings of reports and codes,
// and the scene-file schema consumed by assessment. Machine output uses
// insertion-ordered objects so identical inputs serialize byte-identically.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stluck/code.hpp"
#include "stluck/errors.hpp"
#include "stluck/luck.hpp"
#include "stluck/measures.hpp"
#include "stluck/scenario.hpp"

namespace stluck::jsonio {

using ojson = nlohmann::ordered_json;

inline ojson code_to_json(const mdl::Code& code) {
  return std::visit(
      [](const auto& node) -> ojson {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, mdl::Literal>) {
          return ojson{{"kind", "literal"},
                       {"value", node.value},
                       {"domain", {{"lo", node.domain.lo}, {"hi", node.domain.hi}}}};
        } else if constexpr (std::is_same_v<T, mdl::ArithSeq>) {
          return ojson{{"kind", "arith_seq"},
                       {"start", node.start.value},
                       {"domain", {{"lo", node.start.domain.lo}, {"hi", node.start.domain.hi}}},
                       {"step", node.step},
                       {"length", node.length}};
        } else if constexpr (std::is_same_v<T, mdl::Repeat>) {
          return ojson{{"kind", "repeat"},
                       {"count", node.count},
                       {"body", code_to_json(*node.body)}};
        } else {
          ojson parts = ojson::array();
          for (const mdl::CodePtr& p : node.parts) parts.push_back(code_to_json(*p));
          return ojson{{"kind", "concat"}, {"parts", std::move(parts)}};
        }
      },
      code.node());
}

inline ojson report_to_json(const luck::LuckReport& r) {
  ojson terms = ojson::array();
  for (const luck::Term& t : r.terms) {
    terms.push_back(ojson{{"name", t.name}, {"bits", t.bits}});
  }
  ojson out{{"mode", luck::mode_name(r.mode)},
            {"value", r.value},
            {"eta_star", r.eta_star},
            {"terms", std::move(terms)}};
  if (r.counterfactual_id) out["counterfactual"] = *r.counterfactual_id;
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

inline ojson prediction_report_to_json(const scenario::PredictionReport& report) {
  ojson choices = ojson::array();
  for (const scenario::ChoicePrediction& cp : report.choices) {
    ojson options = ojson::array();
    for (const scenario::OptionScore& os : cp.options) {
      options.push_back(ojson{{"label", os.label},
                              {"score", os.score},
                              {"predicted", os.predicted},
                              {"paper_predicted", os.paper_predicted},
                              {"majority_pct", os.majority_pct}});
    }
    choices.push_back(ojson{{"story", cp.story_id},
                            {"choice", cp.choice_index},
                            {"rule", scenario::rule_name(cp.rule)},
                            {"options", std::move(options)},
                            {"predicted", cp.predicted_labels},
                            {"majority", cp.majority_label},
                            {"congruent", cp.congruent},
                            {"matches_flags", cp.matches_flags}});
  }
  return ojson{{"choices", std::move(choices)},
               {"congruent", report.congruent_count},
               {"total", report.total},
               {"mismatches", report.mismatches}};
}

// ---------------------------------------------------------------------------
// Scene files: one actual situation, optional counterfactual candidates,
// optionally a near-miss geometry and baseline inputs.
//   {"actual":  {"id": str, "C": num, "Cw": num, "V"?: num, "Eh"?: num},
//    "counterfactuals"?: [{..situation.., "cwc": num}, ...],
//    "near_miss"?: {"geometry": "discrete"|"continuous", "l0": num,
//                   "delta": num, "l2"?: num, "k"?: int, "alpha"?: num,
//                   "v"?: num},
//    "rescher"?: {"emotion": num, "probability": num},
//    "teigen"?:  {"delta_u": num, "distance": num}}
// ---------------------------------------------------------------------------

struct RescherInputs {
  double emotion = 0.0;
  double probability = 1.0;
};

struct TeigenInputs {
  double delta_u = 0.0;
  double distance = 1.0;
};

struct AssessScene {
  measures::Situation actual;
  std::vector<luck::CounterfactualCandidate> counterfactuals;
  std::optional<luck::NearMissScene> near_miss;
  std::optional<RescherInputs> rescher;
  std::optional<TeigenInputs> teigen;
};

namespace detail {

inline double require_number(const nlohmann::json& obj, const char* field,
                             const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_number()) {
    throw schema_error(where + ": needs numeric field '" + field + "'");
  }
  return it->get<double>();
}

inline std::optional<double> optional_number(const nlohmann::json& obj,
                                             const char* field,
                                             const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end()) return std::nullopt;
  if (!it->is_number()) {
    throw schema_error(where + ": field '" + field + "' must be a number");
  }
  return it->get<double>();
}

inline measures::Situation situation_from_json(const nlohmann::json& obj,
                                               const std::string& where) {
  if (!obj.is_object()) throw schema_error(where + ": must be an object");
  measures::Situation s;
  auto id = obj.find("id");
  if (id == obj.end() || !id->is_string()) {
    throw schema_error(where + ": needs string field 'id'");
  }
  s.id = id->get<std::string>();
  try {
    s.description_cost = BitCost(require_number(obj, "C", where));
    s.generation_cost = BitCost(require_number(obj, "Cw", where));
  } catch (const stluck::domain_error& e) {
    throw schema_error(where + ": " + e.what());
  }
  s.utility = optional_number(obj, "V", where);
  s.expected_emotion = optional_number(obj, "Eh", where);
  return s;
}

}  // namespace detail

inline AssessScene parse_scene(const nlohmann::json& doc) {
  if (!doc.is_object()) throw schema_error("scene root must be an object");
  AssessScene scene;
  auto actual = doc.find("actual");
  if (actual == doc.end()) throw schema_error("scene needs an 'actual' situation");
  scene.actual = detail::situation_from_json(*actual, "actual");

  if (auto it = doc.find("counterfactuals"); it != doc.end()) {
    if (!it->is_array()) throw schema_error("counterfactuals: must be a list");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "counterfactuals[" + std::to_string(i) + "]";
      luck::CounterfactualCandidate cand;
      cand.situation = detail::situation_from_json((*it)[i], where);
      try {
        cand.rewrite_cost = BitCost(detail::require_number((*it)[i], "cwc", where));
      } catch (const stluck::domain_error& e) {
        throw schema_error(where + ": " + e.what());
      }
      scene.counterfactuals.push_back(std::move(cand));
    }
  }

  if (auto it = doc.find("near_miss"); it != doc.end()) {
    const nlohmann::json& nm = *it;
    if (!nm.is_object()) throw schema_error("near_miss: must be an object");
    luck::NearMissScene s;
    auto geom = nm.find("geometry");
    if (geom == nm.end() || !geom->is_string()) {
      throw schema_error("near_miss: needs string field 'geometry'");
    }
    const std::string g = geom->get<std::string>();
    if (g == "discrete") {
      s.geometry = luck::Geometry::discrete_bounded;
    } else if (g == "continuous") {
      s.geometry = luck::Geometry::continuous_unbounded;
    } else {
      throw schema_error("near_miss.geometry: unknown geometry '" + g + "'");
    }
    s.l0 = detail::require_number(nm, "l0", "near_miss");
    s.delta = detail::require_number(nm, "delta", "near_miss");
    s.l2 = detail::optional_number(nm, "l2", "near_miss").value_or(1.0);
    s.alpha = detail::optional_number(nm, "alpha", "near_miss").value_or(1.0);
    s.v = detail::optional_number(nm, "v", "near_miss").value_or(0.0);
    if (auto k = nm.find("k"); k != nm.end()) {
      if (!k->is_number_integer() || k->get<long>() < 1) {
        throw schema_error("near_miss.k: must be an integer >= 1");
      }
      s.k = k->get<long>();
    }
    scene.near_miss = s;
  }

  if (auto it = doc.find("rescher"); it != doc.end()) {
    scene.rescher = RescherInputs{detail::require_number(*it, "emotion", "rescher"),
                                  detail::require_number(*it, "probability", "rescher")};
  }
  if (auto it = doc.find("teigen"); it != doc.end()) {
    scene.teigen = TeigenInputs{detail::require_number(*it, "delta_u", "teigen"),
                                detail::require_number(*it, "distance", "teigen")};
  }
  return scene;
}

struct SceneAssessment {
  luck::LuckReport chosen;
  luck::LuckReport actual_reading;
  std::vector<luck::LuckReport> counterfactual_readings;
  std::optional<luck::LuckReport> near_miss_reading;
  std::optional<luck::LuckReport> rescher_baseline;
  std::optional<luck::LuckReport> teigen_baseline;
};

/// Scores every reading a scene offers and keeps the most intense one, with
/// the same tie policy as assess(): the actual reading first, then earlier
/// candidates, with the near-miss reading considered last.
inline SceneAssessment assess_scene(const AssessScene& scene) {
  SceneAssessment out;
  out.actual_reading = luck::luck_actual(scene.actual.expected_emotion_or_derived(),
                                         scene.actual.unexpectedness_bits());
  for (const luck::CounterfactualCandidate& cand : scene.counterfactuals) {
    luck::LuckReport r =
        luck::luck_counterfactual(cand.situation.expected_emotion_or_derived(),
                                  cand.situation.unexpectedness_bits(),
                                  cand.rewrite_cost);
    r.counterfactual_id = cand.situation.id;
    out.counterfactual_readings.push_back(std::move(r));
  }
  if (scene.near_miss) {
    luck::LuckReport r = scene.near_miss->geometry == luck::Geometry::discrete_bounded
                             ? luck::near_miss_discrete(*scene.near_miss)
                             : luck::near_miss_continuous(*scene.near_miss);
    r.counterfactual_id = "near_miss";
    out.near_miss_reading = std::move(r);
  }

  out.chosen = out.actual_reading;
  bool tied = false;
  auto offer = [&](const luck::LuckReport& r) {
    if (r.value > out.chosen.value) {
      out.chosen = r;
      tied = false;
    } else if (r.value == out.chosen.value) {
      tied = true;
    }
  };
  for (const luck::LuckReport& r : out.counterfactual_readings) offer(r);
  if (out.near_miss_reading) offer(*out.near_miss_reading);
  if (tied) {
    out.chosen.notes.push_back("tie: kept the earliest of equally intense readings");
  }

  if (scene.rescher) {
    out.rescher_baseline =
        luck::rescher_luck(scene.rescher->emotion, scene.rescher->probability);
  }
  if (scene.teigen) {
    out.teigen_baseline =
        luck::teigen_luck(scene.teigen->delta_u, scene.teigen->distance);
  }
  return out;
}

}  // namespace stluck::jsonio
