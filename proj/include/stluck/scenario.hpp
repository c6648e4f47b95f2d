#pragma once

// Story harness: each story choice carries a scoring rule naming the model
// term it probes, plus the options shown to respondents with their observed
// majority percentages. The harness scores every option, predicts the argmax
// set, and reports congruence of the observed majorities with the predictions.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stluck/errors.hpp"

namespace stluck::scenario {

enum class Rule {
  actual_emotion_max,
  delta_min,
  horizon_max,
  counterfactual_id_simplicity,
  counterfactual_link_simplicity,
  cause_simplicity,
  causal_link_complexity_max,
  eh_threshold,
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::actual_emotion_max: return "actual_emotion_max";
    case Rule::delta_min: return "delta_min";
    case Rule::horizon_max: return "horizon_max";
    case Rule::counterfactual_id_simplicity: return "counterfactual_id_simplicity";
    case Rule::counterfactual_link_simplicity: return "counterfactual_link_simplicity";
    case Rule::cause_simplicity: return "cause_simplicity";
    case Rule::causal_link_complexity_max: return "causal_link_complexity_max";
    case Rule::eh_threshold: return "eh_threshold";
  }
  return "?";
}

inline std::optional<Rule> rule_from_name(const std::string& name) {
  for (Rule r : {Rule::actual_emotion_max, Rule::delta_min, Rule::horizon_max,
                 Rule::counterfactual_id_simplicity,
                 Rule::counterfactual_link_simplicity, Rule::cause_simplicity,
                 Rule::causal_link_complexity_max, Rule::eh_threshold}) {
    if (name == rule_name(r)) return r;
  }
  return std::nullopt;
}

struct Option {
  std::string label;
  std::optional<double> value;  // numeric magnitude, with `unit`
  std::optional<std::string> unit;
  std::optional<int> ordinal_complexity;  // 1 = simplest to describe
  double majority_pct = 0.0;
  bool paper_predicted = false;
};

struct StoryChoice {
  std::string story_id;
  int choice_index = 1;
  Rule rule = Rule::actual_emotion_max;
  std::optional<double> threshold;  // eh_threshold only
  std::vector<Option> options;

  std::string ref() const { return story_id + "." + std::to_string(choice_index); }
};

struct Prediction {
  std::vector<double> scores;           // aligned with the options
  std::vector<std::size_t> predicted;   // argmax set (threshold set for eh_threshold)
};

namespace detail {

inline double numeric_value(const StoryChoice& c, const Option& o) {
  if (!o.value) {
    throw config_error("rule " + std::string(rule_name(c.rule)) + " needs numeric option values, but " +
                       c.ref() + " option '" + o.label + "' has none");
  }
  return *o.value;
}

inline double positive_numeric_value(const StoryChoice& c, const Option& o) {
  const double v = numeric_value(c, o);
  if (!(v > 0.0)) {
    throw config_error("rule " + std::string(rule_name(c.rule)) + " needs positive option values, but " +
                       c.ref() + " option '" + o.label + "' has " + std::to_string(v));
  }
  return v;
}

inline int ordinal_rank(const StoryChoice& c, const Option& o) {
  if (!o.ordinal_complexity) {
    throw config_error("rule " + std::string(rule_name(c.rule)) + " needs ordinal complexity ranks, but " +
                       c.ref() + " option '" + o.label + "' has none");
  }
  return *o.ordinal_complexity;
}

inline bool all_numeric(const StoryChoice& c) {
  return std::all_of(c.options.begin(), c.options.end(),
                     [](const Option& o) { return o.value.has_value(); });
}

inline bool all_ordinal(const StoryChoice& c) {
  return std::all_of(c.options.begin(), c.options.end(),
                     [](const Option& o) { return o.ordinal_complexity.has_value(); });
}

}  // namespace detail

/// Score of one option under the choice's rule. Higher is "the model expects
/// this option to intensify the feeling more".
inline double option_score(const StoryChoice& c, const Option& o) {
  switch (c.rule) {
    case Rule::actual_emotion_max:
      return detail::numeric_value(c, o);
    case Rule::delta_min:
      return -std::log2(detail::positive_numeric_value(c, o));
    case Rule::horizon_max:
      return std::log2(detail::positive_numeric_value(c, o));
    case Rule::counterfactual_id_simplicity:
      return -std::log2(detail::positive_numeric_value(c, o));
    case Rule::counterfactual_link_simplicity:
      // Link simplicity comes either as a measured length (bits saved are
      // log-scaled) or as a shipped complexity rank for qualitative options.
      if (detail::all_numeric(c)) return -std::log2(detail::positive_numeric_value(c, o));
      if (detail::all_ordinal(c)) return -static_cast<double>(detail::ordinal_rank(c, o));
      throw config_error("rule counterfactual_link_simplicity needs options that are all numeric or all ordinal (" +
                         c.ref() + " mixes kinds)");
    case Rule::cause_simplicity:
      return -static_cast<double>(detail::ordinal_rank(c, o));
    case Rule::causal_link_complexity_max:
      if (detail::all_ordinal(c)) return static_cast<double>(detail::ordinal_rank(c, o));
      if (detail::all_numeric(c)) return std::log2(detail::positive_numeric_value(c, o));
      throw config_error("rule causal_link_complexity_max needs options that are all numeric or all ordinal (" +
                         c.ref() + " mixes kinds)");
    case Rule::eh_threshold:
      return detail::numeric_value(c, o);
  }
  throw config_error("unhandled rule");
}

/// Scores every option and returns the predicted set: the exact argmax set,
/// except for eh_threshold where every option at or above the choice's
/// threshold is predicted.
inline Prediction predict_choice(const StoryChoice& c) {
  if (c.options.size() < 2) {
    throw config_error("choice " + c.ref() + " needs at least two options");
  }
  Prediction p;
  p.scores.reserve(c.options.size());
  for (const Option& o : c.options) p.scores.push_back(option_score(c, o));

  if (c.rule == Rule::eh_threshold) {
    if (!c.threshold) {
      throw config_error("rule eh_threshold needs a threshold on choice " + c.ref());
    }
    for (std::size_t i = 0; i < c.options.size(); ++i) {
      if (p.scores[i] >= *c.threshold) p.predicted.push_back(i);
    }
    if (p.predicted.empty()) {
      throw config_error("no option reaches the threshold on choice " + c.ref());
    }
    return p;
  }

  const double top = *std::max_element(p.scores.begin(), p.scores.end());
  for (std::size_t i = 0; i < p.scores.size(); ++i) {
    if (p.scores[i] == top) p.predicted.push_back(i);
  }
  return p;
}

struct OptionScore {
  std::string label;
  double score = 0.0;
  bool predicted = false;
  bool paper_predicted = false;
  double majority_pct = 0.0;
};

struct ChoicePrediction {
  std::string story_id;
  int choice_index = 1;
  Rule rule = Rule::actual_emotion_max;
  std::vector<OptionScore> options;
  std::vector<std::string> predicted_labels;
  std::string majority_label;
  bool congruent = false;       // observed majority is in the predicted set
  bool matches_flags = false;   // predicted set equals the shipped flags
};

struct PredictionReport {
  std::vector<ChoicePrediction> choices;
  int congruent_count = 0;
  int total = 0;
  std::vector<std::string> mismatches;  // refs like "S5.2"
};

/// Evaluates every choice and tallies congruence of observed majorities with
/// the predicted sets.
inline PredictionReport run_stories(std::span<const StoryChoice> dataset) {
  PredictionReport report;
  for (const StoryChoice& c : dataset) {
    Prediction p = predict_choice(c);

    std::size_t majority = 0;
    for (std::size_t i = 1; i < c.options.size(); ++i) {
      if (c.options[i].majority_pct > c.options[majority].majority_pct) majority = i;
    }

    ChoicePrediction cp;
    cp.story_id = c.story_id;
    cp.choice_index = c.choice_index;
    cp.rule = c.rule;
    cp.majority_label = c.options[majority].label;
    bool flags_match = true;
    for (std::size_t i = 0; i < c.options.size(); ++i) {
      const bool predicted =
          std::find(p.predicted.begin(), p.predicted.end(), i) != p.predicted.end();
      cp.options.push_back(OptionScore{c.options[i].label, p.scores[i], predicted,
                                       c.options[i].paper_predicted,
                                       c.options[i].majority_pct});
      if (predicted) cp.predicted_labels.push_back(c.options[i].label);
      if (predicted != c.options[i].paper_predicted) flags_match = false;
    }
    cp.matches_flags = flags_match;
    cp.congruent = std::find(p.predicted.begin(), p.predicted.end(), majority) !=
                   p.predicted.end();

    report.total += 1;
    if (cp.congruent) {
      report.congruent_count += 1;
    } else {
      report.mismatches.push_back(c.ref());
    }
    report.choices.push_back(std::move(cp));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Dataset schema. The document is a top-level list of stories:
//   [{"id": "S1", "choices": [{"index": 1, "rule": "...", "threshold"?: num,
//     "options": [{"label": str, "value"?: num, "unit"?: str,
//                  "ordinal_complexity"?: int, "majority_pct": num,
//                  "paper_predicted": bool}, ...]}, ...]}, ...]
// ---------------------------------------------------------------------------

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& obj, const char* field,
                                     const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw schema_error(where + ": missing field '" + field + "'");
  }
  return *it;
}

}  // namespace detail

inline std::vector<StoryChoice> parse_scenarios(const nlohmann::json& doc) {
  if (!doc.is_array()) {
    throw schema_error("dataset root must be a list of stories");
  }
  std::vector<StoryChoice> out;
  for (std::size_t si = 0; si < doc.size(); ++si) {
    const std::string swhere = "stories[" + std::to_string(si) + "]";
    const nlohmann::json& story = doc[si];
    if (!story.is_object()) throw schema_error(swhere + ": story must be an object");
    const nlohmann::json& id = detail::require(story, "id", swhere);
    if (!id.is_string() || id.get<std::string>().empty()) {
      throw schema_error(swhere + ".id: must be a non-empty string");
    }
    const nlohmann::json& choices = detail::require(story, "choices", swhere);
    if (!choices.is_array() || choices.empty()) {
      throw schema_error(swhere + ".choices: must be a non-empty list");
    }
    for (std::size_t ci = 0; ci < choices.size(); ++ci) {
      const std::string cwhere = swhere + ".choices[" + std::to_string(ci) + "]";
      const nlohmann::json& choice = choices[ci];
      if (!choice.is_object()) throw schema_error(cwhere + ": choice must be an object");

      StoryChoice sc;
      sc.story_id = id.get<std::string>();
      const nlohmann::json& index = detail::require(choice, "index", cwhere);
      if (!index.is_number_integer() || index.get<int>() < 1) {
        throw schema_error(cwhere + ".index: must be a positive integer");
      }
      sc.choice_index = index.get<int>();

      const nlohmann::json& rule = detail::require(choice, "rule", cwhere);
      if (!rule.is_string()) throw schema_error(cwhere + ".rule: must be a string");
      auto parsed = rule_from_name(rule.get<std::string>());
      if (!parsed) {
        throw schema_error(cwhere + ".rule: unknown rule '" +
                           rule.get<std::string>() + "'");
      }
      sc.rule = *parsed;

      if (auto it = choice.find("threshold"); it != choice.end()) {
        if (!it->is_number()) throw schema_error(cwhere + ".threshold: must be a number");
        sc.threshold = it->get<double>();
      }

      const nlohmann::json& options = detail::require(choice, "options", cwhere);
      if (!options.is_array() || options.size() < 2) {
        throw schema_error(cwhere + ".options: must list at least two options");
      }
      double pct_sum = 0.0;
      for (std::size_t oi = 0; oi < options.size(); ++oi) {
        const std::string owhere = cwhere + ".options[" + std::to_string(oi) + "]";
        const nlohmann::json& option = options[oi];
        if (!option.is_object()) throw schema_error(owhere + ": option must be an object");

        Option o;
        const nlohmann::json& label = detail::require(option, "label", owhere);
        if (!label.is_string() || label.get<std::string>().empty()) {
          throw schema_error(owhere + ".label: must be a non-empty string");
        }
        o.label = label.get<std::string>();

        if (auto it = option.find("value"); it != option.end()) {
          if (!it->is_number()) throw schema_error(owhere + ".value: must be a number");
          o.value = it->get<double>();
        }
        if (auto it = option.find("unit"); it != option.end()) {
          if (!it->is_string()) throw schema_error(owhere + ".unit: must be a string");
          o.unit = it->get<std::string>();
        }
        if (auto it = option.find("ordinal_complexity"); it != option.end()) {
          if (!it->is_number_integer() || it->get<int>() < 1) {
            throw schema_error(owhere + ".ordinal_complexity: must be an integer >= 1");
          }
          o.ordinal_complexity = it->get<int>();
        }
        const nlohmann::json& pct = detail::require(option, "majority_pct", owhere);
        if (!pct.is_number() || pct.get<double>() < 0.0) {
          throw schema_error(owhere + ".majority_pct: must be a non-negative number");
        }
        o.majority_pct = pct.get<double>();
        pct_sum += o.majority_pct;

        const nlohmann::json& flag = detail::require(option, "paper_predicted", owhere);
        if (!flag.is_boolean()) {
          throw schema_error(owhere + ".paper_predicted: must be a boolean");
        }
        o.paper_predicted = flag.get<bool>();

        sc.options.push_back(std::move(o));
      }
      // Percentages are rounded in the source data; allow a 2-point slack.
      if (pct_sum < 98.0 || pct_sum > 102.0) {
        throw schema_error(cwhere + ".options: majority percentages sum to " +
                           std::to_string(pct_sum) + ", expected 100 +/- 2");
      }
      out.push_back(std::move(sc));
    }
  }
  return out;
}

/// Parses a dataset document. An empty (or whitespace-only) document is the
/// empty dataset.
inline std::vector<StoryChoice> load_scenarios(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw schema_error(std::string("dataset parse error: ") + e.what());
  }
  return parse_scenarios(doc);
}

}  // namespace stluck::scenario
