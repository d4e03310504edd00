#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cuecoach/assistant/lm.hpp"
#include "cuecoach/assistant/prompts.hpp"
#include "cuecoach/assistant/tuner.hpp"

namespace cuecoach::assistant {

/// V0, theta (inclination = beta), phi (rotation = alpha), a, b; one per line.
std::string format_shot_params(const physics::ShotParams& shot);

/// One "EVENT at (x, y)" line per event; empty for an empty trace.
std::string format_events(const physics::EventSequence& trace);

/// One line per rule of the category. With weights each line ends with the
/// percentage (one decimal) and its Likert key.
std::string format_rules(const rules::RuleVector& r, rules::Category category, bool with_weights);

/// Named input fields of an explainer or rule-rating prompt, in fixed order:
/// shot parameters, coordinates, events, value rules, difficulty rules.
struct ExplainerContext {
  std::vector<std::pair<Field, std::string>> inputs;

  // All fields as "name:\nvalue" blocks; byte-stable.
  std::string text() const;
};

ExplainerContext build_explainer_context(const physics::TableState& state, const physics::ShotParams& shot,
                                         const physics::EventSequence& trace, const rules::RuleVector& r,
                                         bool with_weights = true, const physics::TableSpec& spec = {});

inline ExplainerContext build_explainer_context(const physics::TableState& state, const TunedShot& t,
                                                const physics::TableSpec& spec = {}) {
  return build_explainer_context(state, t.shot, t.trace, t.rule_vector, true, spec);
}

Prompt explainer_prompt(const ExplainerContext& context);

/// Asks the LM for an explanation; returns the `explanation` field, or the
/// whole reply when the field marker is missing. LMUnavailable propagates.
std::string explain(const LMClient& lm, const ExplainerContext& context, const DecodeParams& params = {});

}  // namespace cuecoach::assistant
