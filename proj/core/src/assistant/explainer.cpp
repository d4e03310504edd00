#include "cuecoach/assistant/explainer.hpp"

namespace cuecoach::assistant {

std::string format_shot_params(const physics::ShotParams& shot) {
  return "V0: " + fixed(shot.v, 4) + "\ntheta: " + fixed(shot.beta, 4) + "\nphi: " + fixed(shot.alpha, 4) +
         "\na: " + fixed(shot.a, 4) + "\nb: " + fixed(shot.b, 4);
}

std::string format_events(const physics::EventSequence& trace) {
  std::string out;
  for (const auto& e : trace) {
    if (!out.empty()) out += "\n";
    out += e.to_text() + " at (" + fixed(e.pos.x, 4) + ", " + fixed(e.pos.y, 4) + ")";
  }
  return out;
}

std::string format_rules(const rules::RuleVector& r, rules::Category category, bool with_weights) {
  std::string out;
  for (const auto& rule : rules::rule_set()) {
    if (rule.category != category) continue;
    if (!out.empty()) out += "\n";
    out += std::to_string(rule.id) + ". " + std::string(rule.text);
    if (with_weights) {
      const double x = r[static_cast<std::size_t>(rule.id - 1)];
      out += " Weight: " + fixed(100.0 * x, 1) + "% (" + std::string(rules::quantize_likert(x).key) + ")";
    }
  }
  return out;
}

std::string ExplainerContext::text() const {
  std::string out;
  for (const auto& [field, value] : inputs) {
    if (!out.empty()) out += "\n\n";
    out += field.name + ":\n" + value;
  }
  return out;
}

ExplainerContext build_explainer_context(const physics::TableState& state, const physics::ShotParams& shot,
                                         const physics::EventSequence& trace, const rules::RuleVector& r,
                                         bool with_weights, const physics::TableSpec& spec) {
  const std::string weights = with_weights ? " and their weights" : "";
  ExplainerContext ctx;
  ctx.inputs = {
      {{"shot_params", "The parameters of the shot (V0 in m/s, angles in degrees)"}, format_shot_params(shot)},
      {{"board_coordinates", "The exact (x,y) coordinates of each ball and pocket on the table"},
       "balls:\n" + format_balls(state) + "\npockets:\n" + format_pockets(spec)},
      {{"events", "The events that occurred in the shot, and their positions"}, format_events(trace)},
      {{"value_rules", "The value rules" + weights}, format_rules(r, rules::Category::Value, with_weights)},
      {{"difficulty_rules", "The difficulty rules" + weights},
       format_rules(r, rules::Category::Difficulty, with_weights)}};
  return ctx;
}

Prompt explainer_prompt(const ExplainerContext& context) {
  const std::vector<Field> outputs{
      {"explanation", "The explanation of the shot, covering its value and its difficulty"}};
  return render_prompt(explainer_task_description(), context.inputs, outputs);
}

std::string explain(const LMClient& lm, const ExplainerContext& context, const DecodeParams& params) {
  const Prompt p = explainer_prompt(context);
  const std::string reply = lm.complete(p.system, p.user, params);
  return extract_field(reply, "explanation").value_or(reply);
}

}  // namespace cuecoach::assistant
