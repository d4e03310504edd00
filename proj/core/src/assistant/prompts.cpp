#include "cuecoach/assistant/prompts.hpp"

#include <algorithm>
#include <cstdio>

namespace cuecoach::assistant {

namespace {

std::string marker(std::string_view name) { return "[[ ## " + std::string(name) + " ## ]]"; }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s(buf);
  // Avoid "-0.0000".
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

Prompt render_prompt(std::string_view task, std::span<const std::pair<Field, std::string>> inputs,
                     std::span<const Field> outputs) {
  std::vector<Field> outs{{"reasoning", "Let's think step by step in order to produce the outputs."}};
  outs.insert(outs.end(), outputs.begin(), outputs.end());

  Prompt p;
  std::string& s = p.system;
  s += "Your input fields are:\n";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    s += std::to_string(i + 1) + ". `" + inputs[i].first.name + "` (str): " + inputs[i].first.description + "\n";
  }
  s += "\nYour output fields are:\n";
  for (std::size_t i = 0; i < outs.size(); ++i) {
    s += std::to_string(i + 1) + ". `" + outs[i].name + "` (str): " + outs[i].description + "\n";
  }
  s += "\nAll interactions will be structured in the following way, with the appropriate values filled in.\n\n";
  for (const auto& [field, value] : inputs) {
    s += marker(field.name) + "\n{" + field.name + "}\n\n";
  }
  s += marker("completed") + "\n\n";
  s += "In adhering to this structure, your objective is: \n";
  s += task;

  std::string& u = p.user;
  for (const auto& [field, value] : inputs) {
    u += marker(field.name) + "\n" + value + "\n\n";
  }
  u += "Respond with the corresponding output fields, starting with the field `" + marker(outs[0].name) + "`";
  for (std::size_t i = 1; i < outs.size(); ++i) u += ", then `" + marker(outs[i].name) + "`";
  u += ", and then ending with the marker for `" + marker("completed") + "`.";
  return p;
}

std::optional<std::string> extract_field(std::string_view reply, std::string_view name) {
  const std::string m = marker(name);
  const auto at = reply.find(m);
  if (at == std::string_view::npos) return std::nullopt;
  const auto begin = at + m.size();
  const auto next = reply.find("[[ ##", begin);
  return trim(reply.substr(begin, next == std::string_view::npos ? std::string_view::npos : next - begin));
}

std::string format_balls(const physics::TableState& state) {
  std::string out;
  for (physics::BallId id : physics::kAllBalls) {
    if (!state.on_table(id)) continue;
    const Vec2 p = state.pos(id);
    if (!out.empty()) out += "\n";
    out += std::string(physics::to_string(id)) + ": (" + fixed(p.x, 4) + ", " + fixed(p.y, 4) + ")";
  }
  return out;
}

std::string format_pockets(const physics::TableSpec& spec) {
  std::string out;
  for (physics::PocketId id : physics::kAllPockets) {
    const Vec2 p = spec.pocket_position(id);
    if (!out.empty()) out += "\n";
    out += std::string(physics::to_string(id)) + ": (" + fixed(p.x, 4) + ", " + fixed(p.y, 4) + ")";
  }
  return out;
}

std::string format_targets(std::span<const physics::BallId> targets) {
  std::string hit;
  std::string avoid;
  for (physics::BallId id : physics::kColourBalls) {
    const bool mine = std::find(targets.begin(), targets.end(), id) != targets.end();
    std::string& dst = mine ? hit : avoid;
    if (!dst.empty()) dst += ", ";
    dst += physics::to_string(id);
  }
  return "target: " + hit + "\navoid: " + avoid;
}

}  // namespace cuecoach::assistant
