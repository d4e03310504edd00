#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cuecoach/physics/table.hpp"

namespace cuecoach::assistant {

std::string_view recommender_task_description();
std::string_view explainer_task_description();
std::string_view likert_task_description(bool with_weights);

struct Field {
  std::string name;
  std::string description;
};

struct Prompt {
  std::string system;
  std::string user;
};

/// Chain-of-thought field template: the system turn lists the fields and
/// the task, the user turn carries the input values. A `reasoning` output
/// field always comes first.
Prompt render_prompt(std::string_view task, std::span<const std::pair<Field, std::string>> inputs,
                     std::span<const Field> outputs);

/// Text of the `[[ ## name ## ]]` section of a reply, trimmed; nullopt when
/// the marker is absent.
std::optional<std::string> extract_field(std::string_view reply, std::string_view name);

/// "id: (x, y)" per on-table ball, 4 decimals.
std::string format_balls(const physics::TableState& state);
/// "id: (x, y)" per pocket, 4 decimals.
std::string format_pockets(const physics::TableSpec& spec);
std::string format_targets(std::span<const physics::BallId> targets);

std::string fixed(double x, int decimals);

}  // namespace cuecoach::assistant
