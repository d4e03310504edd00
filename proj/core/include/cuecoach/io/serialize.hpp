#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cuecoach/game/game.hpp"
#include "cuecoach/physics/events.hpp"
#include "cuecoach/physics/shot.hpp"
#include "cuecoach/physics/simulator.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::io {

using Json = nlohmann::json;

// {"balls": {"cue": {"x": 0.5, "y": 0.5, "on_table": true}, ...}}
Json to_json(const physics::TableState& state);
// Balls absent from the object are off the table. Throws InvalidInput on
// unknown ids, non-finite coordinates, or (when validate) invariant breaches.
physics::TableState table_state_from_json(const Json& j, const physics::TableSpec& spec = {},
                                          bool validate = true);

Json to_json(const physics::ShotParams& shot);
// With clamp=false an out-of-range field throws InvalidInput; otherwise the
// shot is clamped and its flag set.
physics::ShotParams shot_from_json(const Json& j, bool clamp = false);

Json to_json(const physics::Event& event);
Json to_json(const physics::EventSequence& events);
physics::EventSequence events_from_json(const Json& j);

Json to_json(const std::vector<physics::Frame>& frames);
Json to_json(const game::ShotRuling& ruling);

// One JSON object per shot, newline-terminated.
std::string game_log_jsonl(const game::GameResult& result);
Json game_summary(const game::GameResult& result);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j, int indent = 2);

}  // namespace cuecoach::io
