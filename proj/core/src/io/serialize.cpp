#include "cuecoach/io/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cuecoach/common/error.hpp"

namespace cuecoach::io {

using physics::BallId;
using physics::Event;
using physics::EventKind;

namespace {

double finite_number(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InvalidInput(where + ": missing numeric field '" + key + "'");
  }
  const double value = j.at(key).get<double>();
  if (!std::isfinite(value)) throw InvalidInput(where + ": non-finite '" + key + "'");
  return value;
}

Json ball_list(const std::vector<BallId>& ids) {
  Json out = Json::array();
  for (BallId id : ids) out.push_back(std::string(physics::to_string(id)));
  return out;
}

}  // namespace

Json to_json(const physics::TableState& state) {
  Json balls = Json::object();
  for (BallId id : physics::kAllBalls) {
    const auto& b = state.ball(id);
    balls[std::string(physics::to_string(id))] = {
        {"x", b.pos.x}, {"y", b.pos.y}, {"on_table", b.on_table}};
  }
  return {{"balls", balls}};
}

physics::TableState table_state_from_json(const Json& j, const physics::TableSpec& spec,
                                          bool validate) {
  if (!j.is_object() || !j.contains("balls") || !j.at("balls").is_object()) {
    throw InvalidInput("state must be an object with a 'balls' object");
  }
  physics::TableState state;
  for (const auto& [key, value] : j.at("balls").items()) {
    const auto id = physics::parse_ball_id(key);
    if (!id) throw InvalidInput("unknown ball id '" + key + "'");
    if (!value.is_object()) throw InvalidInput("ball '" + key + "' must be an object");
    const Vec2 pos{finite_number(value, "x", key), finite_number(value, "y", key)};
    bool on_table = true;
    if (value.contains("on_table")) {
      if (!value.at("on_table").is_boolean()) {
        throw InvalidInput("ball '" + key + "': on_table must be a boolean");
      }
      on_table = value.at("on_table").get<bool>();
    }
    state.place(*id, pos);
    if (!on_table) state.remove(*id);
  }
  if (validate) {
    if (auto problem = physics::check_invariants(state, spec)) throw InvalidInput(*problem);
  }
  return state;
}

Json to_json(const physics::ShotParams& shot) {
  return {{"v", shot.v},         {"alpha", shot.alpha}, {"beta", shot.beta},
          {"a", shot.a},         {"b", shot.b},         {"clamped", shot.clamped}};
}

physics::ShotParams shot_from_json(const Json& j, bool clamp) {
  if (!j.is_object()) throw InvalidInput("shot must be an object");
  const double v = finite_number(j, "v", "shot");
  const double alpha = finite_number(j, "alpha", "shot");
  const double beta = j.contains("beta") ? finite_number(j, "beta", "shot") : 0.0;
  const double a = j.contains("a") ? finite_number(j, "a", "shot") : 0.0;
  const double b = j.contains("b") ? finite_number(j, "b", "shot") : 0.0;
  if (clamp) return physics::ShotParams::make_clamped(v, alpha, beta, a, b);
  std::string reason;
  auto shot = physics::ShotParams::make_checked(v, alpha, beta, a, b, &reason);
  if (!shot) throw InvalidInput("shot out of bounds: " + reason);
  return *shot;
}

Json to_json(const Event& event) {
  Json j = {{"event", event.to_text()}, {"x", event.pos.x}, {"y", event.pos.y}, {"t", event.t}};
  switch (event.kind) {
    case EventKind::BallBall:
      j["kind"] = "ball_ball";
      j["balls"] = ball_list({event.ball, event.ball2});
      break;
    case EventKind::BallCushion:
      j["kind"] = "ball_cushion";
      j["balls"] = ball_list({event.ball});
      break;
    case EventKind::BallPocket:
      j["kind"] = "ball_pocket";
      j["balls"] = ball_list({event.ball});
      j["pocket"] = std::string(physics::to_string(event.pocket));
      break;
  }
  return j;
}

Json to_json(const physics::EventSequence& events) {
  Json out = Json::array();
  for (const auto& e : events) out.push_back(to_json(e));
  return out;
}

physics::EventSequence events_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("events must be an array");
  physics::EventSequence out;
  for (const auto& item : j) {
    const std::string text =
        item.is_string() ? item.get<std::string>() : item.value("event", std::string{});
    auto event = physics::parse_event(text);
    if (!event) throw InvalidInput("invalid event '" + text + "'");
    if (item.is_object()) {
      event->pos = {item.value("x", 0.0), item.value("y", 0.0)};
      event->t = item.value("t", 0.0);
    }
    out.push_back(*event);
  }
  return out;
}

Json to_json(const std::vector<physics::Frame>& frames) {
  Json out = Json::array();
  for (const auto& f : frames) {
    Json frame = to_json(f.state);
    frame["t"] = f.t;
    out.push_back(std::move(frame));
  }
  return out;
}

Json to_json(const game::ShotRuling& ruling) {
  return {{"foul", ruling.foul},
          {"foul_reason", std::string(game::to_string(ruling.foul_reason))},
          {"potted_own", ball_list(ruling.potted_own)},
          {"potted_other", ball_list(ruling.potted_other)},
          {"shooter_continues", ruling.shooter_continues}};
}

namespace {

std::string player_name(game::Player p) { return p == game::Player::One ? "player1" : "player2"; }

}  // namespace

std::string game_log_jsonl(const game::GameResult& result) {
  std::ostringstream out;
  for (std::size_t i = 0; i < result.log.size(); ++i) {
    const auto& shot = result.log[i];
    const Json line = {{"shot", i + 1},
                       {"turn", shot.turn},
                       {"shooter", player_name(shot.shooter)},
                       {"state", to_json(shot.state)},
                       {"intended", to_json(shot.intended)},
                       {"executed", to_json(shot.executed)},
                       {"trace", to_json(shot.trace)},
                       {"ruling", to_json(shot.ruling)}};
    out << line.dump() << '\n';
  }
  return out.str();
}

Json game_summary(const game::GameResult& result) {
  return {{"winner", player_name(result.winner)},
          {"turns", result.turns},
          {"shots", result.shots},
          {"capped", result.capped},
          {"final_state", to_json(result.final_state)}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw InvalidInput(path.string() + ": " + ex.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j, int indent) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << j.dump(indent) << '\n';
}

}  // namespace cuecoach::io
