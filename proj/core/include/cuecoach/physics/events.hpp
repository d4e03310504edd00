#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cuecoach/common/vec.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::physics {

enum class EventKind : std::uint8_t { BallBall, BallCushion, BallPocket };

/// One entry of a shot trace. `ball2` is meaningful only for BallBall,
/// `pocket` only for BallPocket.
struct Event {
  EventKind kind = EventKind::BallCushion;
  BallId ball = BallId::Cue;
  BallId ball2 = BallId::Cue;
  PocketId pocket = PocketId::LT;
  Vec2 pos;
  double t = 0.0;

  static Event ball_ball(BallId a, BallId b, Vec2 pos = {}, double t = 0.0);
  static Event ball_cushion(BallId a, Vec2 pos = {}, double t = 0.0);
  static Event ball_pocket(BallId a, PocketId p, Vec2 pos = {}, double t = 0.0);

  bool involves(BallId id) const {
    return ball == id || (kind == EventKind::BallBall && ball2 == id);
  }

  // Canonical uppercase encoding, e.g. "BALL-BALL-cue-blue".
  std::string to_text() const;

  // Exact comparison including time and position.
  bool operator==(const Event&) const = default;
};

// Symbolic equality: kind and ids only; ball-ball pairs are unordered.
inline bool same_symbol(const Event& a, const Event& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case EventKind::BallBall:
      return (a.ball == b.ball && a.ball2 == b.ball2) || (a.ball == b.ball2 && a.ball2 == b.ball);
    case EventKind::BallCushion:
      return a.ball == b.ball;
    case EventKind::BallPocket:
      return a.ball == b.ball && a.pocket == b.pocket;
  }
  return false;
}

// Parses one event token (case-insensitive prefix). Returns nullopt when the
// token is malformed or names an unknown ball or pocket.
std::optional<Event> parse_event(std::string_view token);

using EventSequence = std::vector<Event>;

std::string to_text(const EventSequence& events);

// Describes the first violated trace invariant, or nullopt.
std::optional<std::string> check_trace(const EventSequence& events);

}  // namespace cuecoach::physics
