#include "cuecoach/physics/events.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cuecoach::physics {

Event Event::ball_ball(BallId a, BallId b, Vec2 pos, double t) {
  Event e;
  e.kind = EventKind::BallBall;
  e.ball = a;
  e.ball2 = b;
  e.pos = pos;
  e.t = t;
  return e;
}

Event Event::ball_cushion(BallId a, Vec2 pos, double t) {
  Event e;
  e.kind = EventKind::BallCushion;
  e.ball = a;
  e.pos = pos;
  e.t = t;
  return e;
}

Event Event::ball_pocket(BallId a, PocketId p, Vec2 pos, double t) {
  Event e;
  e.kind = EventKind::BallPocket;
  e.ball = a;
  e.pocket = p;
  e.pos = pos;
  e.t = t;
  return e;
}

std::string Event::to_text() const {
  std::string out;
  switch (kind) {
    case EventKind::BallBall:
      out = "BALL-BALL-";
      out += to_string(ball);
      out += '-';
      out += to_string(ball2);
      break;
    case EventKind::BallCushion:
      out = "BALL-CUSHION-";
      out += to_string(ball);
      break;
    case EventKind::BallPocket:
      out = "BALL-POCKET-";
      out += to_string(ball);
      out += '-';
      out += to_string(pocket);
      break;
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_dash(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '-') {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::optional<Event> parse_event(std::string_view token) {
  token = trim(token);
  // Tolerate surrounding quotes or a trailing period from chatty responses.
  while (!token.empty() && (token.back() == '.' || token.back() == '"' || token.back() == '\'' ||
                            token.back() == '`')) {
    token.remove_suffix(1);
  }
  while (!token.empty() && (token.front() == '"' || token.front() == '\'' || token.front() == '`')) {
    token.remove_prefix(1);
  }
  const auto parts = split_dash(token);
  if (parts.size() < 3 || !iequals(parts[0], "BALL")) return std::nullopt;
  const std::string_view kind = parts[1];
  if (iequals(kind, "BALL") && parts.size() == 4) {
    auto a = parse_ball_id(parts[2]);
    auto b = parse_ball_id(parts[3]);
    if (!a || !b || *a == *b) return std::nullopt;
    return Event::ball_ball(*a, *b);
  }
  if (iequals(kind, "CUSHION") && parts.size() == 3) {
    auto a = parse_ball_id(parts[2]);
    if (!a) return std::nullopt;
    return Event::ball_cushion(*a);
  }
  if (iequals(kind, "POCKET") && parts.size() == 4) {
    auto a = parse_ball_id(parts[2]);
    auto p = parse_pocket_id(parts[3]);
    if (!a || !p) return std::nullopt;
    return Event::ball_pocket(*a, *p);
  }
  return std::nullopt;
}

std::string to_text(const EventSequence& events) {
  std::string out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i) out += ", ";
    out += events[i].to_text();
  }
  return out;
}

std::optional<std::string> check_trace(const EventSequence& events) {
  std::set<BallId> pocketed;
  double last_t = 0.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    if (!(e.t >= 0.0)) return "event " + std::to_string(i) + " has negative time";
    if (e.t < last_t) return "event " + std::to_string(i) + " is out of time order";
    last_t = e.t;
    for (BallId id : pocketed) {
      if (e.involves(id)) {
        return "event " + std::to_string(i) + " involves already pocketed " +
               std::string(to_string(id));
      }
    }
    if (e.kind == EventKind::BallPocket) pocketed.insert(e.ball);
  }
  return std::nullopt;
}

}  // namespace cuecoach::physics
