#include "cuecoach/physics/table.hpp"

#include <cmath>

#include "cuecoach/common/error.hpp"

namespace cuecoach::physics {

namespace {

constexpr std::array<std::string_view, kBallCount> kBallNames = {
    "cue", "blue", "red", "yellow", "green", "black", "pink"};
constexpr std::array<std::string_view, 6> kPocketNames = {"lt", "rt", "lc", "rc", "lb", "rb"};

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(BallId id) { return kBallNames[index(id)]; }

std::optional<BallId> parse_ball_id(std::string_view text) {
  for (std::size_t i = 0; i < kBallNames.size(); ++i) {
    if (iequals(text, kBallNames[i])) return static_cast<BallId>(i);
  }
  return std::nullopt;
}

bool name_less(BallId a, BallId b) { return to_string(a) < to_string(b); }

std::string_view to_string(PocketId id) { return kPocketNames[index(id)]; }

std::optional<PocketId> parse_pocket_id(std::string_view text) {
  for (std::size_t i = 0; i < kPocketNames.size(); ++i) {
    if (iequals(text, kPocketNames[i])) return static_cast<PocketId>(i);
  }
  return std::nullopt;
}

Vec2 TableSpec::pocket_position(PocketId id) const {
  switch (id) {
    case PocketId::LT: return {0.0, length};
    case PocketId::RT: return {width, length};
    case PocketId::LC: return {0.0, length / 2.0};
    case PocketId::RC: return {width, length / 2.0};
    case PocketId::LB: return {0.0, 0.0};
    case PocketId::RB: return {width, 0.0};
  }
  return {};
}

void TableSpec::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidInput(std::string("table spec: ") + what);
  };
  require(width > 0 && length > 0, "dimensions must be positive");
  require(ball_radius > 0 && pocket_radius > ball_radius, "pocket radius must exceed ball radius");
  require(mu_slide > 0 && mu_roll > 0 && gravity > 0, "friction and gravity must be positive");
  require(e_ball > 0 && e_ball <= 1 && e_cushion > 0 && e_cushion <= 1,
          "restitution must lie in (0, 1]");
  require(spin_retention >= 0 && spin_retention <= 1, "spin retention must lie in [0, 1]");
  require(dt > 0 && max_sim_time > 0 && frame_rate > 0, "time constants must be positive");
}

std::optional<std::string> check_invariants(const TableState& state, const TableSpec& spec,
                                            double overlap_eps) {
  const double r = spec.ball_radius;
  for (BallId id : kAllBalls) {
    const BallState& b = state.ball(id);
    if (!b.on_table) continue;
    if (!std::isfinite(b.pos.x) || !std::isfinite(b.pos.y)) {
      return std::string(to_string(id)) + " has a non-finite position";
    }
    if (b.pos.x < r || b.pos.x > spec.width - r || b.pos.y < r || b.pos.y > spec.length - r) {
      return std::string(to_string(id)) + " lies outside the playing area";
    }
  }
  for (std::size_t i = 0; i < kBallCount; ++i) {
    for (std::size_t j = i + 1; j < kBallCount; ++j) {
      const BallState& a = state.balls()[i];
      const BallState& b = state.balls()[j];
      if (!a.on_table || !b.on_table) continue;
      if (distance(a.pos, b.pos) < 2 * r - overlap_eps) {
        return std::string(to_string(kAllBalls[i])) + " overlaps " +
               std::string(to_string(kAllBalls[j]));
      }
    }
  }
  return std::nullopt;
}

}  // namespace cuecoach::physics
