#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cuecoach/common/vec.hpp"

namespace cuecoach::physics {

enum class BallId : std::uint8_t { Cue, Blue, Red, Yellow, Green, Black, Pink };

inline constexpr std::size_t kBallCount = 7;
inline constexpr std::array<BallId, kBallCount> kAllBalls = {
    BallId::Cue, BallId::Blue, BallId::Red, BallId::Yellow,
    BallId::Green, BallId::Black, BallId::Pink};
inline constexpr std::array<BallId, 6> kColourBalls = {
    BallId::Blue, BallId::Red, BallId::Yellow, BallId::Green, BallId::Black, BallId::Pink};

constexpr std::size_t index(BallId id) { return static_cast<std::size_t>(id); }

std::string_view to_string(BallId id);
std::optional<BallId> parse_ball_id(std::string_view text);
// Orders ball ids by their lowercase names; used to break simultaneous-event ties.
bool name_less(BallId a, BallId b);

enum class PocketId : std::uint8_t { LT, RT, LC, RC, LB, RB };

inline constexpr std::array<PocketId, 6> kAllPockets = {
    PocketId::LT, PocketId::RT, PocketId::LC, PocketId::RC, PocketId::LB, PocketId::RB};

constexpr std::size_t index(PocketId id) { return static_cast<std::size_t>(id); }

std::string_view to_string(PocketId id);
std::optional<PocketId> parse_pocket_id(std::string_view text);

/// Geometry and material constants of the 1 x 2 table.
struct TableSpec {
  double width = 1.0;
  double length = 2.0;
  double ball_radius = 0.026;
  double pocket_radius = 0.052;
  double mu_slide = 0.2;
  double mu_roll = 0.01;
  // Angular deceleration of sidespin (rad/s^2).
  double spin_decay = 10.9;
  double e_ball = 0.95;
  double e_cushion = 0.85;
  double spin_retention = 0.7;
  double gravity = 9.81;
  double rest_speed = 1e-3;
  double max_sim_time = 30.0;
  double dt = 1e-3;
  double frame_rate = 30.0;

  Vec2 pocket_position(PocketId id) const;
  // Throws InvalidInput when a constant violates its bounds.
  void validate() const;
};

struct BallState {
  Vec2 pos;
  bool on_table = false;

  bool operator==(const BallState&) const = default;
};

/// Positions and on-table flags of all seven balls. Off-table balls keep
/// their entry (and last position) with on_table = false.
class TableState {
 public:
  TableState() = default;

  const BallState& ball(BallId id) const { return balls_[index(id)]; }
  BallState& ball(BallId id) { return balls_[index(id)]; }
  const std::array<BallState, kBallCount>& balls() const { return balls_; }

  void place(BallId id, Vec2 pos) { balls_[index(id)] = {pos, true}; }
  void remove(BallId id) { balls_[index(id)].on_table = false; }
  bool on_table(BallId id) const { return balls_[index(id)].on_table; }
  Vec2 pos(BallId id) const { return balls_[index(id)].pos; }

  bool operator==(const TableState&) const = default;

 private:
  std::array<BallState, kBallCount> balls_{};
};

/// Describes the first violated TableState invariant, or nullopt when valid.
std::optional<std::string> check_invariants(const TableState& state, const TableSpec& spec,
                                            double overlap_eps = 1e-9);

}  // namespace cuecoach::physics
