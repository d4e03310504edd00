#pragma once

#include <array>
#include <optional>
#include <utility>

#include "cuecoach/common/vec.hpp"
#include "cuecoach/physics/shot.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::physics {

/// Linear velocity (units/s) and angular velocity (rad/s) of one ball.
/// w.x / w.y are the rolling axes; w.z is sidespin.
struct BallMotion {
  Vec2 v;
  Vec3 w;

  bool operator==(const BallMotion&) const = default;
  bool at_rest() const { return v.x == 0.0 && v.y == 0.0 && w.x == 0.0 && w.y == 0.0; }
};

using BallKinematics = std::array<BallMotion, kBallCount>;

/// Spin imparted per unit offset per unit speed, k_s = k_t = 5 / R.
struct SpinMap {
  double k_side;
  double k_top;
  double k_elevation = 1.0;

  static SpinMap for_spec(const TableSpec& spec) {
    return {5.0 / spec.ball_radius, 5.0 / spec.ball_radius, 1.0};
  }
};

/// Cue ball motion right after the strike. The linear speed is v cos(beta)
/// along the azimuth; the topspin magnitude k_t b v (1 + sin beta) acts
/// about z x direction, and sidespin is k_s a v about +z.
BallMotion cue_impulse(const ShotParams& shot, const TableSpec& spec);

/// Topspin component (rad/s) about the axis perpendicular to `direction`.
double topspin(const BallMotion& m, Vec2 direction);

/// Equal-mass restitution on the normal component. `n` points from ball 1 to
/// ball 2. Returns the inputs unchanged when the balls are not approaching.
std::pair<Vec2, Vec2> resolve_ball_ball(Vec2 v1, Vec2 v2, Vec2 n, double e_ball);

/// Cushion rebound. `wall_normal` points into the table. Returns the inputs
/// unchanged when the ball is not moving into the cushion.
std::pair<Vec2, double> resolve_cushion(Vec2 v, Vec2 wall_normal, double e_cushion,
                                        double sidespin, double spin_retention);

/// Nearest pocket whose centre lies within the capture radius (inclusive).
std::optional<PocketId> check_pocket(Vec2 ball_pos, const TableSpec& spec);

double kinetic_energy(const BallMotion& m, const TableSpec& spec);

}  // namespace cuecoach::physics
