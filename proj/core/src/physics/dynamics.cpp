#include "cuecoach/physics/dynamics.hpp"

#include <cmath>
#include <limits>

namespace cuecoach::physics {

BallMotion cue_impulse(const ShotParams& shot, const TableSpec& spec) {
  const SpinMap spin = SpinMap::for_spec(spec);
  const double az = deg2rad(shot.alpha);
  const double el = deg2rad(shot.beta);
  const Vec2 dir{std::cos(az), std::sin(az)};
  BallMotion m;
  const double speed = shot.v * std::cos(el);
  m.v = dir * speed;
  const double top = spin.k_top * shot.b * shot.v * (1.0 + spin.k_elevation * std::sin(el));
  // Topspin rotates about z x dir so that a naturally rolling ball has top = speed / R.
  m.w.x = -dir.y * top;
  m.w.y = dir.x * top;
  m.w.z = spin.k_side * shot.a * shot.v;
  return m;
}

double topspin(const BallMotion& m, Vec2 direction) {
  const Vec2 d = direction.unit();
  return -d.y * m.w.x + d.x * m.w.y;
}

std::pair<Vec2, Vec2> resolve_ball_ball(Vec2 v1, Vec2 v2, Vec2 n, double e_ball) {
  const double u1 = v1.dot(n);
  const double u2 = v2.dot(n);
  if (u1 - u2 <= 0.0) return {v1, v2};
  const double w1 = 0.5 * ((1.0 - e_ball) * u1 + (1.0 + e_ball) * u2);
  const double w2 = 0.5 * ((1.0 + e_ball) * u1 + (1.0 - e_ball) * u2);
  return {v1 + n * (w1 - u1), v2 + n * (w2 - u2)};
}

std::pair<Vec2, double> resolve_cushion(Vec2 v, Vec2 wall_normal, double e_cushion,
                                        double sidespin, double spin_retention) {
  const double vn = v.dot(wall_normal);
  if (vn >= 0.0) return {v, sidespin};
  return {v - wall_normal * ((1.0 + e_cushion) * vn), sidespin * spin_retention};
}

std::optional<PocketId> check_pocket(Vec2 ball_pos, const TableSpec& spec) {
  std::optional<PocketId> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (PocketId p : kAllPockets) {
    const double d = distance(ball_pos, spec.pocket_position(p));
    if (d <= spec.pocket_radius && d < best_d) {
      best = p;
      best_d = d;
    }
  }
  return best;
}

double kinetic_energy(const BallMotion& m, const TableSpec& spec) {
  // Unit mass; moment of inertia 2/5 R^2.
  const double inertia = 0.4 * spec.ball_radius * spec.ball_radius;
  return 0.5 * m.v.norm2() + 0.5 * inertia * m.w.norm2();
}

}  // namespace cuecoach::physics
