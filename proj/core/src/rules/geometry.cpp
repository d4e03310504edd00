#include "cuecoach/rules/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace cuecoach::rules {

namespace {
const double kDiagonal = std::sqrt(5.0);
}

Vec2 ghost_ball(Vec2 object, Vec2 target, double radius) {
  return object - (target - object).unit() * (2.0 * radius);
}

double cut_angle_deg(Vec2 cue, Vec2 object, Vec2 target, double radius) {
  const Vec2 ghost = ghost_ball(object, target, radius);
  const Vec2 approach = (ghost - cue).unit();
  const Vec2 departure = (target - object).unit();
  if (approach.norm2() == 0.0 || departure.norm2() == 0.0) return 0.0;
  const double c = std::clamp(approach.dot(departure), -1.0, 1.0);
  return rad2deg(std::acos(c));
}

int corridor_blockers(const TableState& state, Vec2 from, Vec2 to, std::span<const BallId> skip,
                      double radius) {
  int count = 0;
  for (BallId id : physics::kAllBalls) {
    if (!state.on_table(id)) continue;
    if (std::find(skip.begin(), skip.end(), id) != skip.end()) continue;
    if (segment_distance(state.pos(id), from, to) < 2.0 * radius) ++count;
  }
  return count;
}

PotGeometry pot_geometry(const TableState& state, Vec2 cue, BallId object, PocketId pocket,
                         const TableSpec& spec) {
  const double r = spec.ball_radius;
  const Vec2 obj = state.pos(object);
  const Vec2 hole = spec.pocket_position(pocket);
  PotGeometry g;
  g.pocket = pocket;
  g.ghost = ghost_ball(obj, hole, r);
  g.path_length = distance(cue, obj) + distance(obj, hole);
  g.cut_deg = cut_angle_deg(cue, obj, hole, r);
  const BallId skip[] = {BallId::Cue, object};
  g.blockers = corridor_blockers(state, cue, g.ghost, skip, r) +
               corridor_blockers(state, obj, hole, skip, r);
  return g;
}

double distance_term(double path_length) { return clamp01(path_length / kDiagonal); }

double cut_term(double cut_deg) { return clamp01(cut_deg / 90.0); }

double obstacle_term(int blockers) { return 1.0 - std::exp(-0.7 * blockers); }

double easiness(const PotGeometry& g) {
  if (g.cut_deg >= 90.0) return 0.0;
  return (1.0 - distance_term(g.path_length)) * (1.0 - cut_term(g.cut_deg)) *
         (1.0 - obstacle_term(g.blockers));
}

std::optional<PotOption> easiest_pot(const TableState& state, Vec2 cue,
                                     std::span<const BallId> targets, const TableSpec& spec) {
  std::optional<PotOption> best;
  for (BallId id : targets) {
    if (!state.on_table(id) || id == BallId::Cue) continue;
    for (PocketId p : physics::kAllPockets) {
      const PotGeometry g = pot_geometry(state, cue, id, p, spec);
      const double e = easiness(g);
      if (!best || e > best->easiness) best = PotOption{id, g, e};
    }
  }
  return best;
}

std::vector<double> best_pot_easiness(const TableState& state, Vec2 cue,
                                      std::span<const BallId> targets, const TableSpec& spec) {
  std::vector<double> out;
  for (BallId id : targets) {
    if (!state.on_table(id) || id == BallId::Cue) continue;
    double best = 0.0;
    for (PocketId p : physics::kAllPockets) {
      best = std::max(best, easiness(pot_geometry(state, cue, id, p, spec)));
    }
    out.push_back(best);
  }
  return out;
}

double rail_gap(Vec2 pos, const TableSpec& spec) {
  const double r = spec.ball_radius;
  const double gap = std::min({pos.x - r, spec.width - r - pos.x, pos.y - r,
                               spec.length - r - pos.y});
  return std::max(0.0, gap);
}

double rail_proximity(Vec2 pos, const TableSpec& spec) {
  return clamp01(1.0 - rail_gap(pos, spec) / (2.0 * spec.ball_radius));
}

}  // namespace cuecoach::rules
