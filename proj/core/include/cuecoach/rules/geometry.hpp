#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cuecoach/common/vec.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::rules {

using physics::BallId;
using physics::PocketId;
using physics::TableSpec;
using physics::TableState;

/// Cue-ball centre at contact that sends `object` straight at `target`.
Vec2 ghost_ball(Vec2 object, Vec2 target, double radius);

/// Cut angle in degrees between the cue's approach to the ghost ball and the
/// object's departure line. Returns a value above 90 for back-cuts that cannot
/// be made directly.
double cut_angle_deg(Vec2 cue, Vec2 object, Vec2 target, double radius);

/// Number of on-table balls (other than those in `skip`) whose centres lie
/// within 2R of the segment [from, to].
int corridor_blockers(const TableState& state, Vec2 from, Vec2 to, std::span<const BallId> skip,
                      double radius);

/// Geometry of a direct pot of `object` into `pocket` with the cue at `cue`.
struct PotGeometry {
  PocketId pocket = PocketId::LT;
  Vec2 ghost;
  double path_length = 0.0;  // |cue - object| + |object - pocket|
  double cut_deg = 0.0;
  int blockers = 0;
};

PotGeometry pot_geometry(const TableState& state, Vec2 cue, BallId object, PocketId pocket,
                         const TableSpec& spec);

/// Normalized difficulty components shared by the distance, cut-angle and
/// obstacle rules.
double distance_term(double path_length);
double cut_term(double cut_deg);
double obstacle_term(int blockers);

/// (1 - distance)(1 - cut)(1 - obstruction); 0 for back-cuts.
double easiness(const PotGeometry& g);

struct PotOption {
  BallId object = BallId::Cue;
  PotGeometry geometry;
  double easiness = 0.0;
};

/// The easiest direct pot over the on-table `targets` and all pockets, with
/// the cue ball at `cue`. Empty when no target is on the table.
std::optional<PotOption> easiest_pot(const TableState& state, Vec2 cue,
                                     std::span<const BallId> targets, const TableSpec& spec);

/// Best-pocket easiness of each on-table target, in `targets` order.
std::vector<double> best_pot_easiness(const TableState& state, Vec2 cue,
                                      std::span<const BallId> targets, const TableSpec& spec);

/// Gap between the ball surface and the nearest cushion.
double rail_gap(Vec2 pos, const TableSpec& spec);

/// 1 when frozen to a rail, falling linearly to 0 at a gap of 2R.
double rail_proximity(Vec2 pos, const TableSpec& spec);

}  // namespace cuecoach::rules
