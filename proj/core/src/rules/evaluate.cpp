#include <algorithm>
#include <cmath>

#include "cuecoach/physics/simulator.hpp"
#include "cuecoach/rules/geometry.hpp"
#include "cuecoach/rules/rules.hpp"

namespace cuecoach::rules {

using physics::Event;
using physics::EventKind;
using physics::PocketId;

RuleContext make_context(const TableState& pre, const ShotParams& shot,
                         std::vector<BallId> shooter_targets, std::vector<BallId> opponent_targets,
                         const TableSpec& spec) {
  physics::SimResult sim = physics::simulate(pre, shot, spec);
  return RuleContext{pre,
                     shot,
                     std::move(sim.post),
                     std::move(sim.trace),
                     std::move(shooter_targets),
                     std::move(opponent_targets),
                     spec};
}

namespace {

constexpr double kGroupingDistance = 0.3;
constexpr double kClusterGap = 0.1;
constexpr double kFrozenGap = 1e-4;
constexpr double kMakable = 0.3;
constexpr int kGridX = 5;
constexpr int kGridY = 10;

double exp_count(int k) { return 1.0 - std::pow(2.0, -static_cast<double>(std::max(0, k))); }

bool contains(const std::vector<BallId>& ids, BallId id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<BallId> on_table(const TableState& s, const std::vector<BallId>& ids) {
  std::vector<BallId> out;
  for (BallId id : ids) {
    if (s.on_table(id)) out.push_back(id);
  }
  return out;
}

/// Facts about the trace shared by several evaluators.
struct Analysis {
  std::optional<std::size_t> first_contact;  // index of the first cue ball-ball event
  std::optional<BallId> first_object;
  // The ball the shot is read as attacking: the first contact when it is a
  // shooter target, else the nearest shooter target (proxy path).
  std::optional<BallId> object;
  PocketId pocket = PocketId::LT;
  std::optional<std::size_t> first_pot;  // first colour-ball pocket event
  int own_potted = 0;
  std::vector<Vec2> cue_path;
};

Analysis analyse(const RuleContext& ctx) {
  Analysis a;
  const auto& trace = ctx.trace;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Event& e = trace[i];
    if (!a.first_contact && e.kind == EventKind::BallBall && e.involves(BallId::Cue)) {
      a.first_contact = i;
      a.first_object = e.ball == BallId::Cue ? e.ball2 : e.ball;
    }
    if (e.kind == EventKind::BallPocket && e.ball != BallId::Cue) {
      if (!a.first_pot) a.first_pot = i;
      if (contains(ctx.shooter_targets, e.ball)) ++a.own_potted;
    }
  }

  const Vec2 cue = ctx.pre.pos(BallId::Cue);
  if (a.first_object && contains(ctx.shooter_targets, *a.first_object)) {
    a.object = a.first_object;
  } else {
    double best = 0.0;
    for (BallId id : ctx.shooter_targets) {
      if (!ctx.pre.on_table(id)) continue;
      const double d = distance(cue, ctx.pre.pos(id));
      if (!a.object || d < best) {
        a.object = id;
        best = d;
      }
    }
  }

  if (a.object) {
    bool found = false;
    for (const Event& e : trace) {
      if (e.kind == EventKind::BallPocket && e.ball == *a.object) {
        a.pocket = e.pocket;
        found = true;
        break;
      }
    }
    if (!found) {
      // The pocket the object is most naturally played into.
      double best = -1.0;
      for (PocketId p : physics::kAllPockets) {
        const double e = easiness(pot_geometry(ctx.pre, cue, *a.object, p, ctx.spec));
        const double d = distance(ctx.pre.pos(*a.object), ctx.spec.pocket_position(p));
        const double score = e - 1e-6 * d;
        if (score > best) {
          best = score;
          a.pocket = p;
        }
      }
    }
  }

  a.cue_path.push_back(cue);
  for (const Event& e : trace) {
    if (e.involves(BallId::Cue)) a.cue_path.push_back(e.pos);
  }
  if (ctx.post.on_table(BallId::Cue)) a.cue_path.push_back(ctx.post.pos(BallId::Cue));
  return a;
}

double path_distance_to(const std::vector<Vec2>& path, Vec2 p, std::size_t from = 0) {
  if (path.empty()) return 1e9;
  double best = distance(path[std::min(from, path.size() - 1)], p);
  for (std::size_t i = from; i + 1 < path.size(); ++i) {
    best = std::min(best, segment_distance(p, path[i], path[i + 1]));
  }
  return best;
}

/// Cut angle of the first cue contact with a shooter target, read from the
/// contact point and the cue's last position before it.
std::optional<double> contact_cut_deg(const RuleContext& ctx) {
  const double r = ctx.spec.ball_radius;
  Vec2 start = ctx.pre.pos(BallId::Cue);
  for (std::size_t i = 0; i < ctx.trace.size(); ++i) {
    const Event& e = ctx.trace[i];
    if (!e.involves(BallId::Cue)) continue;
    if (e.kind != EventKind::BallBall) {
      start = e.pos;
      continue;
    }
    const BallId other = e.ball == BallId::Cue ? e.ball2 : e.ball;
    if (!contains(ctx.shooter_targets, other)) {
      start = e.pos;
      continue;
    }
    bool moved = false;
    for (std::size_t j = 0; j < i; ++j) moved = moved || ctx.trace[j].involves(other);
    const Vec2 obj = ctx.pre.pos(other);
    if (moved) {
      return cut_angle_deg(ctx.pre.pos(BallId::Cue), obj, obj + (obj - e.pos), r);
    }
    const Vec2 cue_at_contact = e.pos * 2.0 - obj;
    const Vec2 approach = (cue_at_contact - start).unit();
    const Vec2 normal = (obj - cue_at_contact).unit();
    if (approach.norm2() == 0.0 || normal.norm2() == 0.0) return 0.0;
    return std::min(90.0, rad2deg(std::acos(std::clamp(approach.dot(normal), -1.0, 1.0))));
  }
  return std::nullopt;
}

/// Easiness grid of each target over coarse cue positions.
std::vector<std::vector<bool>> makable_grid(const TableState& s, const std::vector<BallId>& targets,
                                            const TableSpec& spec) {
  std::vector<std::vector<bool>> grid;
  for (BallId id : targets) {
    std::vector<bool> cells;
    cells.reserve(kGridX * kGridY);
    for (int gy = 0; gy < kGridY; ++gy) {
      for (int gx = 0; gx < kGridX; ++gx) {
        const Vec2 cue{(gx + 0.5) * spec.width / kGridX, (gy + 0.5) * spec.length / kGridY};
        bool ok = false;
        for (PocketId p : physics::kAllPockets) {
          if (easiness(pot_geometry(s, cue, id, p, spec)) >= kMakable) {
            ok = true;
            break;
          }
        }
        cells.push_back(ok);
      }
    }
    grid.push_back(std::move(cells));
  }
  return grid;
}

int frozen_contacts(const TableState& s, BallId id, const TableSpec& spec) {
  if (!s.on_table(id)) return 0;
  const double r = spec.ball_radius;
  int count = rail_gap(s.pos(id), spec) < kFrozenGap ? 1 : 0;
  for (BallId other : physics::kAllBalls) {
    if (other == id || !s.on_table(other)) continue;
    if (distance(s.pos(id), s.pos(other)) < 2.0 * r + kFrozenGap) ++count;
  }
  return count;
}

/// Viable one-cushion banks: the object's mirrored path to a pocket is clear
/// and reasonably short.
int bank_options(const TableState& s, BallId id, const TableSpec& spec) {
  const double r = spec.ball_radius;
  const Vec2 obj = s.pos(id);
  const BallId skip[] = {BallId::Cue, id};
  int count = 0;
  for (PocketId p : physics::kAllPockets) {
    const Vec2 hole = spec.pocket_position(p);
    const Vec2 mirrors[] = {{2.0 * r - hole.x, hole.y},
                            {2.0 * (spec.width - r) - hole.x, hole.y},
                            {hole.x, 2.0 * r - hole.y},
                            {hole.x, 2.0 * (spec.length - r) - hole.y}};
    for (Vec2 m : mirrors) {
      const double len = distance(obj, m);
      if (len < 1e-9 || len > std::sqrt(5.0)) continue;
      // Point where the path meets the cushion line.
      const Vec2 dir = (m - obj) / len;
      double t = len;
      if (m.x < r) t = (r - obj.x) / dir.x;
      else if (m.x > spec.width - r) t = (spec.width - r - obj.x) / dir.x;
      else if (m.y < r) t = (r - obj.y) / dir.y;
      else if (m.y > spec.length - r) t = (spec.length - r - obj.y) / dir.y;
      if (!(t > 0.0 && t < len)) continue;
      const Vec2 bounce = obj + dir * t;
      if (corridor_blockers(s, obj, bounce, skip, r) > 0) continue;
      if (corridor_blockers(s, bounce, hole, skip, r) > 0) continue;
      ++count;
    }
  }
  return count;
}

}  // namespace

RuleVector evaluate_rules(const RuleContext& ctx) {
  RuleVector r{};
  const auto& spec = ctx.spec;
  const auto& pre = ctx.pre;
  const auto& post = ctx.post;
  const double R = spec.ball_radius;
  const Analysis an = analyse(ctx);
  const Vec2 cue_pre = pre.pos(BallId::Cue);
  const bool cue_in_play = post.on_table(BallId::Cue);
  const Vec2 cue_post = post.pos(BallId::Cue);
  const auto own_post = on_table(post, ctx.shooter_targets);
  const auto opp_post = on_table(post, ctx.opponent_targets);
  const bool legal_contact = an.first_object && contains(ctx.shooter_targets, *an.first_object);

  // Difficulty geometry of the attempted pot.
  std::optional<PotGeometry> attempt;
  if (an.object) attempt = pot_geometry(pre, cue_pre, *an.object, an.pocket, spec);

  // 1: groupings of own balls left close together.
  {
    int pairs = 0;
    for (std::size_t i = 0; i < own_post.size(); ++i) {
      for (std::size_t j = i + 1; j < own_post.size(); ++j) {
        if (distance(post.pos(own_post[i]), post.pos(own_post[j])) < kGroupingDistance) ++pairs;
      }
    }
    r[0] = clamp01(pairs / 3.0);
  }

  // 2 and 3: makable regions for own balls after the shot.
  {
    const auto grid = makable_grid(post, own_post, spec);
    if (!grid.empty()) {
      const std::size_t need = std::min<std::size_t>(2, grid.size());
      const std::size_t cells = grid.front().size();
      int overlap = 0;
      double insurance = 0.0;
      for (std::size_t c = 0; c < cells; ++c) {
        std::size_t k = 0;
        for (const auto& g : grid) k += g[c] ? 1 : 0;
        if (k >= need) ++overlap;
      }
      for (const auto& g : grid) {
        insurance = std::max(insurance,
                             static_cast<double>(std::count(g.begin(), g.end(), true)) / cells);
      }
      r[1] = clamp01(static_cast<double>(overlap) / cells);
      r[2] = clamp01(insurance);
    }
  }

  // 4: clusters involving own balls that the shot broke up.
  {
    int clustered = 0;
    int broken = 0;
    for (BallId a : ctx.shooter_targets) {
      if (!pre.on_table(a)) continue;
      for (BallId b : physics::kColourBalls) {
        if (b == a || !pre.on_table(b)) continue;
        if (contains(ctx.shooter_targets, b) && b < a) continue;
        if (distance(pre.pos(a), pre.pos(b)) - 2.0 * R >= kClusterGap) continue;
        ++clustered;
        const bool gone = !post.on_table(a) || !post.on_table(b);
        if (gone || distance(post.pos(a), post.pos(b)) - 2.0 * R >= kClusterGap) ++broken;
      }
    }
    if (clustered > 0) {
      const double quality = an.own_potted > 0 ? 1.0 : 0.5;
      r[3] = clamp01(quality * broken / clustered);
    }
  }

  // 5 and 7: what the opponent is left with.
  double opp_best = 0.0;
  double opp_mean = 0.0;
  if (cue_in_play && !opp_post.empty()) {
    const auto ease = best_pot_easiness(post, cue_post, opp_post, spec);
    for (double e : ease) {
      opp_best = std::max(opp_best, e);
      opp_mean += e;
    }
    opp_mean /= static_cast<double>(ease.size());
    r[4] = clamp01(1.0 - opp_best);
    r[6] = clamp01(1.0 - opp_mean);
  }

  // 13: potting priority.
  {
    int before = 0;
    for (BallId id : ctx.shooter_targets) before += pre.on_table(id) ? 1 : 0;
    r[12] = before > 0 ? clamp01(static_cast<double>(an.own_potted) / before) : 0.0;
  }

  // 6: offensive chance combined with the defensive leave.
  {
    const double offense = r[12] > 0.0 ? 1.0 : (attempt ? easiness(*attempt) : 0.0);
    r[5] = clamp01(std::sqrt(offense * r[4]));
  }

  // 8: progression through the remaining own balls from the cue's new spot.
  if (own_post.empty()) {
    r[7] = 1.0;
  } else if (cue_in_play) {
    const auto ease = best_pot_easiness(post, cue_post, own_post, spec);
    double sum = 0.0;
    for (double e : ease) sum += e;
    r[7] = clamp01(sum / static_cast<double>(ease.size()));
  }

  // 9: opponent balls the cue steered around.
  {
    const auto opp_pre = on_table(pre, ctx.opponent_targets);
    if (legal_contact && !opp_pre.empty()) {
      int touched = 0;
      for (BallId id : opp_pre) {
        for (const Event& e : ctx.trace) {
          if (e.kind == EventKind::BallBall && e.involves(BallId::Cue) && e.involves(id)) {
            ++touched;
            break;
          }
        }
      }
      r[8] = clamp01(1.0 - static_cast<double>(touched) / opp_pre.size());
    }
  }

  // 10: bank options left on own balls.
  {
    int options = 0;
    for (BallId id : own_post) options += bank_options(post, id, spec);
    r[9] = clamp01(1.0 - std::exp(-0.35 * options));
  }

  // 11: colour balls resting near a rail after the shot.
  for (BallId id : physics::kColourBalls) {
    if (post.on_table(id)) r[10] = std::max(r[10], rail_proximity(post.pos(id), spec));
  }

  // 12: pockets whose capture disc the cue's path crosses.
  {
    int near = 0;
    for (PocketId p : physics::kAllPockets) {
      if (path_distance_to(an.cue_path, spec.pocket_position(p)) <= spec.pocket_radius + R) ++near;
    }
    r[11] = clamp01(1.0 - std::exp(-0.7 * near));
  }

  // 14 to 16: distance, cut and obstacles of the attempted pot.
  if (attempt) {
    r[13] = distance_term(attempt->path_length);
    r[15] = obstacle_term(attempt->blockers);
  }
  const std::optional<double> cut = contact_cut_deg(ctx);
  if (cut) r[14] = cut_term(*cut);

  // 17: cushions the cue meets before its first ball contact.
  {
    int cushions = 0;
    const std::size_t end = an.first_contact.value_or(ctx.trace.size());
    for (std::size_t i = 0; i < end; ++i) {
      const Event& e = ctx.trace[i];
      if (e.kind == EventKind::BallCushion && e.ball == BallId::Cue) ++cushions;
    }
    r[16] = an.first_contact ? exp_count(cushions) : 0.0;
  }

  // 18 to 20 and 23: strike parameters.
  const auto& s = ctx.shot;
  r[17] = clamp01(std::abs(s.a) / 0.5);
  r[18] = clamp01(std::abs(s.v - 2.5) / 2.5);
  r[19] = clamp01(std::abs(s.b) / 0.5);
  r[22] = std::max(r[17], clamp01(s.beta / 90.0));

  // 21: cue or object ball tight on a rail.
  r[20] = rail_proximity(cue_pre, spec);
  if (an.object) r[20] = std::max(r[20], rail_proximity(pre.pos(*an.object), spec));

  // 22: how close the cue runs to a pocket after its first contact.
  if (an.first_contact) {
    std::size_t from = 1;
    for (std::size_t i = 0; i < *an.first_contact; ++i) {
      if (ctx.trace[i].involves(BallId::Cue)) ++from;
    }
    double closest = 1e9;
    for (PocketId p : physics::kAllPockets) {
      closest = std::min(closest, path_distance_to(an.cue_path, spec.pocket_position(p), from));
    }
    r[21] = clamp01(1.0 - (closest - spec.pocket_radius) / (2.0 * spec.pocket_radius));
  }

  // 24: frozen contacts of the cue and object ball.
  {
    int frozen = frozen_contacts(pre, BallId::Cue, spec);
    if (an.object) frozen += frozen_contacts(pre, *an.object, spec);
    r[23] = exp_count(frozen);
  }

  // 25: how many difficulty factors are significant at once.
  {
    int factors = 0;
    for (std::size_t i : {13u, 14u, 15u, 16u, 17u, 18u, 19u}) {
      if (r[i] >= kLikertEdges[3]) ++factors;
    }
    r[24] = exp_count(factors - 1);
  }

  // 26: cut- and English-induced throw, worse on long shots.
  {
    const double cut_throw = cut ? std::sin(deg2rad(*cut)) : 0.0;
    r[25] = clamp01(std::max(cut_throw, r[17]) * (0.5 + 0.5 * r[13]));
  }

  // 27: squirt and swerve from English at speed or with an elevated cue.
  r[26] = clamp01(r[17] * (1.0 + s.v / 5.0 + s.beta / 90.0) / 3.0);

  // 28 and 29: collisions and cushions behind the first pot.
  if (an.first_pot) {
    const BallId potted = ctx.trace[*an.first_pot].ball;
    int collisions = 0;
    int cushions = 0;
    for (std::size_t i = 0; i < *an.first_pot; ++i) {
      const Event& e = ctx.trace[i];
      if (e.kind == EventKind::BallBall) ++collisions;
      if (e.kind == EventKind::BallCushion && e.ball == potted) ++cushions;
    }
    r[27] = exp_count(collisions - 1);
    r[28] = exp_count(cushions);
  }

  for (double& x : r) x = clamp01(x);
  return r;
}

}  // namespace cuecoach::rules
