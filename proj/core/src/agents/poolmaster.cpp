#include "cuecoach/agents/poolmaster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "cuecoach/common/error.hpp"
#include "cuecoach/common/random.hpp"
#include "cuecoach/game/game.hpp"
#include "cuecoach/physics/simulator.hpp"
#include "cuecoach/rules/geometry.hpp"

namespace cuecoach::agents {

using physics::BallId;
using physics::PocketId;
using physics::ShotParams;
using physics::TableState;

void PoolMasterConfig::validate() const {
  if (grid != 15 && grid != 30) throw InvalidInput("poolmaster grid must be 15 or 30");
  for (const auto* levels : {&speed_levels, &elevation_levels, &side_levels, &follow_levels}) {
    if (levels->size() < 2) throw InvalidInput("poolmaster needs at least two levels per parameter");
  }
  if (max_aims < 1) throw InvalidInput("poolmaster max_aims must be positive");
  if (robust_top < 0 || robust_samples < 0 || !robust_noise.valid()) {
    throw InvalidInput("poolmaster robustness settings must be non-negative");
  }
}

PoolMasterAgent::PoolMasterAgent(PoolMasterConfig cfg, physics::TableSpec spec)
    : cfg_(std::move(cfg)), spec_(spec) {
  cfg_.validate();
}

namespace {

struct Aim {
  BallId object = BallId::Cue;
  double alpha = 0.0;
  double coefficient = 0.0;  // (1 - distance)(1 - cut)
  double prior = 0.0;        // ranking score, includes obstruction
};

double azimuth(Vec2 from, Vec2 to) {
  const Vec2 d = to - from;
  return rad2deg(std::atan2(d.y, d.x));
}

std::vector<Aim> candidate_aims(const TableState& state, std::span<const BallId> targets,
                                const physics::TableSpec& spec, bool banks) {
  const double r = spec.ball_radius;
  const Vec2 cue = state.pos(BallId::Cue);
  std::vector<Aim> aims;
  for (BallId id : targets) {
    if (!state.on_table(id)) continue;
    const Vec2 obj = state.pos(id);
    for (PocketId p : physics::kAllPockets) {
      const Vec2 hole = spec.pocket_position(p);
      const rules::PotGeometry g = rules::pot_geometry(state, cue, id, p, spec);
      if (g.cut_deg < 85.0) {
        const double coef =
            (1.0 - rules::distance_term(g.path_length)) * (1.0 - rules::cut_term(g.cut_deg));
        aims.push_back({id, azimuth(cue, g.ghost), coef,
                        coef * (1.0 - rules::obstacle_term(g.blockers))});
      }
      if (!banks) continue;
      // One-cushion kick: aim at the ghost ball mirrored across a cushion line.
      const Vec2 mirrors[] = {{2.0 * r - g.ghost.x, g.ghost.y},
                              {2.0 * (spec.width - r) - g.ghost.x, g.ghost.y},
                              {g.ghost.x, 2.0 * r - g.ghost.y},
                              {g.ghost.x, 2.0 * (spec.length - r) - g.ghost.y}};
      for (Vec2 m : mirrors) {
        const double cue_leg = distance(cue, m);
        const double path = cue_leg + distance(obj, hole);
        const double coef = (1.0 - rules::distance_term(path)) * (1.0 - rules::cut_term(g.cut_deg));
        // Banks are ranked below comparable direct shots.
        aims.push_back({id, azimuth(cue, m), coef, 0.5 * coef});
      }
    }
  }
  std::stable_sort(aims.begin(), aims.end(),
                   [](const Aim& a, const Aim& b) { return a.prior > b.prior; });
  return aims;
}

/// Centre of the grid cell with the easiest next pot for the remaining targets.
std::optional<Vec2> best_position_cell(const TableState& state, std::span<const BallId> remaining,
                                       const physics::TableSpec& spec, int grid) {
  if (remaining.empty()) return std::nullopt;
  const int nx = grid;
  const int ny = 2 * grid;
  double best = -1.0;
  Vec2 cell;
  for (int gy = 0; gy < ny; ++gy) {
    for (int gx = 0; gx < nx; ++gx) {
      const Vec2 c{(gx + 0.5) * spec.width / nx, (gy + 0.5) * spec.length / ny};
      bool clear = true;
      for (BallId id : physics::kColourBalls) {
        if (state.on_table(id) && distance(state.pos(id), c) < 2.0 * spec.ball_radius) clear = false;
      }
      if (!clear) continue;
      const auto option = rules::easiest_pot(state, c, remaining, spec);
      if (option && option->easiness > best) {
        best = option->easiness;
        cell = c;
      }
    }
  }
  if (best < 0.0) return std::nullopt;
  return cell;
}

}  // namespace

ShotParams PoolMasterAgent::select_shot(const TableState& state, std::span<const BallId> targets,
                                        std::uint64_t seed) const {
  if (!state.on_table(BallId::Cue)) return {};
  std::vector<BallId> own;
  for (BallId id : targets) {
    if (state.on_table(id)) own.push_back(id);
  }
  if (own.empty()) return {};
  const auto opponent = opponent_targets(targets);

  auto aims = candidate_aims(state, own, spec_, cfg_.bank_shots);
  if (aims.size() > static_cast<std::size_t>(cfg_.max_aims)) {
    aims.resize(static_cast<std::size_t>(cfg_.max_aims));
  }
  if (aims.empty()) {
    // Every target is a back-cut from here; fall back to a straight roll at the nearest one.
    aims.push_back({own.front(), azimuth(state.pos(BallId::Cue), state.pos(own.front())), 0.1, 0.0});
  }

  // Next-shot position target per aimed ball, assuming it drops.
  std::map<BallId, std::optional<Vec2>> position_cell;
  auto cell_for = [&](BallId aimed) -> const std::optional<Vec2>& {
    auto it = position_cell.find(aimed);
    if (it != position_cell.end()) return it->second;
    TableState after = state;
    after.remove(aimed);
    std::vector<BallId> rest;
    for (BallId id : own) {
      if (id != aimed) rest.push_back(id);
    }
    return position_cell.emplace(aimed, best_position_cell(after, rest, spec_, cfg_.grid))
        .first->second;
  };

  const double diag = std::sqrt(spec_.width * spec_.width + spec_.length * spec_.length);
  auto score_shot = [&](const Aim& aim, const ShotParams& shot, bool* foul = nullptr) {
    const auto sim = physics::simulate(state, shot, spec_);
    const auto ruling = game::judge_shot(state, sim.post, sim.trace, targets);
    const int own_potted = static_cast<int>(ruling.potted_own.size());
    const int opp_potted = static_cast<int>(ruling.potted_other.size());
    double position = 0.0;
    if (sim.post.on_table(BallId::Cue)) {
      if (!ruling.foul && own_potted > 0) {
        const auto& cell = cell_for(aim.object);
        position = cell ? 1.0 - clamp01(distance(sim.post.pos(BallId::Cue), *cell) / diag) : 1.0;
      } else {
        const auto opp = rules::easiest_pot(sim.post, sim.post.pos(BallId::Cue), opponent, spec_);
        position = 1.0 - (opp ? opp->easiness : 0.0);
      }
    }
    const double gain = cfg_.pot_score * (own_potted - 0.5 * opp_potted) +
                        cfg_.position_weight * position;
    if (foul) *foul = ruling.foul;
    return aim.coefficient * gain - (ruling.foul ? cfg_.foul_penalty : 0.0);
  };

  struct Scored {
    double score;
    std::size_t aim;
    ShotParams shot;
    bool foul;
  };
  std::vector<Scored> scored;
  for (std::size_t ai = 0; ai < aims.size(); ++ai) {
    const Aim& aim = aims[ai];
    auto make = [&](double v, double beta, double a, double b) {
      return ShotParams::make_clamped(v, aim.alpha, beta, a, b);
    };
    auto consider = [&](const ShotParams& shot, double& local_best, ShotParams& local_shot) {
      bool foul = false;
      const double s = score_shot(aim, shot, &foul);
      if (s > local_best) {
        local_best = s;
        local_shot = shot;
      }
      scored.push_back({s, ai, shot, foul});
    };

    double local_best = -1e300;
    ShotParams local = make(cfg_.speed_levels.front(), 0.0, 0.0, 0.0);
    if (cfg_.full_factorial) {
      for (double v : cfg_.speed_levels)
        for (double beta : cfg_.elevation_levels)
          for (double a : cfg_.side_levels)
            for (double b : cfg_.follow_levels) consider(make(v, beta, a, b), local_best, local);
      continue;
    }
    // One parameter at a time: speed, follow/draw, side, elevation.
    for (double v : cfg_.speed_levels) consider(make(v, 0.0, 0.0, 0.0), local_best, local);
    for (double b : cfg_.follow_levels) {
      if (b != local.b) consider(make(local.v, local.beta, local.a, b), local_best, local);
    }
    for (double a : cfg_.side_levels) {
      if (a != local.a) consider(make(local.v, local.beta, a, local.b), local_best, local);
    }
    for (double beta : cfg_.elevation_levels) {
      if (beta != local.beta) consider(make(local.v, beta, local.a, local.b), local_best, local);
    }
  }
  const auto legal = [](const Scored& c) { return !c.foul; };
  if (std::none_of(scored.begin(), scored.end(), legal)) {
    // Every pot attempt fouls: look for any legal contact, directly or off one cushion.
    const double r = spec_.ball_radius;
    const Vec2 cue = state.pos(BallId::Cue);
    for (BallId id : own) {
      const Vec2 o = state.pos(id);
      const Vec2 images[] = {o,
                             {2.0 * r - o.x, o.y},
                             {2.0 * (spec_.width - r) - o.x, o.y},
                             {o.x, 2.0 * r - o.y},
                             {o.x, 2.0 * (spec_.length - r) - o.y}};
      for (Vec2 m : images) {
        aims.push_back({id, azimuth(cue, m), 0.1, 0.0});
        for (double v : cfg_.speed_levels) {
          const auto shot = ShotParams::make_clamped(v, aims.back().alpha, 0.0, 0.0, 0.0);
          bool foul = false;
          const double sc = score_shot(aims.back(), shot, &foul);
          scored.push_back({sc, aims.size() - 1, shot, foul});
        }
      }
    }
  }
  // Highest score first; ties keep sweep order. Legal shots always outrank fouls.
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.foul != b.foul) return !a.foul;
    return a.score > b.score;
  });
  if (cfg_.robust_top == 0 || cfg_.robust_samples == 0 || cfg_.robust_noise.is_zero()) {
    return scored.front().shot;
  }
  const std::size_t top = std::min(
      static_cast<std::size_t>(std::count_if(scored.begin(), scored.end(), legal)),
      static_cast<std::size_t>(cfg_.robust_top));
  if (top == 0) return scored.front().shot;
  std::size_t best = 0;
  double best_mean = -1e300;
  for (std::size_t i = 0; i < top; ++i) {
    Rng rng(derive_seed(seed, i));
    double sum = scored[i].score;
    for (int k = 0; k < cfg_.robust_samples; ++k) {
      sum += score_shot(aims[scored[i].aim], game::apply_noise(scored[i].shot, cfg_.robust_noise, rng));
    }
    const double mean = sum / (cfg_.robust_samples + 1);
    if (mean > best_mean) {
      best_mean = mean;
      best = i;
    }
  }
  return scored[best].shot;
}

}  // namespace cuecoach::agents
