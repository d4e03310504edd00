#include "cuecoach/agents/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cuecoach/common/random.hpp"
#include "cuecoach/physics/simulator.hpp"
#include "cuecoach/rules/geometry.hpp"

namespace cuecoach::agents {

using physics::BallId;
using physics::EventKind;
using physics::ShotParams;

ShotParams GreedyAgent::select_shot(const physics::TableState& state,
                                    std::span<const BallId> targets, std::uint64_t seed) const {
  if (!state.on_table(BallId::Cue)) return {};
  Rng rng(seed);
  const Vec2 cue = state.pos(BallId::Cue);

  std::vector<ShotParams> candidates;
  for (BallId id : targets) {
    if (!state.on_table(id)) continue;
    const Vec2 obj = state.pos(id);
    physics::PocketId pocket = physics::PocketId::LT;
    double nearest = 1e9;
    for (auto p : physics::kAllPockets) {
      const double d = distance(obj, spec_.pocket_position(p));
      if (d < nearest) {
        nearest = d;
        pocket = p;
      }
    }
    const Vec2 ghost = rules::ghost_ball(obj, spec_.pocket_position(pocket), spec_.ball_radius);
    const Vec2 dir = ghost - cue;
    const double alpha = rad2deg(std::atan2(dir.y, dir.x));

    // Speed centred on a value that grows with the cue-object-pocket path.
    const double path = distance(cue, obj) + nearest;
    const double centre = 1.0 + 3.0 * clamp01(path / std::sqrt(5.0));
    const double v = rng.uniform(std::max(1.0, centre - 0.5), std::min(4.0, centre + 0.5));
    double a = 0.0;
    double b = 0.0;
    if (!rng.bernoulli(0.5)) {
      a = rng.uniform(-ShotParams::kMaxOffset, ShotParams::kMaxOffset);
      b = rng.uniform(-ShotParams::kMaxOffset, ShotParams::kMaxOffset);
    }
    candidates.push_back(ShotParams::make_clamped(v, alpha, 0.0, a, b));
  }
  if (candidates.empty()) return {};

  std::vector<std::size_t> best;
  int best_potted = -1;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto sim = physics::simulate(state, candidates[i], spec_);
    int potted = 0;
    for (const auto& e : sim.trace) {
      if (e.kind == EventKind::BallPocket &&
          std::find(targets.begin(), targets.end(), e.ball) != targets.end()) {
        ++potted;
      }
    }
    if (potted > best_potted) {
      best_potted = potted;
      best.clear();
    }
    if (potted == best_potted) best.push_back(i);
  }
  return candidates[best[static_cast<std::size_t>(rng.below(best.size()))]];
}

}  // namespace cuecoach::agents
