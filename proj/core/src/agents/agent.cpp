#include "cuecoach/agents/agent.hpp"

#include <algorithm>

namespace cuecoach::agents {

std::vector<physics::BallId> opponent_targets(std::span<const physics::BallId> targets) {
  std::vector<physics::BallId> out;
  for (physics::BallId id : physics::kColourBalls) {
    if (std::find(targets.begin(), targets.end(), id) == targets.end()) out.push_back(id);
  }
  return out;
}

}  // namespace cuecoach::agents
