#pragma once

#include "cuecoach/agents/agent.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::agents {

/// Ghost-ball aim at each target's closest pocket with randomly sampled
/// speed and spin; keeps the candidate that pots the most targets.
class GreedyAgent : public Agent {
 public:
  explicit GreedyAgent(physics::TableSpec spec = {}) : spec_(spec) {}

  physics::ShotParams select_shot(const physics::TableState& state,
                                  std::span<const physics::BallId> targets,
                                  std::uint64_t seed) const override;
  std::string name() const override { return "greedy"; }

 private:
  physics::TableSpec spec_;
};

}  // namespace cuecoach::agents
