#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cuecoach/physics/shot.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::agents {

/// A policy mapping a table state to a shot. Implementations are immutable
/// after construction and deterministic given the seed.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual physics::ShotParams select_shot(const physics::TableState& state,
                                          std::span<const physics::BallId> targets,
                                          std::uint64_t seed) const = 0;

  virtual std::string name() const = 0;
};

using AgentPtr = std::shared_ptr<const Agent>;

/// Colour balls not in `targets`, in id order.
std::vector<physics::BallId> opponent_targets(std::span<const physics::BallId> targets);

}  // namespace cuecoach::agents
