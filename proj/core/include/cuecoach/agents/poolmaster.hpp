#pragma once

#include <vector>

#include "cuecoach/agents/agent.hpp"
#include "cuecoach/game/noise.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::agents {

struct PoolMasterConfig {
  int grid = 15;  // position grid is grid x 2*grid
  std::vector<double> speed_levels{0.8, 1.5, 2.3, 3.2, 4.2};
  std::vector<double> elevation_levels{0.0, 5.0, 10.0, 20.0, 30.0};
  std::vector<double> side_levels{-0.4, -0.2, 0.0, 0.2, 0.4};
  std::vector<double> follow_levels{-0.4, -0.2, 0.0, 0.2, 0.4};
  double pot_score = 10.0;
  double foul_penalty = 100.0;
  double position_weight = 1.0;
  // Aims kept after geometric ranking.
  int max_aims = 6;
  bool bank_shots = true;
  // Sweep every level combination instead of one parameter at a time.
  bool full_factorial = false;
  // The best `robust_top` sweep results are re-scored as the mean over
  // `robust_samples` noisy executions; 0 disables the pass.
  int robust_top = 4;
  int robust_samples = 4;
  game::NoiseModel robust_noise{};

  // Throws InvalidInput when grid is not 15 or 30 or a level list has fewer
  // than two entries.
  void validate() const;
};

/// Grid-based search over direct and one-cushion (mirrored) aims with a
/// discretized sweep of speed, spin and elevation.
class PoolMasterAgent : public Agent {
 public:
  explicit PoolMasterAgent(PoolMasterConfig cfg = {}, physics::TableSpec spec = {});

  physics::ShotParams select_shot(const physics::TableState& state,
                                  std::span<const physics::BallId> targets,
                                  std::uint64_t seed) const override;
  std::string name() const override { return "poolmaster"; }

  const PoolMasterConfig& config() const { return cfg_; }

 private:
  PoolMasterConfig cfg_;
  physics::TableSpec spec_;
};

}  // namespace cuecoach::agents
