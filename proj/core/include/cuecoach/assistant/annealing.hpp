#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "cuecoach/common/random.hpp"
#include "cuecoach/physics/events.hpp"
#include "cuecoach/physics/shot.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::assistant {

struct SAConfig {
  int steps = 300;
  double t0 = 1.0;
  double t_end = 0.01;
  // Proposal deviations in bounds-normalized units, (v, alpha, beta, a, b).
  std::array<double, 5> sigma{0.05, 0.05, 0.05, 0.05, 0.05};
  double lambda = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
  // Geometric schedule from t0 at step 0 to t_end at the last step.
  double temperature(int step) const;
};

/// Uniform draw over the normalized parameter box.
physics::ShotParams random_shot(Rng& rng);

/// Gaussian step in normalized space; azimuth wraps, the rest reflect into [0, 1].
physics::ShotParams propose(const physics::ShotParams& from, const SAConfig& cfg, double scale, Rng& rng);

struct AnnealResult {
  physics::ShotParams best;
  double best_energy = 0.0;
  double initial_energy = 0.0;
  // Best-so-far energy after each step (index 0 is the start).
  std::vector<double> best_curve;
};

/// Metropolis annealing that minimizes `energy`, starting from `start`.
AnnealResult anneal(const physics::ShotParams& start,
                    const std::function<double(const physics::ShotParams&)>& energy,
                    const SAConfig& cfg);

/// Longest common subsequence of `target` and `actual` whose first matched
/// pair uses target[0]; events compare by symbol (ball-ball unordered).
int lcs_match(const physics::EventSequence& target, const physics::EventSequence& actual);

struct FitResult {
  physics::ShotParams shot;
  int lcs = 0;
  double energy = 0.0;
  physics::EventSequence trace;
  std::vector<double> best_curve;
};

/// Fits a shot whose simulated events follow `target`, minimizing
/// -lcs + lambda * (|trace| + |normalized shot|).
FitResult fit_shot_to_events(const physics::TableState& state, const physics::EventSequence& target,
                             const SAConfig& cfg, const physics::TableSpec& spec = {});

}  // namespace cuecoach::assistant
