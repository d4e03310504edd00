#pragma once

#include <functional>
#include <vector>

#include "cuecoach/physics/dynamics.hpp"
#include "cuecoach/physics/events.hpp"
#include "cuecoach/physics/shot.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::physics {

struct Frame {
  double t = 0.0;
  TableState state;
};

struct SimResult {
  TableState post;
  EventSequence trace;
  std::vector<Frame> frames;
  double duration = 0.0;
  // Max simulated time reached with residual motion above the rest threshold.
  bool truncated = false;
  // Frame list hit SimOptions::max_frames.
  bool frames_truncated = false;
};

/// Per-collision bookkeeping for property tests.
struct CollisionRecord {
  Event event;
  double energy_before = 0.0;
  double energy_after = 0.0;
  // Sum of the two balls' normal velocity components (ball-ball only).
  double normal_momentum_before = 0.0;
  double normal_momentum_after = 0.0;
};

struct SimOptions {
  bool record_frames = true;
  std::size_t max_frames = 900;
  // Optional sink for per-collision and per-frame diagnostics.
  std::vector<CollisionRecord>* collisions = nullptr;
  std::vector<double>* frame_energy = nullptr;
};

/// Strikes the cue ball and integrates until every ball rests or the time
/// limit is reached. Pure: identical inputs give bit-identical results.
SimResult strike_and_trace(const TableState& state, const ShotParams& shot,
                           const TableSpec& spec = {}, const SimOptions& options = {});

/// Same as strike_and_trace but without frames; the hot path for agents.
SimResult simulate(const TableState& state, const ShotParams& shot, const TableSpec& spec = {});

}  // namespace cuecoach::physics
