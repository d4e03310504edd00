#pragma once

#include <initializer_list>
#include <utility>

#include "cuecoach/physics/shot.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::testing {

using physics::BallId;
using physics::ShotParams;
using physics::TableState;

inline TableState make_state(std::initializer_list<std::pair<BallId, Vec2>> balls) {
  TableState s;
  for (const auto& [id, pos] : balls) s.place(id, pos);
  return s;
}

inline ShotParams shot(double v, double alpha, double beta = 0.0, double a = 0.0, double b = 0.0) {
  return ShotParams::make_clamped(v, alpha, beta, a, b);
}

}  // namespace cuecoach::testing
