#pragma once

#include "cuecoach/common/random.hpp"
#include "cuecoach/physics/shot.hpp"

namespace cuecoach::game {

/// Gaussian execution error per shot parameter (v in units/s, angles in
/// degrees, offsets in ball radii).
struct NoiseModel {
  double sigma_v = 0.05;
  double sigma_alpha = 0.5;
  double sigma_beta = 0.5;
  double sigma_a = 0.005;
  double sigma_b = 0.005;

  static NoiseModel none() { return {0.0, 0.0, 0.0, 0.0, 0.0}; }
  bool is_zero() const {
    return sigma_v == 0.0 && sigma_alpha == 0.0 && sigma_beta == 0.0 && sigma_a == 0.0 &&
           sigma_b == 0.0;
  }
  bool valid() const {
    return sigma_v >= 0.0 && sigma_alpha >= 0.0 && sigma_beta >= 0.0 && sigma_a >= 0.0 &&
           sigma_b >= 0.0;
  }
};

/// Perturbs a shot and clamps the result back into bounds. With a zero
/// noise model the shot is returned unchanged and no variates are drawn.
inline physics::ShotParams apply_noise(const physics::ShotParams& shot, const NoiseModel& noise,
                                       Rng& rng) {
  if (noise.is_zero()) return shot;
  const double v = shot.v + noise.sigma_v * rng.normal();
  const double alpha = shot.alpha + noise.sigma_alpha * rng.normal();
  const double beta = shot.beta + noise.sigma_beta * rng.normal();
  const double a = shot.a + noise.sigma_a * rng.normal();
  const double b = shot.b + noise.sigma_b * rng.normal();
  return physics::ShotParams::make_clamped(v, alpha, beta, a, b);
}

}  // namespace cuecoach::game
