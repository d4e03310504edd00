#pragma once

#include <array>
#include <optional>
#include <string>

namespace cuecoach::physics {

/// Cue strike parameters: speed, azimuth (deg), elevation (deg), and the
/// horizontal/vertical contact offsets in ball radii.
struct ShotParams {
  static constexpr double kMaxSpeed = 5.0;
  static constexpr double kMaxElevation = 90.0;
  static constexpr double kMaxOffset = 0.5;

  double v = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double a = 0.0;
  double b = 0.0;
  // Set when construction had to clamp an out-of-range value.
  bool clamped = false;

  bool operator==(const ShotParams&) const = default;

  // Clamps every field into bounds (azimuth wraps into [0, 360)).
  static ShotParams make_clamped(double v, double alpha, double beta, double a, double b);
  // Returns nullopt and a reason when any field is out of range. Azimuth must
  // already lie in [0, 360).
  static std::optional<ShotParams> make_checked(double v, double alpha, double beta, double a,
                                                double b, std::string* reason = nullptr);

  bool in_bounds() const;

  // Each parameter mapped to [0, 1] by its bounds, in (v, alpha, beta, a, b) order.
  std::array<double, 5> normalized() const;
  static ShotParams from_normalized(const std::array<double, 5>& u);
};

double wrap_degrees(double deg);

}  // namespace cuecoach::physics
