#include "cuecoach/physics/shot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cuecoach::physics {

double wrap_degrees(double deg) {
  if (!std::isfinite(deg)) return 0.0;
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  if (w >= 360.0) w = 0.0;
  return w;
}

namespace {

double clamp_to(double x, double lo, double hi, bool& hit) {
  if (!std::isfinite(x)) {
    hit = true;
    return lo;
  }
  if (x < lo) {
    hit = true;
    return lo;
  }
  if (x > hi) {
    hit = true;
    return hi;
  }
  return x;
}

}  // namespace

ShotParams ShotParams::make_clamped(double v, double alpha, double beta, double a, double b) {
  ShotParams s;
  bool hit = false;
  s.v = clamp_to(v, 0.0, kMaxSpeed, hit);
  s.alpha = wrap_degrees(alpha);
  s.beta = clamp_to(beta, 0.0, kMaxElevation, hit);
  s.a = clamp_to(a, -kMaxOffset, kMaxOffset, hit);
  s.b = clamp_to(b, -kMaxOffset, kMaxOffset, hit);
  s.clamped = hit;
  return s;
}

std::optional<ShotParams> ShotParams::make_checked(double v, double alpha, double beta, double a,
                                                   double b, std::string* reason) {
  auto fail = [&](const char* what, double value) -> std::optional<ShotParams> {
    if (reason) {
      std::ostringstream os;
      os << what << " out of range: " << value;
      *reason = os.str();
    }
    return std::nullopt;
  };
  if (!(v >= 0.0 && v <= kMaxSpeed)) return fail("v", v);
  if (!(alpha >= 0.0 && alpha < 360.0)) return fail("alpha", alpha);
  if (!(beta >= 0.0 && beta <= kMaxElevation)) return fail("beta", beta);
  if (!(a >= -kMaxOffset && a <= kMaxOffset)) return fail("a", a);
  if (!(b >= -kMaxOffset && b <= kMaxOffset)) return fail("b", b);
  return ShotParams{v, alpha, beta, a, b, false};
}

bool ShotParams::in_bounds() const {
  return v >= 0.0 && v <= kMaxSpeed && alpha >= 0.0 && alpha < 360.0 && beta >= 0.0 &&
         beta <= kMaxElevation && a >= -kMaxOffset && a <= kMaxOffset && b >= -kMaxOffset &&
         b <= kMaxOffset;
}

std::array<double, 5> ShotParams::normalized() const {
  return {v / kMaxSpeed, alpha / 360.0, beta / kMaxElevation, (a + kMaxOffset) / (2 * kMaxOffset),
          (b + kMaxOffset) / (2 * kMaxOffset)};
}

ShotParams ShotParams::from_normalized(const std::array<double, 5>& u) {
  return make_clamped(u[0] * kMaxSpeed, u[1] * 360.0, u[2] * kMaxElevation,
                      u[3] * 2 * kMaxOffset - kMaxOffset, u[4] * 2 * kMaxOffset - kMaxOffset);
}

}  // namespace cuecoach::physics
