#include "cuecoach/physics/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cuecoach::physics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlipEps = 1e-9;
// Longest analytic step while two or more balls move on straight paths.
constexpr double kMultiBallMacroStep = 0.05;
constexpr int kMaxEventsPerShot = 20000;

struct Ball {
  Vec2 p;
  BallMotion m;
  bool on = false;
};

Vec2 slip(const BallMotion& m, double r) { return {m.v.x - r * m.w.y, m.v.y + r * m.w.x}; }

void snap_rolling(BallMotion& m, double r) {
  m.w.x = -m.v.y / r;
  m.w.y = m.v.x / r;
}

bool stationary(const Ball& b) { return !b.on || b.m.at_rest(); }

struct Phase {
  bool moving = false;
  bool sliding = false;
  bool straight = true;
  double remaining = kInf;  // time until the next phase change
};

Phase phase_of(const BallMotion& m, const TableSpec& s) {
  Phase ph;
  if (m.at_rest()) return ph;
  ph.moving = true;
  const Vec2 u = slip(m, s.ball_radius);
  const double un = u.norm();
  if (un > kSlipEps) {
    ph.sliding = true;
    ph.remaining = un / (3.5 * s.mu_slide * s.gravity);
    const double vn = m.v.norm();
    // Straight only when the slip is parallel to the velocity and friction
    // does not reverse the ball within this phase.
    const bool parallel = vn == 0.0 || std::abs(m.v.cross(u)) <= 1e-12 * vn * un;
    const bool reverses = m.v.dot(u) > 0.0 && 3.5 * vn < un;
    ph.straight = parallel && !reverses;
  } else {
    ph.remaining = m.v.norm() / (s.mu_roll * s.gravity);
  }
  return ph;
}

struct Advance {
  Vec2 disp;
  BallMotion m;
};

// Exact friction kinematics over h: sliding, then rolling, then rest.
Advance evolve(BallMotion m, double h, const TableSpec& s) {
  const double r = s.ball_radius;
  Vec2 disp;
  double left = h;
  for (int guard = 0; guard < 4 && left > 0.0; ++guard) {
    const Vec2 u = slip(m, r);
    const double un = u.norm();
    if (un > kSlipEps) {
      const double decel = s.mu_slide * s.gravity;
      const double tau = un / (3.5 * decel);
      const double tt = std::min(tau, left);
      const Vec2 uh = u / un;
      disp += m.v * tt - uh * (0.5 * decel * tt * tt);
      m.v -= uh * (decel * tt);
      const double dw = 2.5 * decel / r * tt;
      m.w.x += -uh.y * dw;
      m.w.y += uh.x * dw;
      left -= tt;
      if (tt == tau) snap_rolling(m, r);
      continue;
    }
    const double vn = m.v.norm();
    if (vn > 0.0) {
      const double decel = s.mu_roll * s.gravity;
      const double tau = vn / decel;
      const double tt = std::min(tau, left);
      const Vec2 vh = m.v / vn;
      disp += m.v * tt - vh * (0.5 * decel * tt * tt);
      if (tt == tau || vn - decel * tt < s.rest_speed * 1e-3) {
        m.v = {};
      } else {
        m.v -= vh * (decel * tt);
      }
      snap_rolling(m, r);
      left -= tt;
      continue;
    }
    m.w.x = 0.0;
    m.w.y = 0.0;
    break;
  }
  if (m.w.z != 0.0) {
    const double mag = std::max(0.0, std::abs(m.w.z) - s.spin_decay * h);
    m.w.z = m.w.z > 0.0 ? mag : -mag;
  }
  return {disp, m};
}

enum class Kind { Pocket = 0, BallBall = 1, Cushion = 2 };

struct Candidate {
  double s = kInf;
  Kind kind = Kind::Cushion;
  std::size_t i = 0;
  std::size_t j = 0;     // second ball, or pocket index, or wall index
  bool valid = false;
};

bool earlier(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.s != b.s) return a.s < b.s;
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  const BallId ai = kAllBalls[a.i];
  const BallId bi = kAllBalls[b.i];
  if (ai != bi) return name_less(ai, bi);
  if (a.kind == Kind::BallBall) {
    const BallId aj = kAllBalls[a.j];
    const BallId bj = kAllBalls[b.j];
    if (aj != bj) return name_less(aj, bj);
  }
  return a.j < b.j;
}

// Smallest s in [0, 1] with |p + d s| = radius while approaching.
double first_contact(Vec2 p, Vec2 d, double radius) {
  const double c = p.norm2() - radius * radius;
  const double b = 2.0 * p.dot(d);
  if (b >= 0.0) return kInf;
  if (c <= 0.0) return 0.0;
  const double a = d.norm2();
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return kInf;
  const double s = (-b - std::sqrt(disc)) / (2.0 * a);
  return s <= 1.0 ? std::max(0.0, s) : kInf;
}

struct Wall {
  Vec2 normal;  // into the table
};

constexpr std::array<Wall, 4> kWalls = {{{{1.0, 0.0}}, {{-1.0, 0.0}}, {{0.0, 1.0}}, {{0.0, -1.0}}}};

class Engine {
 public:
  Engine(const TableState& state, const ShotParams& shot, const TableSpec& spec,
         const SimOptions& opt)
      : s_(spec), opt_(opt) {
    for (std::size_t k = 0; k < kBallCount; ++k) {
      balls_[k].p = state.balls()[k].pos;
      balls_[k].on = state.balls()[k].on_table;
    }
    result_.post = state;
    if (balls_[index(BallId::Cue)].on) {
      balls_[index(BallId::Cue)].m = cue_impulse(shot, spec);
    }
  }

  SimResult run() {
    const double frame_dt = 1.0 / s_.frame_rate;
    std::size_t next_frame = 1;
    if (opt_.record_frames) emit_frame();
    while (true) {
      if (std::all_of(balls_.begin(), balls_.end(), stationary)) break;
      if (t_ >= s_.max_sim_time || events_ >= kMaxEventsPerShot) {
        result_.truncated = true;
        break;
      }
      double h = plan_step();
      h = std::min(h, s_.max_sim_time - t_);
      double frame_t = kInf;
      if (opt_.record_frames) {
        frame_t = static_cast<double>(next_frame) * frame_dt;
        h = std::min(h, frame_t - t_);
      }
      if (!(h > 0.0)) h = std::min(s_.dt, s_.max_sim_time - t_);
      const double advanced = integrate(h);
      t_ = advanced == h && opt_.record_frames && frame_t - t_ <= h ? frame_t : t_ + advanced;
      if (opt_.record_frames && t_ >= frame_t) {
        emit_frame();
        ++next_frame;
      }
    }
    for (auto& b : balls_) b.m = BallMotion{};
    write_state(result_.post);
    result_.duration = t_;
    if (opt_.record_frames && (result_.frames.empty() || result_.frames.back().t != t_)) {
      emit_frame();
    }
    return std::move(result_);
  }

 private:
  double energy() const {
    double e = 0.0;
    for (const auto& b : balls_) {
      if (b.on) e += kinetic_energy(b.m, s_);
    }
    return e;
  }

  void write_state(TableState& out) const {
    for (std::size_t k = 0; k < kBallCount; ++k) {
      BallState& bs = out.ball(kAllBalls[k]);
      bs.pos = balls_[k].p;
      bs.on_table = balls_[k].on;
    }
  }

  void emit_frame() {
    if (opt_.frame_energy) opt_.frame_energy->push_back(energy());
    if (result_.frames.size() >= opt_.max_frames) {
      result_.frames_truncated = true;
      return;
    }
    Frame f;
    f.t = t_;
    write_state(f.state);
    result_.frames.push_back(std::move(f));
  }

  // Fixed dt while any ball slides on a curved path; otherwise the motion is
  // straight with constant deceleration and is advanced analytically up to
  // the next phase change.
  double plan_step() const {
    double next_change = kInf;
    int moving = 0;
    bool curved = false;
    for (const auto& b : balls_) {
      if (!b.on) continue;
      const Phase ph = phase_of(b.m, s_);
      if (!ph.moving) continue;
      ++moving;
      if (ph.sliding && !ph.straight) curved = true;
      next_change = std::min(next_change, ph.remaining);
    }
    if (curved) return std::min(s_.dt, next_change > 0.0 ? next_change : s_.dt);
    double h = next_change;
    if (moving > 1) h = std::min(h, kMultiBallMacroStep);
    // Phase changes closer than a step are merged into the current step.
    return std::max(h, 1e-12);
  }

  // Advances up to h; stops early at the first resolved event so the next
  // step is planned from the post-collision phases. Returns the time advanced.
  double integrate(double h) {
    std::vector<std::pair<std::size_t, std::size_t>> skipped;
    std::array<Advance, kBallCount> adv{};
    for (std::size_t k = 0; k < kBallCount; ++k) {
      if (balls_[k].on) adv[k] = evolve(balls_[k].m, h, s_);
    }
    while (true) {
      const Candidate c = find_event(adv, skipped);
      if (!c.valid) {
        for (std::size_t k = 0; k < kBallCount; ++k) {
          if (!balls_[k].on) continue;
          balls_[k].p += adv[k].disp;
          balls_[k].m = adv[k].m;
          settle(balls_[k]);
        }
        return h;
      }
      const double te = event_time(c.s, h);
      std::array<Ball, kBallCount> at = balls_;
      for (std::size_t k = 0; k < kBallCount; ++k) {
        if (!at[k].on) continue;
        at[k].p += adv[k].disp * c.s;
        if (te > 0.0) at[k].m = evolve(at[k].m, te, s_).m;
        contain(at[k]);
      }
      if (!event_applies(c, at)) {
        skipped.emplace_back(c.i * 16 + static_cast<std::size_t>(c.kind), c.j);
        continue;
      }
      balls_ = at;
      resolve(c, t_ + te);
      return te;
    }
  }

  // Velocity-level check that the chord-level contact is a real collision.
  static bool event_applies(const Candidate& c, const std::array<Ball, kBallCount>& at) {
    const Ball& a = at[c.i];
    switch (c.kind) {
      case Kind::Pocket:
        return true;
      case Kind::Cushion:
        return a.m.v.dot(kWalls[c.j].normal) < 0.0;
      case Kind::BallBall: {
        const Ball& b = at[c.j];
        return (a.m.v - b.m.v).dot((b.p - a.p).unit()) > 0.0;
      }
    }
    return false;
  }

  // Time within the step at which the chord fraction s is reached. With a
  // single ball on a straight path the chord is the true path, so the exact
  // time is recovered by inverting its decelerating motion.
  double event_time(double s, double left) const {
    if (s <= 0.0) return 0.0;
    std::size_t only = kBallCount;
    for (std::size_t k = 0; k < kBallCount; ++k) {
      if (stationary(balls_[k])) continue;
      if (only != kBallCount) return s * left;
      only = k;
    }
    if (only == kBallCount) return s * left;
    const BallMotion& m = balls_[only].m;
    if (phase_of(m, s_).sliding && !phase_of(m, s_).straight) return s * left;
    const Vec2 full = evolve(m, left, s_).disp;
    const double target = s * full.norm();
    if (!(target > 0.0)) return s * left;
    const Vec2 dir = full.unit();
    double lo = 0.0;
    double hi = left;
    for (int it = 0; it < 64 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (evolve(m, mid, s_).disp.dot(dir) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return hi;
  }

  void settle(Ball& b) const {
    contain(b);
    const double r = s_.ball_radius;
    if (b.m.v.norm() < s_.rest_speed && slip(b.m, r).norm() < s_.rest_speed) {
      b.m.v = {};
      b.m.w.x = 0.0;
      b.m.w.y = 0.0;
    }
  }

  void contain(Ball& b) const {
    const double r = s_.ball_radius;
    b.p.x = std::clamp(b.p.x, r, s_.width - r);
    b.p.y = std::clamp(b.p.y, r, s_.length - r);
  }

  Candidate find_event(const std::array<Advance, kBallCount>& adv,
                       const std::vector<std::pair<std::size_t, std::size_t>>& skipped) const {
    auto is_skipped = [&](std::size_t i, Kind kind, std::size_t j) {
      const auto key = std::make_pair(i * 16 + static_cast<std::size_t>(kind), j);
      return std::find(skipped.begin(), skipped.end(), key) != skipped.end();
    };
    Candidate best;
    auto offer = [&](double s, Kind kind, std::size_t i, std::size_t j) {
      if (!(s <= 1.0) || is_skipped(i, kind, j)) return;
      Candidate c{s, kind, i, j, true};
      if (earlier(c, best)) best = c;
    };
    const double r = s_.ball_radius;
    for (std::size_t i = 0; i < kBallCount; ++i) {
      const Ball& a = balls_[i];
      if (!a.on) continue;
      const Vec2 da = adv[i].disp;
      const bool moving = da.x != 0.0 || da.y != 0.0;
      if (moving) {
        for (std::size_t pk = 0; pk < kAllPockets.size(); ++pk) {
          const Vec2 rel = a.p - s_.pocket_position(kAllPockets[pk]);
          offer(first_contact(rel, da, s_.pocket_radius), Kind::Pocket, i, pk);
        }
        if (da.x < 0.0) offer(a.p.x <= r ? 0.0 : (r - a.p.x) / da.x, Kind::Cushion, i, 0);
        if (da.x > 0.0) {
          offer(a.p.x >= s_.width - r ? 0.0 : (s_.width - r - a.p.x) / da.x, Kind::Cushion, i, 1);
        }
        if (da.y < 0.0) offer(a.p.y <= r ? 0.0 : (r - a.p.y) / da.y, Kind::Cushion, i, 2);
        if (da.y > 0.0) {
          offer(a.p.y >= s_.length - r ? 0.0 : (s_.length - r - a.p.y) / da.y, Kind::Cushion, i,
                3);
        }
      }
      for (std::size_t j = i + 1; j < kBallCount; ++j) {
        const Ball& b = balls_[j];
        if (!b.on) continue;
        const Vec2 d = adv[j].disp - da;
        if (d.x == 0.0 && d.y == 0.0) continue;
        offer(first_contact(b.p - a.p, d, 2.0 * r), Kind::BallBall, i, j);
      }
    }
    return best;
  }

  void resolve(const Candidate& c, double now) {
    Ball& a = balls_[c.i];
    const BallId ida = kAllBalls[c.i];
    const double e_before = opt_.collisions ? energy() : 0.0;
    CollisionRecord rec;
    switch (c.kind) {
      case Kind::Pocket: {
        const PocketId pid = kAllPockets[c.j];
        rec.event = Event::ball_pocket(ida, pid, a.p, now);
        a.on = false;
        a.m = BallMotion{};
        break;
      }
      case Kind::Cushion: {
        const Vec2 n = kWalls[c.j].normal;
        auto [v, side] = resolve_cushion(a.m.v, n, s_.e_cushion, a.m.w.z, s_.spin_retention);
        a.m.v = v;
        a.m.w.z = side;
        rec.event = Event::ball_cushion(ida, a.p, now);
        break;
      }
      case Kind::BallBall: {
        Ball& b = balls_[c.j];
        const BallId idb = kAllBalls[c.j];
        const Vec2 n = (b.p - a.p).unit();
        rec.normal_momentum_before = a.m.v.dot(n) + b.m.v.dot(n);
        // The ball closing faster along the line of centres is named first.
        const double ua = a.m.v.dot(n);
        const double ub = -b.m.v.dot(n);
        const bool a_strikes = ua > ub || (ua == ub && name_less(ida, idb));
        auto [va, vb] = resolve_ball_ball(a.m.v, b.m.v, n, s_.e_ball);
        a.m.v = va;
        b.m.v = vb;
        rec.normal_momentum_after = a.m.v.dot(n) + b.m.v.dot(n);
        const Vec2 contact = (a.p + b.p) * 0.5;
        rec.event = a_strikes ? Event::ball_ball(ida, idb, contact, now)
                              : Event::ball_ball(idb, ida, contact, now);
        break;
      }
    }
    ++events_;
    result_.trace.push_back(rec.event);
    if (opt_.collisions) {
      rec.energy_before = e_before;
      rec.energy_after = energy();
      opt_.collisions->push_back(rec);
    }
  }

  const TableSpec& s_;
  const SimOptions& opt_;
  std::array<Ball, kBallCount> balls_{};
  SimResult result_;
  double t_ = 0.0;
  int events_ = 0;
};

}  // namespace

SimResult strike_and_trace(const TableState& state, const ShotParams& shot, const TableSpec& spec,
                           const SimOptions& options) {
  return Engine(state, shot, spec, options).run();
}

SimResult simulate(const TableState& state, const ShotParams& shot, const TableSpec& spec) {
  SimOptions opt;
  opt.record_frames = false;
  return Engine(state, shot, spec, opt).run();
}

}  // namespace cuecoach::physics
