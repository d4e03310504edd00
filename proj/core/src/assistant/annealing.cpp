#include "cuecoach/assistant/annealing.hpp"

#include <cmath>

#include "cuecoach/common/error.hpp"
#include "cuecoach/physics/simulator.hpp"

namespace cuecoach::assistant {

using physics::ShotParams;

void SAConfig::validate() const {
  if (steps < 0) throw InvalidInput("annealing steps must be non-negative");
  if (!(t0 > t_end && t_end > 0.0)) throw InvalidInput("annealing needs t0 > t_end > 0");
  for (double s : sigma) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidInput("proposal deviations must be non-negative");
  }
  if (!(lambda >= 0.0)) throw InvalidInput("lambda must be non-negative");
}

double SAConfig::temperature(int step) const {
  if (steps <= 1) return t_end;
  const double frac = static_cast<double>(step) / static_cast<double>(steps - 1);
  return t0 * std::pow(t_end / t0, frac);
}

ShotParams random_shot(Rng& rng) {
  std::array<double, 5> u{};
  for (double& x : u) x = rng.uniform();
  return ShotParams::from_normalized(u);
}

ShotParams propose(const ShotParams& from, const SAConfig& cfg, double scale, Rng& rng) {
  auto u = from.normalized();
  for (std::size_t k = 0; k < u.size(); ++k) {
    double x = u[k] + scale * cfg.sigma[k] * rng.normal();
    if (k == 1) {
      x -= std::floor(x);
      if (x >= 1.0) x = 0.0;
    } else {
      // Reflect at the box faces; large steps fold back and forth.
      x = std::fmod(std::abs(x), 2.0);
      if (x > 1.0) x = 2.0 - x;
    }
    u[k] = x;
  }
  return ShotParams::from_normalized(u);
}

AnnealResult anneal(const ShotParams& start, const std::function<double(const ShotParams&)>& energy,
                    const SAConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  AnnealResult out;
  ShotParams current = start;
  double e_current = energy(current);
  out.best = current;
  out.best_energy = e_current;
  out.initial_energy = e_current;
  out.best_curve.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  out.best_curve.push_back(e_current);
  for (int step = 0; step < cfg.steps; ++step) {
    const double t = cfg.temperature(step);
    // Proposal width shrinks with temperature but never below a fifth.
    const double scale = std::max(0.2, std::sqrt(t / cfg.t0));
    const ShotParams candidate = propose(current, cfg, scale, rng);
    const double e = energy(candidate);
    const double u = rng.uniform();
    if (e <= e_current || u < std::exp(-(e - e_current) / t)) {
      current = candidate;
      e_current = e;
    }
    if (e_current < out.best_energy) {
      out.best_energy = e_current;
      out.best = current;
    }
    out.best_curve.push_back(out.best_energy);
  }
  return out;
}

namespace {

// Integer key equal for two events exactly when same_symbol holds.
int symbol_key(const physics::Event& e) {
  const int a = static_cast<int>(e.ball);
  switch (e.kind) {
    case physics::EventKind::BallBall: {
      const int b = static_cast<int>(e.ball2);
      return (std::min(a, b) << 4) | std::max(a, b);
    }
    case physics::EventKind::BallCushion:
      return 0x100 | a;
    case physics::EventKind::BallPocket:
      return 0x200 | (a << 4) | static_cast<int>(e.pocket);
  }
  return -1;
}

}  // namespace

int lcs_match(const physics::EventSequence& target, const physics::EventSequence& actual) {
  if (target.empty() || actual.empty()) return 0;
  const std::size_t n = target.size();
  const std::size_t m = actual.size();
  // Keys of target and actual, then rolling rows of the plain LCS of
  // target[i..] and actual[j..] down to i = 1; the anchored answer pairs
  // target[0] with each match in actual.
  constexpr std::size_t kSmall = 32;
  int small[2 * (kSmall + 1) + 2 * kSmall];
  std::vector<int> large;
  int* buf = small;
  if (n > kSmall || m > kSmall) {
    large.resize(2 * (m + 1) + n + m);
    buf = large.data();
  }
  int* next = buf;
  int* cur = next + (m + 1);
  int* tk = cur + (m + 1);
  int* ak = tk + n;
  for (std::size_t i = 0; i < n; ++i) tk[i] = symbol_key(target[i]);
  for (std::size_t j = 0; j < m; ++j) ak[j] = symbol_key(actual[j]);
  std::fill(next, next + m + 1, 0);
  for (std::size_t i = n; i-- > 1;) {
    cur[m] = 0;
    for (std::size_t j = m; j-- > 0;) {
      cur[j] = tk[i] == ak[j] ? 1 + next[j + 1] : std::max(next[j], cur[j + 1]);
    }
    std::swap(cur, next);
  }
  int best = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (tk[0] == ak[j]) best = std::max(best, 1 + next[j + 1]);
  }
  return best;
}

FitResult fit_shot_to_events(const physics::TableState& state, const physics::EventSequence& target,
                             const SAConfig& cfg, const physics::TableSpec& spec) {
  Rng init(derive_seed(cfg.seed, 0x1417));
  const ShotParams start = random_shot(init);
  auto energy = [&](const ShotParams& shot) {
    const auto sim = physics::simulate(state, shot, spec);
    const auto u = shot.normalized();
    double norm = 0.0;
    for (double x : u) norm += x * x;
    return -static_cast<double>(lcs_match(target, sim.trace)) +
           cfg.lambda * (static_cast<double>(sim.trace.size()) + std::sqrt(norm));
  };
  SAConfig run = cfg;
  run.seed = derive_seed(cfg.seed, 0xF17);
  const AnnealResult a = anneal(start, energy, run);
  FitResult out;
  out.shot = a.best;
  out.energy = a.best_energy;
  out.trace = physics::simulate(state, a.best, spec).trace;
  out.lcs = lcs_match(target, out.trace);
  out.best_curve = a.best_curve;
  return out;
}

}  // namespace cuecoach::assistant
