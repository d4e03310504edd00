#include "cuecoach/game/game.hpp"

#include <algorithm>
#include <cmath>

#include "cuecoach/common/error.hpp"
#include "cuecoach/common/random.hpp"

namespace cuecoach::game {

using physics::EventKind;

void PlayerAssignment::validate() const {
  if (player1.size() != 3 || player2.size() != 3) {
    throw InvalidInput("each player needs exactly three target balls");
  }
  for (BallId a : player1) {
    if (a == BallId::Cue) throw InvalidInput("the cue ball cannot be a target");
    if (std::count(player1.begin(), player1.end(), a) != 1) {
      throw InvalidInput("duplicate target ball");
    }
    if (std::find(player2.begin(), player2.end(), a) != player2.end()) {
      throw InvalidInput("target sets must be disjoint");
    }
  }
  for (BallId b : player2) {
    if (b == BallId::Cue) throw InvalidInput("the cue ball cannot be a target");
    if (std::count(player2.begin(), player2.end(), b) != 1) {
      throw InvalidInput("duplicate target ball");
    }
  }
}

std::string_view to_string(FoulReason reason) {
  switch (reason) {
    case FoulReason::None: return "none";
    case FoulReason::WrongFirstContact: return "wrong_first_contact";
    case FoulReason::NoContact: return "no_contact";
    case FoulReason::CuePocketed: return "cue_pocketed";
  }
  return "none";
}

std::optional<BallId> first_cue_contact(const EventSequence& trace) {
  for (const auto& e : trace) {
    if (e.kind != EventKind::BallBall) continue;
    if (e.ball == BallId::Cue) return e.ball2;
    if (e.ball2 == BallId::Cue) return e.ball;
  }
  return std::nullopt;
}

ShotRuling judge_shot(const TableState& pre, const TableState& post, const EventSequence& trace,
                      std::span<const BallId> shooter_targets) {
  auto is_own = [&](BallId id) {
    return std::find(shooter_targets.begin(), shooter_targets.end(), id) != shooter_targets.end();
  };
  ShotRuling ruling;
  bool cue_pocketed = false;
  for (const auto& e : trace) {
    if (e.kind != EventKind::BallPocket) continue;
    if (e.ball == BallId::Cue) {
      cue_pocketed = true;
    } else if (is_own(e.ball)) {
      ruling.potted_own.push_back(e.ball);
    } else {
      ruling.potted_other.push_back(e.ball);
    }
  }
  // A ball that left the table without a pocket event cannot happen with the
  // built-in simulator, but a caller-provided trace may be incomplete.
  if (!cue_pocketed && pre.on_table(BallId::Cue) && !post.on_table(BallId::Cue)) {
    cue_pocketed = true;
  }
  const auto first = first_cue_contact(trace);
  if (cue_pocketed) {
    ruling.foul = true;
    ruling.foul_reason = FoulReason::CuePocketed;
  } else if (!first) {
    ruling.foul = true;
    ruling.foul_reason = FoulReason::NoContact;
  } else if (!is_own(*first)) {
    ruling.foul = true;
    ruling.foul_reason = FoulReason::WrongFirstContact;
  }
  ruling.shooter_continues = !ruling.foul && !ruling.potted_own.empty();
  return ruling;
}

namespace {

bool free_spot(const TableState& state, Vec2 p, const TableSpec& spec) {
  const double r = spec.ball_radius;
  if (p.x < r || p.x > spec.width - r || p.y < r || p.y > spec.length - r) return false;
  for (BallId id : physics::kColourBalls) {
    if (state.on_table(id) && distance(state.pos(id), p) < 2.0 * r) return false;
  }
  for (auto pid : physics::kAllPockets) {
    if (distance(spec.pocket_position(pid), p) <= spec.pocket_radius) return false;
  }
  return true;
}

}  // namespace

Vec2 respot_candidate(std::size_t k, std::uint64_t seed, const TableSpec& spec) {
  const Vec2 centre{0.5, 0.5};
  if (k == 0) return centre;
  constexpr double kGoldenAngle = 2.39996322972865332;
  const double phase = 2.0 * kPi * static_cast<double>(mix_seed(seed) >> 11) * 0x1.0p-53;
  const double radius = spec.ball_radius * std::sqrt(static_cast<double>(k));
  const double angle = phase + kGoldenAngle * static_cast<double>(k);
  return {centre.x + radius * std::cos(angle), centre.y + radius * std::sin(angle)};
}

TableState respot_cue(const TableState& state, std::uint64_t seed, const TableSpec& spec) {
  TableState out = state;
  if (state.on_table(BallId::Cue)) return out;
  constexpr std::size_t kMaxCandidates = 200000;
  for (std::size_t k = 0; k < kMaxCandidates; ++k) {
    const Vec2 p = respot_candidate(k, seed, spec);
    if (free_spot(state, p, spec)) {
      out.place(BallId::Cue, p);
      return out;
    }
  }
  throw PlacementFailed("no free position for the cue ball");
}

TableState random_start(std::uint64_t seed, const TableSpec& spec) {
  Rng rng(derive_seed(seed, 0x5EED));
  const double r = spec.ball_radius;
  TableState state;
  for (BallId id : physics::kAllBalls) {
    bool placed = false;
    for (int attempt = 0; attempt < 100000 && !placed; ++attempt) {
      const Vec2 p{rng.uniform(r, spec.width - r), rng.uniform(r, spec.length - r)};
      bool ok = true;
      for (auto pid : physics::kAllPockets) {
        if (distance(spec.pocket_position(pid), p) < spec.pocket_radius + r) ok = false;
      }
      for (BallId other : physics::kAllBalls) {
        if (ok && state.on_table(other) && distance(state.pos(other), p) < 2.2 * r) ok = false;
      }
      if (ok) {
        state.place(id, p);
        placed = true;
      }
    }
    if (!placed) throw PlacementFailed("could not place a random start");
  }
  return state;
}

namespace {

int remaining(const TableState& s, const std::vector<BallId>& targets) {
  int n = 0;
  for (BallId id : targets) n += s.on_table(id) ? 1 : 0;
  return n;
}

}  // namespace

GameResult play_game(const agents::Agent& agent1, const agents::Agent& agent2,
                     const TableState& start, const NoiseModel& noise, std::uint64_t seed,
                     const GameOptions& options) {
  options.assignment.validate();
  const auto& spec = options.spec;
  Rng noise_rng(derive_seed(seed, 1));
  GameResult result;
  TableState state = start;
  Player shooter = options.first_shooter;
  int turn = 1;
  int shot_index = 0;
  auto finish = [&](Player winner) {
    result.winner = winner;
    result.turns = turn;
    result.shots = shot_index;
    result.final_state = state;
    return result;
  };
  const auto& t1 = options.assignment.player1;
  const auto& t2 = options.assignment.player2;
  if (remaining(state, t1) == 0) return finish(Player::One);
  if (remaining(state, t2) == 0) return finish(Player::Two);

  while (turn <= options.turn_cap) {
    if (!state.on_table(BallId::Cue)) {
      state = respot_cue(state, derive_seed(seed, 0x10000 + static_cast<std::uint64_t>(shot_index)),
                         spec);
    }
    const auto& targets = options.assignment.targets(shooter);
    const agents::Agent& agent = shooter == Player::One ? agent1 : agent2;
    physics::ShotParams intended;
    try {
      intended = agent.select_shot(state, targets,
                                   derive_seed(seed, 0x20000 + static_cast<std::uint64_t>(shot_index)));
    } catch (const AgentError&) {
      throw;
    } catch (const std::exception& ex) {
      throw AgentError(turn, agent.name() + ": " + ex.what());
    }
    if (!intended.in_bounds()) {
      throw AgentError(turn, agent.name() + " returned an out-of-bounds shot");
    }
    const physics::ShotParams executed = apply_noise(intended, noise, noise_rng);
    physics::SimResult sim = physics::simulate(state, executed, spec);
    ShotRuling ruling = judge_shot(state, sim.post, sim.trace, targets);
    ++shot_index;
    if (options.keep_log) {
      result.log.push_back(
          ShotLog{turn, shooter, state, intended, executed, std::move(sim.trace), ruling});
    }
    state = sim.post;

    const auto& opp_targets = options.assignment.targets(other(shooter));
    if (remaining(state, targets) == 0) return finish(shooter);
    if (remaining(state, opp_targets) == 0) return finish(other(shooter));

    if (!ruling.shooter_continues) {
      shooter = other(shooter);
      ++turn;
    }
  }

  // Turn cap: more own balls potted wins, ties go to a seeded coin flip.
  turn = options.turn_cap;
  result.capped = true;
  const int potted1 = 3 - remaining(state, t1);
  const int potted2 = 3 - remaining(state, t2);
  Player winner;
  if (potted1 != potted2) {
    winner = potted1 > potted2 ? Player::One : Player::Two;
  } else {
    Rng coin(derive_seed(seed, 0xC014));
    winner = coin.bernoulli(0.5) ? Player::One : Player::Two;
  }
  return finish(winner);
}

int did_player1_win(const GameResult& result) { return result.winner == Player::One ? 1 : 0; }

}  // namespace cuecoach::game
