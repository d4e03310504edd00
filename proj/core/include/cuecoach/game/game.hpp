#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cuecoach/agents/agent.hpp"
#include "cuecoach/game/noise.hpp"
#include "cuecoach/physics/events.hpp"
#include "cuecoach/physics/simulator.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::game {

using physics::BallId;
using physics::EventSequence;
using physics::TableSpec;
using physics::TableState;

enum class Player { One, Two };

inline Player other(Player p) { return p == Player::One ? Player::Two : Player::One; }

/// Disjoint three-ball target sets of the two players.
struct PlayerAssignment {
  std::vector<BallId> player1{BallId::Blue, BallId::Red, BallId::Yellow};
  std::vector<BallId> player2{BallId::Green, BallId::Black, BallId::Pink};

  const std::vector<BallId>& targets(Player p) const {
    return p == Player::One ? player1 : player2;
  }
  // Throws InvalidInput unless the sets are disjoint, three each, cue-free.
  void validate() const;
};

enum class FoulReason { None, WrongFirstContact, NoContact, CuePocketed };

std::string_view to_string(FoulReason reason);

struct ShotRuling {
  bool foul = false;
  FoulReason foul_reason = FoulReason::None;
  std::vector<BallId> potted_own;
  std::vector<BallId> potted_other;
  bool shooter_continues = false;

  bool operator==(const ShotRuling&) const = default;
};

/// The first ball the cue touched, if any.
std::optional<BallId> first_cue_contact(const EventSequence& trace);

ShotRuling judge_shot(const TableState& pre, const TableState& post, const EventSequence& trace,
                      std::span<const BallId> shooter_targets);

/// Places an off-table cue ball at the first free point of a sunflower
/// spiral around (0.5, 0.5); the seed rotates the spiral.
TableState respot_cue(const TableState& state, std::uint64_t seed, const TableSpec& spec = {});

/// The k-th candidate of respot_cue's search (k = 0 is the table centre).
Vec2 respot_candidate(std::size_t k, std::uint64_t seed, const TableSpec& spec = {});

/// Uniform random placement with pairwise clearance 2.2R and at least
/// r_p + R from every pocket.
TableState random_start(std::uint64_t seed, const TableSpec& spec = {});

struct ShotLog {
  int turn = 0;
  Player shooter = Player::One;
  TableState state;
  physics::ShotParams intended;
  physics::ShotParams executed;
  EventSequence trace;
  ShotRuling ruling;
};

struct GameResult {
  Player winner = Player::One;
  int turns = 0;
  int shots = 0;
  bool capped = false;
  TableState final_state;
  std::vector<ShotLog> log;
};

struct GameOptions {
  int turn_cap = 60;
  TableSpec spec;
  PlayerAssignment assignment;
  Player first_shooter = Player::One;
  bool keep_log = true;
};

/// Plays a complete game. A pure function of (agents, start, noise, seed).
GameResult play_game(const agents::Agent& agent1, const agents::Agent& agent2,
                     const TableState& start, const NoiseModel& noise, std::uint64_t seed,
                     const GameOptions& options = {});

int did_player1_win(const GameResult& result);

}  // namespace cuecoach::game
