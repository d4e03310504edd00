#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cuecoach/agents/agent.hpp"
#include "cuecoach/game/game.hpp"

namespace cuecoach::harness {

/// Games with one agent as player 1 against another as player 2.
struct WinCell {
  int games = 0;
  int wins = 0;  // player-1 wins

  double rate() const { return games > 0 ? 100.0 * wins / games : 0.0; }
  // Binomial standard deviation in percentage points.
  double stddev() const;
};

/// Ordered cells: row plays first. Diagonal cells stay empty.
class WinTable {
 public:
  WinTable() = default;
  explicit WinTable(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  const WinCell& cell(std::size_t row, std::size_t col) const { return cells_[row * names_.size() + col]; }
  WinCell& cell(std::size_t row, std::size_t col) { return cells_[row * names_.size() + col]; }

  // Wins of `a` over `b` from both orientations combined.
  WinCell combined(std::size_t a, std::size_t b) const;

  nlohmann::json to_json() const;
  // Aligned text: "rate (std)" per cell, "-" on the diagonal.
  std::string to_text() const;

 private:
  std::vector<std::string> names_;
  std::vector<WinCell> cells_;
};

struct TournamentOptions {
  // Per unordered pair; split evenly between the two orientations.
  int games_per_pair = 100;
  game::NoiseModel noise;
  game::GameOptions game;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Every unordered pair plays games_per_pair / 2 games in each seat order.
/// Game k of every pair and orientation starts from the same seeded table.
WinTable run_tournament(std::span<const agents::AgentPtr> agents, const TournamentOptions& options);

/// Fraction of states (one noiseless shot each) where the shot pots at
/// least one of `targets`.
double potting_rate(const agents::Agent& agent, std::span<const physics::TableState> states,
                    std::span<const physics::BallId> targets, std::uint64_t seed,
                    const physics::TableSpec& spec = {});

}  // namespace cuecoach::harness
