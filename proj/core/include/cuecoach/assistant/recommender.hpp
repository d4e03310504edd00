#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cuecoach/assistant/lm.hpp"
#include "cuecoach/assistant/prompts.hpp"
#include "cuecoach/physics/events.hpp"
#include "cuecoach/physics/table.hpp"
#include "cuecoach/surrogate/model.hpp"

namespace cuecoach::assistant {

enum class Strategy { Offensive, Defensive, None };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view text);

using surrogate::Difficulty;

struct CandidatePlan {
  physics::EventSequence target_events;
  Strategy strategy = Strategy::None;
  Difficulty difficulty = Difficulty::None;
};

struct ParsedRecommendation {
  Strategy strategy = Strategy::None;
  Difficulty difficulty = Difficulty::None;
  std::vector<physics::EventSequence> shots;
  // Numbered lines dropped because a token did not parse.
  std::vector<std::string> rejected;
};

/// Reads STRATEGY / DIFFICULTY lines (case-insensitive, default none) and
/// numbered comma-separated event lines. A line with any invalid token is
/// rejected as a whole. Throws ParseFailure when no line survives.
ParsedRecommendation parse_recommendation(std::string_view text);

/// "STRATEGY: s\nDIFFICULTY: d\nSHOTS:\n1. EVENT, EVENT\n..." with no
/// trailing newline; parse_recommendation reads it back unchanged.
std::string format_recommendation(const ParsedRecommendation& rec);

struct RecommendOptions {
  int n_r = 5;
  int votes = 3;     // self-consistency samples per LM round
  int k_retry = 2;   // extra rounds when a round yields nothing parseable
  DecodeParams decode;
};

struct Recommendation {
  std::vector<CandidatePlan> plans;
  std::vector<std::string> diagnostics;
};

/// Recommender prompt for the given state, targets, query and shot count.
Prompt recommender_prompt(const physics::TableState& state, std::span<const physics::BallId> targets,
                          std::string_view query, int n_r);

/// Queries the LM for up to n_r event plans. Each round draws `votes`
/// samples; (s, d) is the majority over parseable samples, ties resolved
/// toward the earliest sample, and the event lines come from the first
/// parseable sample. LMUnavailable propagates; parse failures are retried
/// k_retry times and then reported in diagnostics.
Recommendation recommend(const physics::TableState& state, std::string_view query,
                         std::span<const physics::BallId> targets, const LMClient& lm,
                         const RecommendOptions& options = {});

}  // namespace cuecoach::assistant
