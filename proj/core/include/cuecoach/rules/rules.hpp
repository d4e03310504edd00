#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cuecoach/physics/events.hpp"
#include "cuecoach/physics/shot.hpp"
#include "cuecoach/physics/table.hpp"

namespace cuecoach::rules {

using physics::BallId;
using physics::EventSequence;
using physics::ShotParams;
using physics::TableSpec;
using physics::TableState;

inline constexpr std::size_t kRuleCount = 29;
inline constexpr std::size_t kValueRuleCount = 13;
inline constexpr std::size_t kDifficultyRuleCount = kRuleCount - kValueRuleCount;

/// r_i at index i - 1.
using RuleVector = std::array<double, kRuleCount>;

enum class Category { Value, Difficulty };

std::string_view to_string(Category c);

struct RuleInfo {
  int id = 0;
  std::string_view name;
  std::string_view text;
  Category category = Category::Value;
};

/// The 29 expert rules in id order.
const std::array<RuleInfo, kRuleCount>& rule_set();

const RuleInfo& rule_info(int id);

/// Everything a rule evaluator may look at: the shot, its pre-state and its
/// simulated outcome.
struct RuleContext {
  TableState pre;
  ShotParams shot;
  TableState post;
  EventSequence trace;
  std::vector<BallId> shooter_targets;
  std::vector<BallId> opponent_targets;
  TableSpec spec;
};

/// Simulates `shot` from `pre` without frames and wraps the result.
RuleContext make_context(const TableState& pre, const ShotParams& shot,
                         std::vector<BallId> shooter_targets, std::vector<BallId> opponent_targets,
                         const TableSpec& spec = {});

RuleVector evaluate_rules(const RuleContext& ctx);

// Likert quantization over seven bins.
inline constexpr std::array<double, 8> kLikertEdges = {0.0,   0.125, 0.25, 0.375,
                                                       0.625, 0.75,  0.875, 1.0};
inline constexpr std::array<std::string_view, 7> kLikertKeys = {
    "very low", "low", "mod low", "moderate", "mod high", "high", "very high"};

struct LikertLevel {
  int bin = 0;
  std::string_view key;
};

LikertLevel quantize_likert(double x);

/// Accepts the seven keys case-insensitively, with "moderately" for "mod".
std::optional<int> parse_likert_key(std::string_view text);

struct StrategyVectors {
  RuleVector w_o{};
  RuleVector w_d{};
};

const StrategyVectors& strategy_vectors();

using ValueRules = std::array<double, kValueRuleCount>;
using DifficultyRules = std::array<double, kDifficultyRuleCount>;

std::pair<ValueRules, DifficultyRules> split_value_difficulty(const RuleVector& r);
RuleVector join_value_difficulty(const ValueRules& v, const DifficultyRules& d);

/// [{id, name, text, category, offensive, defensive}, ...]
nlohmann::json rule_catalog_json();

}  // namespace cuecoach::rules
