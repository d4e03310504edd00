#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "cuecoach/common/error.hpp"
#include "cuecoach/rules/rules.hpp"

namespace cuecoach::rules {

std::string_view to_string(Category c) {
  return c == Category::Value ? "value" : "difficulty";
}

const std::array<RuleInfo, kRuleCount>& rule_set() {
  // clang-format off
  static const std::array<RuleInfo, kRuleCount> rules = {{
      {1, "Ball Groupings",
       "Ball Groupings: Identify sets of two or more balls of the same type in close proximity that can be easily pocketed in sequence. These groupings increase the value of the table state as they allow for multiple shots without significant cue ball movement.",
       Category::Value},
      {2, "Makable Regions",
       "Makable Regions: Assess areas on the table where balls can be pocketed without using kick or bank shots. Pay special attention to overlapping makable regions for multiple balls, as these areas offer the most versatility and shot options.",
       Category::Value},
      {3, "Insurance Balls",
       "Insurance Balls: Locate balls that can be easily pocketed from almost anywhere on the table. These serve as valuable backup options when positioning goes awry or when faced with a difficult layout.",
       Category::Value},
      {4, "Break-up Opportunities",
       "Break-up Opportunities: Evaluate clusters of balls that need separation. Shots that can break up these clusters while pocketing a ball or achieving good position are particularly valuable.",
       Category::Value},
      {5, "Safety Opportunities",
       "Safety Opportunities: Identify chances to play defensive shots that leave the opponent in a difficult position. Good safety opportunities can be as valuable as offensive shots in many situations.",
       Category::Value},
      {6, "Two-way Shot Possibilities",
       "Two-way Shot Possibilities: Look for shots that offer both offensive and defensive potential. These shots allow for pocketing a ball while also setting up a good defensive position if missed, providing strategic flexibility.",
       Category::Value},
      {7, "Table Layout for Safeties",
       "Table Layout for Safeties: Assess the overall layout for defensive play. A valuable table state often includes options for effective safety plays if offensive shots become too risky.",
       Category::Value},
      {8, "Multiple-ball Positions",
       "Multiple-ball Positions: Consider the arrangement of multiple balls that need to be pocketed in sequence. A valuable layout allows for natural progression from one ball to the next without difficult positional play.",
       Category::Value},
      {9, "Avoidance Shots",
       "Avoidance Shots: Recognize balls that should be avoided to maintain a favourable layout or to leave the opponent in a difficult position. The ability to navigate around these balls adds value to the current state.",
       Category::Value},
      {10, "Combination and Bank Shot Opportunities",
       "Combination and Bank Shot Opportunities: While often more difficult, the presence of viable combination or bank shots can add value to a table state by providing additional options.",
       Category::Value},
      {11, "Rail Proximity",
       "Rail Proximity: Consider the position of balls near rails. While sometimes challenging, balls near rails can offer unique offensive or defensive opportunities.",
       Category::Value},
      {12, "Scratch Potential",
       "Scratch Potential: Evaluate the layout for potential scratches. A valuable table state minimizes the risk of scratch shots while maximizing scoring opportunities.",
       Category::Value},
      {13, "Potting Priority",
       "Above all, prioritise shots that pot the most target balls.",
       Category::Value},
      {14, "Distance",
       "Distance: Shot difficulty increases with greater distances between the cue ball, object ball, and pocket. Longer shots require more precise aim and speed control.",
       Category::Difficulty},
      {15, "Cut Angle",
       "Cut Angle: Larger cut angles are more challenging than straight or small angle shots. The margin for error decreases as the cut angle increases.",
       Category::Difficulty},
      {16, "Obstacle Balls",
       "Obstacle Balls: The presence of other balls obstructing the path of the cue ball or object ball significantly increases shot difficulty. This may require more precise positioning or the use of advanced techniques.",
       Category::Difficulty},
      {17, "Rail Contact",
       "Rail Contact: Shots requiring the cue ball to hit a rail first (like rail cut shots) are more complex due to the need to account for rail dynamics and potential throw effects.",
       Category::Difficulty},
      {18, "English Requirements",
       "English Requirements: Shots needing side spin (English) are more difficult to control and execute. The use of English introduces additional variables that affect both aim and cue ball behaviour after contact.",
       Category::Difficulty},
      {19, "Speed Control",
       "Speed Control: Shots requiring precise speed control, whether very fast or very slow, are more challenging. Speed affects pocket geometry, throw, and positioning for the next shot.",
       Category::Difficulty},
      {20, "Follow/Draw Needs",
       "Follow/Draw Needs: Shots requiring significant follow or draw are more difficult than natural roll shots. These shots demand precise vertical axis control of the cue ball.",
       Category::Difficulty},
      {21, "Rail Proximity",
       "Rail Proximity: Balls very close to rails can be more difficult to hit cleanly and may require specialized techniques like rail cut shots or spin.",
       Category::Difficulty},
      {22, "Scratch Potential",
       "Scratch Potential: Positions with a high risk of scratching are more difficult to play safely and effectively.",
       Category::Difficulty},
      {23, "Spin Shots",
       "Spin Shots: Difficulty increases with the amount of curve required. These shots demand precise control of both vertical and horizontal spin.",
       Category::Difficulty},
      {24, "Frozen Ball Situations",
       "Frozen Ball Situations: Balls touching each other or touching a rail create unique challenges, often requiring precise speed and spin control.",
       Category::Difficulty},
      {25, "Multiple Effects",
       "Multiple Effects: Shots involving a combination of factors (e.g., cut angle, speed, and English) are particularly challenging due to the need to account for multiple variables simultaneously.",
       Category::Difficulty},
      {26, "Throw Effects",
       "Throw Effects: Accounting for throw (both cut-induced and English-induced) adds complexity, especially on longer shots or those with significant cut angles.",
       Category::Difficulty},
      {27, "Deflection and Cue Ball Curve",
       "Deflection and Cue Ball Curve: When using English, especially at higher speeds or with an elevated cue, accounting for cue ball deflection and curve increases shot difficulty.",
       Category::Difficulty},
      {28, "Multi-ball Collision",
       "Multi-ball Collision: It is exponentially difficult to pot a ball by colliding it with multiple balls.",
       Category::Difficulty},
      {29, "Multi-cushion Collision",
       "Multi-cushion Collision: It is exponentially difficult to pot a ball by having it bounce off multiple cushions.",
       Category::Difficulty},
  }};
  // clang-format on
  return rules;
}

const RuleInfo& rule_info(int id) {
  if (id < 1 || id > static_cast<int>(kRuleCount)) {
    throw InvalidInput("rule id out of range: " + std::to_string(id));
  }
  return rule_set()[static_cast<std::size_t>(id - 1)];
}

LikertLevel quantize_likert(double x) {
  int bin = 0;
  if (x >= 1.0) {
    bin = 6;
  } else {
    for (int k = 6; k >= 1; --k) {
      if (x >= kLikertEdges[static_cast<std::size_t>(k)]) {
        bin = k;
        break;
      }
    }
  }
  return {bin, kLikertKeys[static_cast<std::size_t>(bin)]};
}

std::optional<int> parse_likert_key(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!s.empty() && s.back() != ' ') {
      s += ' ';
    }
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.rfind("moderately ", 0) == 0) s = "mod " + s.substr(11);
  for (std::size_t k = 0; k < kLikertKeys.size(); ++k) {
    if (s == kLikertKeys[k]) return static_cast<int>(k);
  }
  return std::nullopt;
}

const StrategyVectors& strategy_vectors() {
  static const StrategyVectors vectors = [] {
    StrategyVectors v;
    for (int id : {1, 2, 3, 4, 6, 8, 10, 11, 13}) v.w_o[static_cast<std::size_t>(id - 1)] = 1.0;
    for (int id : {5, 6, 7, 9, 12}) v.w_d[static_cast<std::size_t>(id - 1)] = 1.0;
    return v;
  }();
  return vectors;
}

std::pair<ValueRules, DifficultyRules> split_value_difficulty(const RuleVector& r) {
  ValueRules v{};
  DifficultyRules d{};
  std::copy_n(r.begin(), kValueRuleCount, v.begin());
  std::copy_n(r.begin() + kValueRuleCount, kDifficultyRuleCount, d.begin());
  return {v, d};
}

RuleVector join_value_difficulty(const ValueRules& v, const DifficultyRules& d) {
  RuleVector r{};
  std::copy(v.begin(), v.end(), r.begin());
  std::copy(d.begin(), d.end(), r.begin() + kValueRuleCount);
  return r;
}

nlohmann::json rule_catalog_json() {
  const auto& sv = strategy_vectors();
  nlohmann::json out = nlohmann::json::array();
  for (const auto& rule : rule_set()) {
    const auto i = static_cast<std::size_t>(rule.id - 1);
    out.push_back({{"id", rule.id},
                   {"name", std::string(rule.name)},
                   {"text", std::string(rule.text)},
                   {"category", std::string(to_string(rule.category))},
                   {"offensive", sv.w_o[i] == 1.0},
                   {"defensive", sv.w_d[i] == 1.0}});
  }
  return out;
}

}  // namespace cuecoach::rules
