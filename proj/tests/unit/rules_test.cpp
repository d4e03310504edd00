#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <set>

#include "cuecoach/common/error.hpp"
#include "cuecoach/common/random.hpp"
#include "cuecoach/game/game.hpp"
#include "cuecoach/rules/geometry.hpp"
#include "cuecoach/rules/rules.hpp"
#include "fixtures.hpp"

namespace cuecoach {
namespace {

using namespace rules;
using physics::Event;
using physics::PocketId;
using testing::make_state;
using testing::shot;

const std::vector<BallId> kP1{BallId::Blue, BallId::Red, BallId::Yellow};
const std::vector<BallId> kP2{BallId::Green, BallId::Black, BallId::Pink};

RuleContext synthetic(const TableState& pre, const TableState& post, EventSequence trace,
                      ShotParams s = {}) {
  return RuleContext{pre, s, post, std::move(trace), kP1, kP2, TableSpec{}};
}

TEST(RuleSet, IdsAndCategories) {
  const auto& rules = rule_set();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    EXPECT_EQ(rules[i].id, static_cast<int>(i + 1));
    EXPECT_EQ(rules[i].category, i < 13 ? Category::Value : Category::Difficulty);
    EXPECT_FALSE(rules[i].text.empty());
  }
  EXPECT_EQ(rule_info(13).text, "Above all, prioritise shots that pot the most target balls.");
  EXPECT_EQ(rule_info(19).name, "Speed Control");
  EXPECT_THROW(rule_info(30), InvalidInput);
}

TEST(RuleSet, CatalogJson) {
  const auto j = rule_catalog_json();
  ASSERT_EQ(j.size(), 29u);
  EXPECT_EQ(j[4]["id"], 5);
  EXPECT_EQ(j[4]["defensive"], true);
  EXPECT_EQ(j[4]["offensive"], false);
  EXPECT_EQ(j[5]["offensive"], true);
  EXPECT_EQ(j[5]["defensive"], true);
  EXPECT_EQ(j[19]["category"], "difficulty");
}

TEST(StrategyVectors, Classification) {
  const auto& sv = strategy_vectors();
  const std::set<int> off{1, 2, 3, 4, 6, 8, 10, 11, 13};
  const std::set<int> def{5, 6, 7, 9, 12};
  for (int id = 1; id <= 29; ++id) {
    const auto i = static_cast<std::size_t>(id - 1);
    EXPECT_EQ(sv.w_o[i], off.count(id) ? 1.0 : 0.0) << id;
    EXPECT_EQ(sv.w_d[i], def.count(id) ? 1.0 : 0.0) << id;
  }
}

TEST(SplitValueDifficulty, RoundTripsAndSplitsAtFourteen) {
  RuleVector r{};
  auto [v0, d0] = split_value_difficulty(r);
  for (double x : v0) EXPECT_EQ(x, 0.0);
  for (double x : d0) EXPECT_EQ(x, 0.0);
  r[13] = 1.0;
  auto [v1, d1] = split_value_difficulty(r);
  for (double x : v1) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(d1[0], 1.0);
  Rng rng(1);
  for (double& x : r) x = rng.uniform();
  auto [v, d] = split_value_difficulty(r);
  EXPECT_EQ(join_value_difficulty(v, d), r);
}

// Interval-table oracle written from the published thresholds in percent.
int likert_oracle(double x) {
  const double pct = x * 100.0;
  if (pct < 12.5) return 0;
  if (pct < 25.0) return 1;
  if (pct < 37.5) return 2;
  if (pct < 62.5) return 3;
  if (pct < 75.0) return 4;
  if (pct < 87.5) return 5;
  return 6;
}

TEST(Likert, SpecExamples) {
  EXPECT_EQ(quantize_likert(0.10).bin, 0);
  EXPECT_EQ(quantize_likert(0.10).key, "very low");
  EXPECT_EQ(quantize_likert(0.50).bin, 3);
  EXPECT_EQ(quantize_likert(0.50).key, "moderate");
  EXPECT_EQ(quantize_likert(1.00).bin, 6);
  EXPECT_EQ(quantize_likert(1.00).key, "very high");
  EXPECT_EQ(quantize_likert(0.3333).key, "mod low");
}

TEST(Likert, BoundariesAndSamples) {
  const int expected[] = {0, 1, 2, 3, 4, 5, 6, 6};
  for (std::size_t i = 0; i < kLikertEdges.size(); ++i) {
    EXPECT_EQ(quantize_likert(kLikertEdges[i]).bin, expected[i]) << kLikertEdges[i];
  }
  Rng rng(2024);
  std::set<int> seen;
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.uniform();
    const int bin = quantize_likert(x).bin;
    EXPECT_EQ(bin, likert_oracle(x));
    seen.insert(bin);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Likert, ParsesKeysLeniently) {
  EXPECT_EQ(parse_likert_key("very low"), 0);
  EXPECT_EQ(parse_likert_key("Moderately Low"), 2);
  EXPECT_EQ(parse_likert_key("mod high"), 4);
  EXPECT_EQ(parse_likert_key("  HIGH. "), 5);
  EXPECT_EQ(parse_likert_key("moderate"), 3);
  EXPECT_FALSE(parse_likert_key("extreme").has_value());
}

TEST(Geometry, GhostBallOracle) {
  const Vec2 ghost = ghost_ball({0.5, 1.5}, {0.0, 2.0}, 0.026);
  // ghost = ball - 2R * unit(pocket - ball)
  const double k = 2.0 * 0.026 / std::sqrt(0.5);
  EXPECT_NEAR(ghost.x, 0.5 + 0.5 * k, 1e-12);
  EXPECT_NEAR(ghost.y, 1.5 - 0.5 * k, 1e-12);
}

TEST(Geometry, StraightShotHasZeroCut) {
  EXPECT_NEAR(cut_angle_deg({0.5, 0.5}, {0.5, 1.0}, {0.5, 2.0}, 0.026), 0.0, 1e-9);
}

TEST(Rules, PottingPriorityIsFractionOfRemaining) {
  const auto pre = make_state({{BallId::Cue, {0.5, 0.5}},
                               {BallId::Blue, {0.5, 1.0}},
                               {BallId::Red, {0.2, 1.5}},
                               {BallId::Yellow, {0.8, 1.5}}});
  auto post = pre;
  post.remove(BallId::Blue);
  const auto r = evaluate_rules(
      synthetic(pre, post,
                {Event::ball_ball(BallId::Cue, BallId::Blue, {0.5, 0.974}),
                 Event::ball_pocket(BallId::Blue, PocketId::LT, {0.03, 1.97})}));
  EXPECT_NEAR(r[12], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(r[27], 0.0);
}

TEST(Rules, MultiCushionPotFollowsExponentialLaw) {
  const auto pre = make_state({{BallId::Cue, {0.5, 0.5}}, {BallId::Blue, {0.5, 1.0}}});
  auto post = pre;
  post.remove(BallId::Blue);
  const auto r = evaluate_rules(synthetic(pre, post,
                                          {Event::ball_ball(BallId::Cue, BallId::Blue),
                                           Event::ball_cushion(BallId::Blue),
                                           Event::ball_cushion(BallId::Cue),
                                           Event::ball_cushion(BallId::Blue),
                                           Event::ball_pocket(BallId::Blue, PocketId::LT)}));
  EXPECT_NEAR(r[28], 0.75, 1e-15);
  EXPECT_NEAR(r[12], 1.0, 1e-15);
}

TEST(Rules, MultiBallMonotoneInCollisions) {
  const auto pre = make_state({{BallId::Cue, {0.5, 0.5}},
                               {BallId::Blue, {0.5, 1.0}},
                               {BallId::Red, {0.5, 1.2}},
                               {BallId::Green, {0.5, 1.4}}});
  auto post = pre;
  post.remove(BallId::Green);
  double prev = -1.0;
  for (int b = 1; b <= 4; ++b) {
    EventSequence trace{Event::ball_ball(BallId::Cue, BallId::Blue)};
    for (int k = 1; k < b; ++k) trace.push_back(Event::ball_ball(BallId::Blue, BallId::Red));
    trace.push_back(Event::ball_pocket(BallId::Green, PocketId::LT));
    const double r28 = evaluate_rules(synthetic(pre, post, trace))[27];
    EXPECT_NEAR(r28, 1.0 - std::pow(2.0, -(b - 1)), 1e-15);
    EXPECT_GE(r28, prev);
    prev = r28;
  }
}

TEST(Rules, MultiCushionMonotoneInCushions) {
  const auto pre = make_state({{BallId::Cue, {0.5, 0.5}}, {BallId::Blue, {0.5, 1.0}}});
  auto post = pre;
  post.remove(BallId::Blue);
  double prev = -1.0;
  for (int c = 0; c <= 5; ++c) {
    EventSequence trace{Event::ball_ball(BallId::Cue, BallId::Blue)};
    for (int k = 0; k < c; ++k) trace.push_back(Event::ball_cushion(BallId::Blue));
    trace.push_back(Event::ball_pocket(BallId::Blue, PocketId::RB));
    const double r29 = evaluate_rules(synthetic(pre, post, trace))[28];
    EXPECT_GE(r29, prev);
    prev = r29;
  }
}

TEST(Rules, DistanceMonotoneInPathLength) {
  double prev = -1.0;
  for (double y = 0.95; y >= 0.1; y -= 0.05) {
    const auto pre = make_state({{BallId::Cue, {0.5, y}}, {BallId::Blue, {0.5, 1.2}}});
    auto post = pre;
    post.remove(BallId::Blue);
    const auto r = evaluate_rules(synthetic(pre, post,
                                            {Event::ball_ball(BallId::Cue, BallId::Blue),
                                             Event::ball_pocket(BallId::Blue, PocketId::LT)}));
    const double expected =
        clamp01((1.2 - y + distance({0.5, 1.2}, {0.0, 2.0})) / std::sqrt(5.0));
    EXPECT_NEAR(r[13], expected, 1e-12);
    EXPECT_GE(r[13], prev);
    prev = r[13];
  }
}

TEST(Rules, CutAngleMonotone) {
  const double R = 0.026;
  const Vec2 start{0.5, 0.4};
  const Vec2 obj{0.5, 1.0};
  std::vector<std::pair<double, double>> seen;  // (oracle angle, r15)
  for (int k = 0; k <= 8; ++k) {
    // Cue centre at contact sits on the circle of radius 2R around the object.
    const double phi = deg2rad(-90.0 + 10.0 * k);
    const Vec2 c = obj + Vec2{std::cos(phi), std::sin(phi)} * (2.0 * R);
    const Vec2 contact = (c + obj) * 0.5;
    const auto pre = make_state({{BallId::Cue, start}, {BallId::Blue, obj}});
    const auto r = evaluate_rules(
        synthetic(pre, pre, {Event::ball_ball(BallId::Cue, BallId::Blue, contact)}));
    const double oracle =
        rad2deg(std::acos((c - start).unit().dot((obj - c).unit())));
    EXPECT_NEAR(r[14], oracle / 90.0, 1e-9);
    seen.emplace_back(oracle, r[14]);
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_GE(seen[i].second, seen[i - 1].second);
}

TEST(Rules, StrikeParameterRules) {
  const auto pre = make_state({{BallId::Cue, {0.5, 0.5}}, {BallId::Blue, {0.5, 1.0}}});
  const auto r = evaluate_rules(synthetic(pre, pre, {}, shot(4.0, 90.0, 45.0, 0.25, -0.5)));
  EXPECT_NEAR(r[17], 0.5, 1e-15);
  EXPECT_NEAR(r[18], 0.6, 1e-15);
  EXPECT_NEAR(r[19], 1.0, 1e-15);
  EXPECT_NEAR(r[22], 0.5, 1e-15);
}

TEST(Rules, ObstaclesCountCorridorBalls) {
  const auto clear = make_state({{BallId::Cue, {0.5, 0.5}}, {BallId::Blue, {0.5, 1.0}}});
  const auto blocked = make_state({{BallId::Cue, {0.5, 0.5}},
                                   {BallId::Blue, {0.5, 1.0}},
                                   {BallId::Green, {0.5, 0.75}}});
  const EventSequence trace{Event::ball_ball(BallId::Cue, BallId::Blue)};
  EXPECT_EQ(evaluate_rules(synthetic(clear, clear, trace))[15], 0.0);
  EXPECT_NEAR(evaluate_rules(synthetic(blocked, blocked, trace))[15], 1.0 - std::exp(-0.7),
              1e-12);
}

TEST(Rules, BoundedAndDeterministicOnRandomContexts) {
  Rng rng(77);
  for (int i = 0; i < 10000; ++i) {
    const auto pre = game::random_start(static_cast<std::uint64_t>(i));
    const auto s = ShotParams::make_clamped(rng.uniform(0.0, 5.0), rng.uniform(0.0, 360.0),
                                            rng.uniform(0.0, 90.0), rng.uniform(-0.5, 0.5),
                                            rng.uniform(-0.5, 0.5));
    const bool swap = rng.bernoulli(0.5);
    const auto ctx = make_context(pre, s, swap ? kP2 : kP1, swap ? kP1 : kP2);
    const auto r = evaluate_rules(ctx);
    for (std::size_t k = 0; k < r.size(); ++k) {
      ASSERT_TRUE(std::isfinite(r[k])) << "rule " << k + 1;
      ASSERT_GE(r[k], 0.0) << "rule " << k + 1;
      ASSERT_LE(r[k], 1.0) << "rule " << k + 1;
    }
    if (i % 100 == 0) {
      ASSERT_EQ(evaluate_rules(ctx), r);
    }
  }
}

}  // namespace
}  // namespace cuecoach
