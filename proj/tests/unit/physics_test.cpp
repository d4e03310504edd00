#include <gtest/gtest.h>

#include <cmath>

#include "cuecoach/common/random.hpp"
#include "cuecoach/game/game.hpp"
#include "cuecoach/physics/dynamics.hpp"
#include "cuecoach/physics/simulator.hpp"
#include "fixtures.hpp"

namespace cuecoach {
namespace {

using namespace physics;
using testing::make_state;
using testing::shot;

TEST(CueImpulse, CentreStrikeHasNoSpin) {
  const auto m = cue_impulse(shot(2.0, 0.0), TableSpec{});
  EXPECT_NEAR(m.v.x, 2.0, 1e-12);
  EXPECT_NEAR(m.v.y, 0.0, 1e-12);
  EXPECT_EQ(m.w.x, 0.0);
  EXPECT_EQ(m.w.y, 0.0);
  EXPECT_EQ(m.w.z, 0.0);
}

TEST(CueImpulse, ZeroSpeedIsAtRest) {
  const auto m = cue_impulse(shot(0.0, 123.0, 30.0, 0.3, -0.2), TableSpec{});
  EXPECT_TRUE(m.at_rest());
  EXPECT_EQ(m.w.z, 0.0);
}

TEST(CueImpulse, TopspinFollowsSpinMap) {
  const TableSpec spec;
  const auto m = cue_impulse(shot(2.0, 90.0, 0.0, 0.0, 0.4), spec);
  EXPECT_NEAR(m.v.x, 0.0, 1e-12);
  EXPECT_NEAR(m.v.y, 2.0, 1e-12);
  // (5 / R) * b * v * (1 + sin 0)
  const double expected = 5.0 / 0.026 * 0.4 * 2.0;
  EXPECT_NEAR(topspin(m, {0.0, 1.0}), expected, 1e-9);
}

TEST(CueImpulse, ElevationReducesSpeedAndAmplifiesSpin) {
  const TableSpec spec;
  const auto m = cue_impulse(shot(2.0, 0.0, 30.0, 0.0, -0.2), spec);
  EXPECT_NEAR(m.v.x, 2.0 * std::cos(deg2rad(30.0)), 1e-12);
  EXPECT_NEAR(topspin(m, {1.0, 0.0}), 5.0 / 0.026 * -0.2 * 2.0 * 1.5, 1e-9);
}

TEST(ResolveBallBall, ElasticHeadOnExchangesVelocity) {
  auto [v1, v2] = resolve_ball_ball({1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, 1.0);
  EXPECT_NEAR(v1.x, 0.0, 1e-15);
  EXPECT_NEAR(v2.x, 1.0, 1e-15);
}

TEST(ResolveBallBall, RestitutionSplitsNormalSpeed) {
  auto [v1, v2] = resolve_ball_ball({1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, 0.95);
  EXPECT_NEAR(v1.x, 0.025, 1e-15);
  EXPECT_NEAR(v2.x, 0.975, 1e-15);
}

TEST(ResolveBallBall, GlancingKeepsTangentialComponent) {
  const Vec2 n = Vec2{1.0, 1.0}.unit();
  const Vec2 t{-n.y, n.x};
  const Vec2 v1{1.0, 0.0};
  auto [a, b] = resolve_ball_ball(v1, {0.0, 0.0}, n, 0.95);
  EXPECT_NEAR(a.dot(t), v1.dot(t), 1e-15);
  EXPECT_NEAR(b.dot(t), 0.0, 1e-15);
  EXPECT_NEAR(a.dot(n) + b.dot(n), v1.dot(n), 1e-15);
}

TEST(ResolveBallBall, SeparatingPairIsNoOp) {
  auto [a, b] = resolve_ball_ball({-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, 0.95);
  EXPECT_EQ(a, (Vec2{-1.0, 0.0}));
  EXPECT_EQ(b, (Vec2{0.0, 0.0}));
}

TEST(ResolveCushion, ReflectsNormalComponent) {
  auto [v, spin] = resolve_cushion({1.0, 0.5}, {-1.0, 0.0}, 0.85, 10.0, 0.7);
  EXPECT_NEAR(v.x, -0.85, 1e-15);
  EXPECT_NEAR(v.y, 0.5, 1e-15);
  EXPECT_NEAR(spin, 7.0, 1e-12);
}

TEST(ResolveCushion, ParallelMotionUnchanged) {
  auto [v, spin] = resolve_cushion({0.0, 0.7}, {-1.0, 0.0}, 0.85, 3.0, 0.7);
  EXPECT_EQ(v, (Vec2{0.0, 0.7}));
  EXPECT_EQ(spin, 3.0);
}

TEST(ResolveCushion, SuccessiveHitsCompose) {
  auto [v1, s1] = resolve_cushion({1.0, 1.0}, {-1.0, 0.0}, 0.85, 0.0, 0.7);
  auto [v2, s2] = resolve_cushion(v1, {0.0, -1.0}, 0.85, s1, 0.7);
  EXPECT_NEAR(v2.x, -0.85, 1e-15);
  EXPECT_NEAR(v2.y, -0.85, 1e-15);
}

TEST(CheckPocket, CapturesNearCorner) {
  EXPECT_EQ(check_pocket({0.03, 1.97}, TableSpec{}), PocketId::LT);
  EXPECT_FALSE(check_pocket({0.5, 1.0}, TableSpec{}).has_value());
}

TEST(CheckPocket, BoundaryIsClosed) {
  const TableSpec spec;
  const Vec2 at{spec.pocket_radius, 0.0};
  EXPECT_EQ(check_pocket(at, spec), PocketId::LB);
  EXPECT_FALSE(check_pocket({std::nextafter(spec.pocket_radius, 1.0), 0.0}, spec).has_value());
}

TEST(StrikeAndTrace, ZeroSpeedLeavesStateUnchanged) {
  const auto state = make_state({{BallId::Cue, {0.5, 0.5}}});
  const auto res = strike_and_trace(state, shot(0.0, 0.0), TableSpec{});
  EXPECT_EQ(res.post, state);
  EXPECT_TRUE(res.trace.empty());
  EXPECT_FALSE(res.truncated);
}

TEST(StrikeAndTrace, HeadOnFirstEventIsCueBlue) {
  const auto state = make_state({{BallId::Cue, {0.5, 0.5}}, {BallId::Blue, {0.5, 1.0}}});
  const auto res = strike_and_trace(state, shot(1.5, 90.0), TableSpec{});
  ASSERT_FALSE(res.trace.empty());
  EXPECT_EQ(res.trace.front().to_text(), "BALL-BALL-cue-blue");
}

TEST(StrikeAndTrace, RightwardShotMeetsRightCushionFirst) {
  const TableSpec spec;
  const auto state = make_state({{BallId::Cue, {0.5, 0.5}}});
  const auto res = strike_and_trace(state, shot(1.0, 0.0), spec);
  ASSERT_FALSE(res.trace.empty());
  EXPECT_EQ(res.trace.front().to_text(), "BALL-CUSHION-cue");
  EXPECT_NEAR(res.trace.front().pos.x, spec.width - spec.ball_radius, 1e-9);
  EXPECT_NEAR(res.trace.front().pos.y, 0.5, 1e-9);
}

TEST(StrikeAndTrace, StraightPotEndsWithPocketEvent) {
  // Blue sits on the line from the cue to the left side pocket.
  const auto state = make_state({{BallId::Cue, {0.3, 1.0}}, {BallId::Blue, {0.15, 1.0}}});
  const auto res = strike_and_trace(state, shot(2.0, 180.0), TableSpec{});
  bool potted = false;
  for (const auto& e : res.trace) {
    potted = potted || (e.kind == EventKind::BallPocket && e.ball == BallId::Blue);
  }
  EXPECT_TRUE(potted);
  EXPECT_FALSE(res.post.on_table(BallId::Blue));
}

TEST(StrikeAndTrace, FramesAreSampledAtFrameRate) {
  const auto state = make_state({{BallId::Cue, {0.5, 0.5}}});
  const auto res = strike_and_trace(state, shot(1.0, 45.0), TableSpec{});
  ASSERT_GE(res.frames.size(), 2u);
  EXPECT_EQ(res.frames.front().t, 0.0);
  EXPECT_NEAR(res.frames[1].t, 1.0 / 30.0, 1e-12);
  EXPECT_EQ(res.frames.back().state, res.post);
}

TEST(StrikeAndTrace, DeterministicAndConsistentOnRandomShots) {
  const TableSpec spec;
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto state = game::random_start(1000 + static_cast<std::uint64_t>(i), spec);
    const auto s = ShotParams::make_clamped(rng.uniform(0.0, 5.0), rng.uniform(0.0, 360.0),
                                            rng.uniform(0.0, 60.0), rng.uniform(-0.5, 0.5),
                                            rng.uniform(-0.5, 0.5));
    const auto a = strike_and_trace(state, s, spec);
    const auto b = strike_and_trace(state, s, spec);
    ASSERT_EQ(a.post, b.post);
    ASSERT_EQ(a.trace, b.trace);
    EXPECT_FALSE(a.truncated);
    EXPECT_FALSE(check_invariants(a.post, spec).has_value());
    EXPECT_FALSE(check_trace(a.trace).has_value());
    for (BallId id : kAllBalls) {
      bool pocketed = false;
      for (const auto& e : a.trace) pocketed = pocketed || (e.kind == EventKind::BallPocket && e.ball == id);
      EXPECT_EQ(pocketed, state.on_table(id) && !a.post.on_table(id));
    }
  }
}

TEST(Events, TextRoundTrip) {
  for (const char* text : {"BALL-BALL-cue-blue", "BALL-CUSHION-red", "BALL-POCKET-pink-rc"}) {
    const auto e = parse_event(text);
    ASSERT_TRUE(e.has_value()) << text;
    EXPECT_EQ(e->to_text(), text);
  }
  EXPECT_FALSE(parse_event("BALL-POCKET-cue-xx").has_value());
  EXPECT_FALSE(parse_event("BALL-BALL-cue-white").has_value());
  EXPECT_TRUE(parse_event("ball-ball-cue-blue").has_value());
}

TEST(Events, BallBallSymbolIsUnordered) {
  EXPECT_TRUE(same_symbol(Event::ball_ball(BallId::Cue, BallId::Red),
                          Event::ball_ball(BallId::Red, BallId::Cue)));
  EXPECT_FALSE(same_symbol(Event::ball_cushion(BallId::Cue), Event::ball_cushion(BallId::Red)));
}

TEST(ShotParams, ClampSetsFlag) {
  const auto s = ShotParams::make_clamped(7.0, -10.0, 0.0, 0.0, 0.0);
  EXPECT_EQ(s.v, 5.0);
  EXPECT_NEAR(s.alpha, 350.0, 1e-12);
  EXPECT_TRUE(s.clamped);
  EXPECT_FALSE(ShotParams::make_checked(5.5, 0.0, 0.0, 0.0, 0.0).has_value());
}

}  // namespace
}  // namespace cuecoach
