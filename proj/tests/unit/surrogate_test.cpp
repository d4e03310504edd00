#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numeric>

#include "cuecoach/common/error.hpp"
#include "cuecoach/surrogate/dataset.hpp"
#include "cuecoach/surrogate/model.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "scripted_agents.hpp"

namespace cuecoach {
namespace {

using namespace surrogate;
using physics::BallId;

TEST(Histogram, EdgeConventions) {
  const std::vector<double> ones{1, 1, 1};
  EXPECT_DOUBLE_EQ(histogram(ones, 10)[9], 1.0);
  const std::vector<double> zero{0.0};
  EXPECT_DOUBLE_EQ(histogram(zero, 10)[0], 1.0);
  const std::vector<double> spread{0.0, 0.5, 1.0};
  const auto p = histogram(spread, 10);
  EXPECT_NEAR(p[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(p[5], 1.0 / 3, 1e-15);
  EXPECT_NEAR(p[9], 1.0 / 3, 1e-15);
}

TEST(Histogram, RejectsBadInput) {
  EXPECT_THROW(histogram(std::vector<double>{}, 10), EmptyInput);
  EXPECT_THROW(histogram(std::vector<double>{1.5}, 10), InvalidInput);
  EXPECT_THROW(histogram(std::vector<double>{0.5}, 1), InvalidInput);
}

TEST(Distribution, ExpectedValue) {
  ValueDistribution last(10, 0.0);
  last[9] = 1.0;
  EXPECT_NEAR(expected_value(last), 0.95, 1e-12);
  EXPECT_NEAR(expected_value(ValueDistribution(10, 0.1)), 0.5, 1e-12);
  ValueDistribution ends(10, 0.0);
  ends[0] = ends[9] = 0.5;
  EXPECT_NEAR(expected_value(ends), 0.5, 1e-12);
}

TEST(Distribution, Entropy) {
  ValueDistribution one(10, 0.0);
  one[3] = 1.0;
  EXPECT_DOUBLE_EQ(entropy(one), 0.0);
  EXPECT_NEAR(entropy(ValueDistribution(10, 0.1)), std::log(10.0), 1e-12);
  ValueDistribution half(10, 0.0);
  half[0] = half[1] = 0.5;
  EXPECT_NEAR(entropy(half), 0.693147, 1e-6);
}

TEST(Anchors, QuantileSections) {
  const std::vector<double> h{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const auto a = difficulty_anchors(h);
  EXPECT_NEAR(a.low, 0.25, 1e-12);
  EXPECT_NEAR(a.med, 0.65, 1e-12);
  EXPECT_NEAR(a.high, 0.95, 1e-12);
}

TEST(Anchors, DegenerateSections) {
  const auto same = difficulty_anchors(std::vector<double>(7, 0.8));
  EXPECT_DOUBLE_EQ(same.low, 0.8);
  EXPECT_DOUBLE_EQ(same.med, 0.8);
  EXPECT_DOUBLE_EQ(same.high, 0.8);
  const auto single = difficulty_anchors(std::vector<double>{1.3});
  EXPECT_DOUBLE_EQ(single.low, 1.3);
  EXPECT_DOUBLE_EQ(single.high, 1.3);
  EXPECT_THROW(difficulty_anchors(std::vector<double>{}), EmptyInput);
}

TEST(Anchors, AbsoluteThresholds) {
  const double hmax = std::log(10.0);
  const std::vector<double> h{0.1 * hmax, 0.3 * hmax, 0.5 * hmax, 0.9 * hmax};
  const auto a = difficulty_anchors(h, AnchorMode::Absolute, hmax);
  EXPECT_NEAR(a.low, 0.2 * hmax, 1e-12);
  EXPECT_NEAR(a.med, 0.5 * hmax, 1e-12);
  EXPECT_NEAR(a.high, 0.9 * hmax, 1e-12);
}

TEST(DifficultyScore, Formula) {
  const Anchors a{0.3, 1.0, 2.0};
  const double hmax = std::log(10.0);
  EXPECT_DOUBLE_EQ(difficulty_score(1.0, Difficulty::Medium, a, hmax), hmax);
  EXPECT_NEAR(difficulty_score(1.0, Difficulty::Easy, a, hmax), 1.602585, 1e-6);
  EXPECT_DOUBLE_EQ(difficulty_score(1.0, Difficulty::None, a, hmax), 0.0);
  EXPECT_LT(difficulty_score(0.9, Difficulty::Hard, a, hmax), hmax);
}

TEST(Mlp, ZeroWeightsGiveUniform) {
  Mlp net({29, 16, 10}, 1);
  for (auto& w : net.weights) w.setZero();
  for (auto& b : net.biases) b.setZero();
  const Matrix out = net.forward(Matrix::Random(29, 3));
  for (Eigen::Index i = 0; i < out.size(); ++i) EXPECT_NEAR(out.data()[i], 0.1, 1e-15);
}

TEST(Mlp, OutputsNormalized) {
  Mlp net({29, 32, 32, 10}, 7);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    auto [x, p] = testing::random_pair(rng, 29, 10);
    EXPECT_NEAR(net.forward(x).sum(), 1.0, 1e-9);
  }
}

TEST(Mlp, GradientMatchesFiniteDifferences) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    Mlp net({29, 8, 8, 10}, derive_seed(5, t));
    auto [x, p] = testing::random_pair(rng, 29, 10);
    EXPECT_LT(testing::gradient_check(net, x, p), 1e-4) << "case " << t;
  }
}

std::vector<TrainingSample> toy_dataset(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TrainingSample> out(n);
  for (auto& s : out) {
    for (double& r : s.r) r = rng.uniform();
    // Win rate tracks rule 13 so there is something to learn.
    std::vector<double> v{s.r[12], 0.5 * s.r[12] + 0.5 * rng.uniform()};
    s.p = histogram(v, 10);
  }
  return out;
}

TEST(Train, MemorizesOneSample) {
  auto data = toy_dataset(1, 2);
  data[0].p = ValueDistribution{0, 0, 0.25, 0.5, 0.25, 0, 0, 0, 0, 0};
  Hyper h;
  h.hidden = {32, 32};
  h.batch = 1;
  h.lr = 0.05;
  h.dropout = 0.0;
  h.epochs = 400;
  const auto model = train(data, h);
  EXPECT_LT(model.loss_curve().back() - entropy(data[0].p), 0.05);
}

TEST(Train, SeededRunsAreBitIdentical) {
  const auto data = toy_dataset(200, 4);
  Hyper h;
  h.hidden = {32, 32};
  h.batch = 16;
  h.epochs = 3;
  h.seed = 9;
  const auto a = train(data, h);
  const auto b = train(data, h);
  ASSERT_EQ(a.net().layers(), b.net().layers());
  for (std::size_t l = 0; l < a.net().layers(); ++l) {
    EXPECT_TRUE(a.net().weights[l] == b.net().weights[l]);
    EXPECT_TRUE(a.net().biases[l] == b.net().biases[l]);
  }
  EXPECT_EQ(a.loss_curve(), b.loss_curve());
  EXPECT_EQ(a.loss_curve().size(), 4u);
}

TEST(Train, RejectsEmptyDataset) {
  EXPECT_THROW(train(std::vector<TrainingSample>{}, Hyper{}), EmptyInput);
}

TEST(Model, JsonRoundTrip) {
  Hyper h;
  h.hidden = {16};
  h.epochs = 1;
  const auto model = train(toy_dataset(50, 1), h);
  const auto path = std::filesystem::temp_directory_path() / "cuecoach_model_roundtrip.json";
  model.save(path);
  const auto back = SurrogateModel::load(path);
  std::filesystem::remove(path);
  rules::RuleVector r{};
  r[12] = 0.5;
  const auto p = model.predict(r);
  const auto q = back.predict(r);
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_DOUBLE_EQ(p[k], q[k]);
  EXPECT_DOUBLE_EQ(back.anchors().med, model.anchors().med);
  EXPECT_NEAR(back.h_max(), std::log(10.0), 1e-12);
}

TEST(Model, MissingFile) {
  EXPECT_THROW(SurrogateModel::load("/nonexistent/model.json"), ModelMissing);
}

TEST(GenSample, DeterministicAgentWithoutNoiseIsOneHot) {
  testing::PotFirstTargetAgent agent;
  GenConfig cfg;
  cfg.M = 6;
  cfg.N = 2;
  cfg.noise = game::NoiseModel::none();
  const auto start = game::random_start(21);
  const auto s = gen_sample(agent, start, cfg, 5);
  EXPECT_NEAR(std::accumulate(s.p.begin(), s.p.end(), 0.0), 1.0, 1e-12);
  EXPECT_EQ(std::count(s.p.begin(), s.p.end(), 1.0), 1);
  for (double r : s.r) {
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
  }
}

TEST(GenDataset, IndependentOfJobsAndRoundTrips) {
  testing::PotFirstTargetAgent agent;
  GenConfig cfg;
  cfg.M = 2;
  cfg.N = 1;
  const auto a = gen_dataset(agent, 4, cfg, 17, 1);
  const auto b = gen_dataset(agent, 4, cfg, 17, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].p, b[i].p);
    EXPECT_EQ(a[i].r, b[i].r);
  }
  const auto path = std::filesystem::temp_directory_path() / "cuecoach_dataset.jsonl";
  write_dataset(path, a);
  const auto back = read_dataset(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(back[i].p, a[i].p);
    EXPECT_EQ(back[i].r, a[i].r);
    EXPECT_EQ(back[i].shot, a[i].shot);
    EXPECT_EQ(back[i].meta.M, 2);
  }
}

TEST(GenSample, UniformExploreReplacesShot) {
  testing::PotFirstTargetAgent agent;
  GenConfig cfg;
  cfg.noise = game::NoiseModel::none();
  cfg.explore = 1.0;
  cfg.explore_uniform = true;
  const auto start = game::random_start(21);
  const auto chosen = agent.select_shot(start, cfg.game.assignment.player1, derive_seed(5, 0));
  const auto s = gen_sample(agent, start, cfg, 5);
  EXPECT_TRUE(s.meta.explored);
  EXPECT_TRUE(s.shot.in_bounds());
  EXPECT_NE(s.shot, chosen);
  EXPECT_EQ(gen_sample(agent, start, cfg, 5).shot, s.shot);

  cfg.explore = 0.0;
  const auto plain = gen_sample(agent, start, cfg, 5);
  EXPECT_FALSE(plain.meta.explored);
  EXPECT_EQ(plain.shot, chosen);
}

TEST(GenConfig, Validation) {
  GenConfig cfg;
  cfg.M = 0;
  EXPECT_THROW(cfg.validate(), InvalidInput);
}

}  // namespace
}  // namespace cuecoach
