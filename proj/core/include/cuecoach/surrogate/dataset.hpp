#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "cuecoach/agents/agent.hpp"
#include "cuecoach/game/game.hpp"
#include "cuecoach/rules/rules.hpp"

namespace cuecoach::surrogate {

/// Probability mass over n equal-width win-rate bins of [0, 1].
using ValueDistribution = std::vector<double>;

/// Bin k covers [k/n, (k+1)/n); the last bin also takes 1.0.
ValueDistribution histogram(std::span<const double> values, int n);

struct GenConfig {
  int M = 20;  // noisy executions of the agent's shot
  int N = 5;   // games played out from each execution
  int n = 10;  // histogram bins
  game::NoiseModel noise;
  game::GameOptions game;
  // Probability that a sample's shot replaces the agent's shot: perturbed by
  // explore_noise, or drawn uniformly over the parameter box when
  // explore_uniform is set. Off-policy samples teach the surrogate about the
  // shots a tuner will visit; 0 keeps samples on-policy.
  double explore = 0.0;
  game::NoiseModel explore_noise{0.5, 3.0, 5.0, 0.1, 0.1};
  bool explore_uniform = false;

  void validate() const;
};

struct SampleMeta {
  std::uint64_t seed = 0;
  int M = 0;
  int N = 0;
  game::NoiseModel noise;
  bool explored = false;
};

struct TrainingSample {
  physics::TableState state;
  physics::ShotParams shot;
  rules::RuleVector r{};
  ValueDistribution p;
  SampleMeta meta;
};

/// One training sample: the agent's shot for player 1, its rule vector on
/// the noiseless outcome, and the histogram of M rollout win rates.
///
/// Each noisy execution j draws its perturbation from its own stream; the
/// N follow-up games of every execution share seeds (common random
/// numbers), so zero noise with a deterministic agent gives a one-hot p.
TrainingSample gen_sample(const agents::Agent& agent, const physics::TableState& state,
                          const GenConfig& cfg, std::uint64_t seed);

using Progress = std::function<void(std::size_t done, std::size_t total)>;

/// `count` samples from seeded random starts. Output is independent of `jobs`.
std::vector<TrainingSample> gen_dataset(const agents::Agent& agent, std::size_t count,
                                        const GenConfig& cfg, std::uint64_t seed, int jobs = 1,
                                        const Progress& progress = {});

nlohmann::json to_json(const TrainingSample& sample);
TrainingSample sample_from_json(const nlohmann::json& j);

void write_dataset(const std::filesystem::path& path, std::span<const TrainingSample> samples);
std::vector<TrainingSample> read_dataset(const std::filesystem::path& path);

}  // namespace cuecoach::surrogate
