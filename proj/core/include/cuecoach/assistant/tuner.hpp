#pragma once

#include <span>
#include <vector>

#include "cuecoach/assistant/annealing.hpp"
#include "cuecoach/assistant/recommender.hpp"
#include "cuecoach/rules/rules.hpp"
#include "cuecoach/surrogate/model.hpp"

namespace cuecoach::assistant {

/// (w_d - w_o) . r for defensive, (w_o - w_d) . r for offensive, 0 for none.
double strategy_score(Strategy s, const rules::RuleVector& r);

struct TuneCandidate {
  physics::ShotParams start;
  CandidatePlan plan;
};

struct TunedShot {
  physics::ShotParams shot;
  rules::RuleVector rule_vector{};
  surrogate::ValueDistribution distribution;
  double expected_value = 0.0;
  double v_s = 0.0;
  double v_d = 0.0;
  double entropy = 0.0;
  // Foul flag of the noiseless outcome.
  bool foul = false;
  // Objective actually maximized: expected_value + v_s + v_d, minus the
  // foul penalty when it applies.
  double score = 0.0;
  int achieved_lcs = 0;
  physics::EventSequence trace;
  physics::TableState post;
  CandidatePlan plan;
  std::size_t candidate = 0;
};

struct TuneOptions {
  SAConfig sa;
  // Subtracted from the score of shots whose noiseless outcome is a foul;
  // 0 scores fouls like any other shot.
  double foul_penalty = 10.0;
  int jobs = 1;
  physics::TableSpec spec;
};

/// Scores one shot: simulate, evaluate rules, predict, add strategy and
/// difficulty terms.
TunedShot score_shot(const physics::TableState& state, const physics::ShotParams& shot,
                     const CandidatePlan& plan, std::span<const physics::BallId> targets,
                     const surrogate::SurrogateModel& model, const TuneOptions& options);

struct CandidateRun {
  double initial_score = 0.0;
  double best_score = 0.0;
  // Best-so-far score after each annealing step (index 0 is the start).
  std::vector<double> best_curve;
};

struct TuneResult {
  TunedShot best;
  std::vector<CandidateRun> runs;
};

/// Anneals every candidate on its own seeded chain (seed stream = candidate
/// index) and returns the highest-scoring shot; ties go to the earlier
/// candidate. Throws ModelMissing for an untrained model.
TuneResult tune(const physics::TableState& state, std::span<const TuneCandidate> candidates,
                std::span<const physics::BallId> targets, const surrogate::SurrogateModel& model,
                const TuneOptions& options = {});

}  // namespace cuecoach::assistant
