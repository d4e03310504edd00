#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cuecoach/assistant/explainer.hpp"
#include "cuecoach/assistant/recommender.hpp"
#include "cuecoach/assistant/tuner.hpp"
#include "cuecoach/physics/simulator.hpp"

namespace cuecoach::assistant {

enum class Polarity { Positive, Negative, Neutral };

std::string_view to_string(Polarity p);

struct RuleReportEntry {
  int id = 0;
  std::string name;
  double value = 0.0;
  std::string likert;
  Polarity polarity = Polarity::Neutral;
};

/// Positive when the rule raises the strategy term or is a value rule above
/// the moderate bin; negative when it is a difficulty rule above the
/// moderate bin; neutral otherwise.
std::vector<RuleReportEntry> rule_report(const rules::RuleVector& r, Strategy strategy);

/// Plain-text explanation used when no LM is available.
std::string templated_explanation(const TunedShot& shot);

struct AssistConfig {
  std::vector<physics::BallId> targets{physics::BallId::Blue, physics::BallId::Red, physics::BallId::Yellow};
  RecommendOptions recommend;
  // Event fitting per plan; tuning uses tune.sa.
  SAConfig fit;
  TuneOptions tune;
  // Random candidates tuned when the LM is unavailable.
  int degraded_candidates = 3;
  bool allow_degraded = true;
  bool record_frames = true;
  DecodeParams explain_decode;
  std::uint64_t seed = 0;

  void validate() const;
};

struct AssistResult {
  TunedShot tuned;
  std::string explanation;
  bool degraded = false;
  std::vector<RuleReportEntry> report;
  std::vector<physics::Frame> frames;
  bool frames_truncated = false;
  std::vector<CandidatePlan> plans;
  std::vector<CandidateRun> runs;
  std::vector<std::string> diagnostics;
};

/// recommend -> fit each plan -> tune -> explain. With no LM (null pointer,
/// LMUnavailable, or no usable plan) it tunes seeded random candidates with
/// no strategy or difficulty terms and writes a templated explanation,
/// flagged degraded, unless allow_degraded is false.
AssistResult assist(const physics::TableState& state, std::string_view query, const LMClient* lm,
                    const surrogate::SurrogateModel& model, const AssistConfig& cfg = {});

}  // namespace cuecoach::assistant
