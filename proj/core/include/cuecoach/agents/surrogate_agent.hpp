#pragma once

#include <memory>

#include "cuecoach/agents/agent.hpp"
#include "cuecoach/assistant/tuner.hpp"
#include "cuecoach/surrogate/model.hpp"

namespace cuecoach::agents {

struct SurrogateAgentConfig {
  int candidates = 3;  // K
  assistant::TuneOptions tune;

  void validate() const;
};

/// K seeded random shots, each annealed to maximize the surrogate's
/// expected value with no strategy or difficulty terms.
class SurrogateAgent : public Agent {
 public:
  // Throws ModelMissing when `model` is null or untrained.
  SurrogateAgent(std::shared_ptr<const surrogate::SurrogateModel> model, SurrogateAgentConfig cfg = {});

  physics::ShotParams select_shot(const physics::TableState& state,
                                  std::span<const physics::BallId> targets,
                                  std::uint64_t seed) const override;
  std::string name() const override { return "surrogate"; }

  // Full tuning record for the same inputs select_shot sees.
  assistant::TuneResult tune(const physics::TableState& state, std::span<const physics::BallId> targets,
                             std::uint64_t seed) const;

 private:
  std::shared_ptr<const surrogate::SurrogateModel> model_;
  SurrogateAgentConfig cfg_;
};

}  // namespace cuecoach::agents
