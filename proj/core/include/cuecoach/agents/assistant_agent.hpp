#pragma once

#include <memory>
#include <string>

#include "cuecoach/agents/agent.hpp"
#include "cuecoach/assistant/assist.hpp"

namespace cuecoach::agents {

inline constexpr const char* kDefaultQuery = "Find the best shot for me in this position";

/// Runs the full assistant for every shot with a fixed query. A null LM
/// plays in degraded mode.
class AssistantAgent : public Agent {
 public:
  AssistantAgent(std::shared_ptr<const surrogate::SurrogateModel> model, assistant::LMPtr lm,
                 assistant::AssistConfig cfg = {}, std::string query = kDefaultQuery);

  physics::ShotParams select_shot(const physics::TableState& state,
                                  std::span<const physics::BallId> targets,
                                  std::uint64_t seed) const override;
  std::string name() const override { return "assistant"; }

 private:
  std::shared_ptr<const surrogate::SurrogateModel> model_;
  assistant::LMPtr lm_;
  assistant::AssistConfig cfg_;
  std::string query_;
};

}  // namespace cuecoach::agents
