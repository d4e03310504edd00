#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cuecoach/agents/agent.hpp"
#include "cuecoach/agents/poolmaster.hpp"
#include "cuecoach/agents/surrogate_agent.hpp"
#include "cuecoach/assistant/assist.hpp"

namespace cuecoach::agents {

/// What the model-backed agents need. Unused members may stay empty.
struct AgentResources {
  std::shared_ptr<const surrogate::SurrogateModel> model;
  assistant::LMPtr lm;
  PoolMasterConfig poolmaster;
  SurrogateAgentConfig surrogate;
  assistant::AssistConfig assistant;
  physics::TableSpec spec;
};

/// {"greedy", "poolmaster", "surrogate", "assistant"}.
const std::vector<std::string>& agent_names();

/// Throws UnknownAgent for other names and ModelMissing when a model-backed
/// agent has no model.
AgentPtr make_agent(std::string_view name, const AgentResources& resources = {});

}  // namespace cuecoach::agents
