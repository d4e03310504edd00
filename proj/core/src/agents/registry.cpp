#include "cuecoach/agents/registry.hpp"

#include "cuecoach/agents/assistant_agent.hpp"
#include "cuecoach/agents/greedy.hpp"
#include "cuecoach/common/error.hpp"

namespace cuecoach::agents {

const std::vector<std::string>& agent_names() {
  static const std::vector<std::string> names{"greedy", "poolmaster", "surrogate", "assistant"};
  return names;
}

AgentPtr make_agent(std::string_view name, const AgentResources& res) {
  if (name == "greedy") return std::make_shared<GreedyAgent>(res.spec);
  if (name == "poolmaster") return std::make_shared<PoolMasterAgent>(res.poolmaster, res.spec);
  if (name == "surrogate") {
    SurrogateAgentConfig cfg = res.surrogate;
    cfg.tune.spec = res.spec;
    return std::make_shared<SurrogateAgent>(res.model, cfg);
  }
  if (name == "assistant") {
    assistant::AssistConfig cfg = res.assistant;
    cfg.tune.spec = res.spec;
    return std::make_shared<AssistantAgent>(res.model, res.lm, cfg);
  }
  throw UnknownAgent("unknown agent '" + std::string(name) + "'; expected greedy, poolmaster, surrogate or assistant");
}

}  // namespace cuecoach::agents
