#include "cuecoach/agents/surrogate_agent.hpp"

#include "cuecoach/common/error.hpp"

namespace cuecoach::agents {

void SurrogateAgentConfig::validate() const {
  if (candidates < 1) throw InvalidInput("surrogate agent needs at least one candidate");
  tune.sa.validate();
}

SurrogateAgent::SurrogateAgent(std::shared_ptr<const surrogate::SurrogateModel> model, SurrogateAgentConfig cfg)
    : model_(std::move(model)), cfg_(std::move(cfg)) {
  if (!model_ || model_->net().layers() == 0) throw ModelMissing("surrogate agent needs a trained model");
  cfg_.validate();
}

assistant::TuneResult SurrogateAgent::tune(const physics::TableState& state,
                                           std::span<const physics::BallId> targets,
                                           std::uint64_t seed) const {
  std::vector<assistant::TuneCandidate> candidates;
  for (int k = 0; k < cfg_.candidates; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    candidates.push_back({assistant::random_shot(rng), {}});
  }
  assistant::TuneOptions opts = cfg_.tune;
  opts.sa.seed = derive_seed(seed, 0x5A);
  return assistant::tune(state, candidates, targets, *model_, opts);
}

physics::ShotParams SurrogateAgent::select_shot(const physics::TableState& state,
                                                std::span<const physics::BallId> targets,
                                                std::uint64_t seed) const {
  if (!state.on_table(physics::BallId::Cue)) return {};
  return tune(state, targets, seed).best.shot;
}

}  // namespace cuecoach::agents
