#include "cuecoach/agents/assistant_agent.hpp"

#include "cuecoach/common/error.hpp"

namespace cuecoach::agents {

AssistantAgent::AssistantAgent(std::shared_ptr<const surrogate::SurrogateModel> model, assistant::LMPtr lm,
                               assistant::AssistConfig cfg, std::string query)
    : model_(std::move(model)), lm_(std::move(lm)), cfg_(std::move(cfg)), query_(std::move(query)) {
  if (!model_ || model_->net().layers() == 0) throw ModelMissing("assistant agent needs a trained model");
  cfg_.record_frames = false;
  cfg_.validate();
}

physics::ShotParams AssistantAgent::select_shot(const physics::TableState& state,
                                                std::span<const physics::BallId> targets,
                                                std::uint64_t seed) const {
  if (!state.on_table(physics::BallId::Cue)) return {};
  assistant::AssistConfig cfg = cfg_;
  cfg.targets.assign(targets.begin(), targets.end());
  cfg.seed = seed;
  return assistant::assist(state, query_, lm_.get(), *model_, cfg).tuned.shot;
}

}  // namespace cuecoach::agents
