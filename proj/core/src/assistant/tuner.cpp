#include "cuecoach/assistant/tuner.hpp"

#include <cmath>

#include "cuecoach/agents/agent.hpp"
#include "cuecoach/common/error.hpp"
#include "cuecoach/common/parallel.hpp"
#include "cuecoach/game/game.hpp"

namespace cuecoach::assistant {

double strategy_score(Strategy s, const rules::RuleVector& r) {
  if (s == Strategy::None) return 0.0;
  const auto& w = rules::strategy_vectors();
  double dot = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) dot += (w.w_d[i] - w.w_o[i]) * r[i];
  return s == Strategy::Defensive ? dot : -dot;
}

TunedShot score_shot(const physics::TableState& state, const physics::ShotParams& shot,
                     const CandidatePlan& plan, std::span<const physics::BallId> targets,
                     const surrogate::SurrogateModel& model, const TuneOptions& options) {
  const std::vector<physics::BallId> mine(targets.begin(), targets.end());
  const auto ctx = rules::make_context(state, shot, mine, agents::opponent_targets(targets), options.spec);
  TunedShot t;
  t.shot = shot;
  t.plan = plan;
  t.rule_vector = rules::evaluate_rules(ctx);
  t.distribution = model.predict(t.rule_vector);
  t.expected_value = surrogate::expected_value(t.distribution);
  t.entropy = surrogate::entropy(t.distribution);
  t.v_s = strategy_score(plan.strategy, t.rule_vector);
  t.v_d = surrogate::difficulty_score(t.entropy, plan.difficulty, model.anchors(), model.h_max());
  t.foul = game::judge_shot(state, ctx.post, ctx.trace, targets).foul;
  t.score = t.expected_value + t.v_s + t.v_d - (t.foul ? options.foul_penalty : 0.0);
  t.achieved_lcs = plan.target_events.empty() ? 0 : lcs_match(plan.target_events, ctx.trace);
  t.trace = ctx.trace;
  t.post = ctx.post;
  return t;
}

TuneResult tune(const physics::TableState& state, std::span<const TuneCandidate> candidates,
                std::span<const physics::BallId> targets, const surrogate::SurrogateModel& model,
                const TuneOptions& options) {
  if (model.net().layers() == 0) throw ModelMissing("tuning needs a trained surrogate model");
  if (candidates.empty()) throw EmptyInput("no candidates to tune");
  if (!(options.foul_penalty >= 0.0)) throw InvalidInput("foul penalty must be non-negative");
  options.sa.validate();

  std::vector<TunedShot> best(candidates.size());
  TuneResult out;
  out.runs.resize(candidates.size());
  parallel_for(candidates.size(), options.jobs, [&](std::size_t i) {
    const auto& c = candidates[i];
    auto energy = [&](const physics::ShotParams& shot) {
      return -score_shot(state, shot, c.plan, targets, model, options).score;
    };
    SAConfig sa = options.sa;
    sa.seed = derive_seed(options.sa.seed, i);
    const AnnealResult a = anneal(c.start, energy, sa);
    best[i] = score_shot(state, a.best, c.plan, targets, model, options);
    best[i].candidate = i;
    auto& run = out.runs[i];
    run.initial_score = -a.initial_energy;
    run.best_score = best[i].score;
    run.best_curve.reserve(a.best_curve.size());
    for (double e : a.best_curve) run.best_curve.push_back(-e);
  });

  std::size_t arg = 0;
  for (std::size_t i = 1; i < best.size(); ++i) {
    if (best[i].score > best[arg].score) arg = i;
  }
  out.best = std::move(best[arg]);
  return out;
}

}  // namespace cuecoach::assistant
