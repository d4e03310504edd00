#include "cuecoach/assistant/assist.hpp"

#include "cuecoach/common/error.hpp"
#include "cuecoach/common/parallel.hpp"

namespace cuecoach::assistant {

namespace {

constexpr int kModerateBin = 3;

std::string join_names(const std::vector<RuleReportEntry>& report, Polarity which) {
  std::string out;
  for (const auto& e : report) {
    if (e.polarity != which) continue;
    if (!out.empty()) out += ", ";
    out += e.name + " (" + e.likert + ")";
  }
  return out;
}

}  // namespace

std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Neutral: return "neutral";
  }
  return "neutral";
}

std::vector<RuleReportEntry> rule_report(const rules::RuleVector& r, Strategy strategy) {
  const auto& w = rules::strategy_vectors();
  const double sign = strategy == Strategy::Defensive ? 1.0 : (strategy == Strategy::Offensive ? -1.0 : 0.0);
  std::vector<RuleReportEntry> out;
  for (const auto& rule : rules::rule_set()) {
    const auto i = static_cast<std::size_t>(rule.id - 1);
    const auto level = rules::quantize_likert(r[i]);
    RuleReportEntry e{rule.id, std::string(rule.name), r[i], std::string(level.key), Polarity::Neutral};
    const bool raises_vs = sign * (w.w_d[i] - w.w_o[i]) * r[i] > 0.0;
    const bool above = level.bin > kModerateBin;
    if (raises_vs || (rule.category == rules::Category::Value && above)) {
      e.polarity = Polarity::Positive;
    } else if (rule.category == rules::Category::Difficulty && above) {
      e.polarity = Polarity::Negative;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string templated_explanation(const TunedShot& shot) {
  const auto report = rule_report(shot.rule_vector, shot.plan.strategy);
  std::string out = "Strike the cue ball at " + fixed(shot.shot.v, 2) + " m/s towards " +
                    fixed(shot.shot.alpha, 1) + " degrees.";
  if (!shot.trace.empty()) out += " Expected events: " + physics::to_text(shot.trace) + ".";
  out += " Estimated win chance after the shot: " + fixed(100.0 * shot.expected_value, 1) + "%.";
  if (shot.foul) out += " No legal shot was found; this one fouls.";
  const auto pos = join_names(report, Polarity::Positive);
  const auto neg = join_names(report, Polarity::Negative);
  if (!pos.empty()) out += "\nIn its favour: " + pos + ".";
  if (!neg.empty()) out += "\nWhat makes it hard: " + neg + ".";
  return out;
}

void AssistConfig::validate() const {
  if (targets.empty()) throw InvalidInput("assist needs at least one target ball");
  if (degraded_candidates < 1) throw InvalidInput("degraded mode needs at least one candidate");
  fit.validate();
  tune.sa.validate();
}

AssistResult assist(const physics::TableState& state, std::string_view query, const LMClient* lm,
                    const surrogate::SurrogateModel& model, const AssistConfig& cfg) {
  cfg.validate();
  if (model.net().layers() == 0) throw ModelMissing("assist needs a trained surrogate model");
  AssistResult out;

  auto degrade = [&](const std::string& why) {
    if (!cfg.allow_degraded) throw LMUnavailable(why);
    out.degraded = true;
    out.diagnostics.push_back("degraded: " + why);
  };

  if (lm == nullptr) {
    degrade("no language model configured");
  } else {
    try {
      auto rec = recommend(state, query, cfg.targets, *lm, cfg.recommend);
      out.plans = std::move(rec.plans);
      for (auto& d : rec.diagnostics) out.diagnostics.push_back(std::move(d));
      if (out.plans.empty()) degrade("recommender produced no usable plan");
    } catch (const LMUnavailable& e) {
      degrade(e.what());
    }
  }

  std::vector<TuneCandidate> candidates;
  if (out.degraded) {
    out.plans.clear();
    for (int k = 0; k < cfg.degraded_candidates; ++k) {
      Rng rng(derive_seed(cfg.seed, 0x300 + static_cast<std::uint64_t>(k)));
      candidates.push_back({random_shot(rng), {}});
    }
  } else {
    candidates.resize(out.plans.size());
    parallel_for(out.plans.size(), cfg.tune.jobs, [&](std::size_t k) {
      SAConfig fit = cfg.fit;
      fit.seed = derive_seed(cfg.seed, 0x200 + k);
      candidates[k] = {fit_shot_to_events(state, out.plans[k].target_events, fit, cfg.tune.spec).shot,
                       out.plans[k]};
    });
  }

  TuneOptions tune_opts = cfg.tune;
  tune_opts.sa.seed = derive_seed(cfg.seed, 0x400);
  auto tuned = tune(state, candidates, cfg.targets, model, tune_opts);
  out.tuned = std::move(tuned.best);
  out.runs = std::move(tuned.runs);
  out.report = rule_report(out.tuned.rule_vector, out.tuned.plan.strategy);

  if (!out.degraded) {
    try {
      out.explanation = explain(*lm, build_explainer_context(state, out.tuned, cfg.tune.spec), cfg.explain_decode);
    } catch (const LMUnavailable& e) {
      degrade(e.what());
    }
  }
  if (out.degraded) out.explanation = templated_explanation(out.tuned);

  if (cfg.record_frames) {
    physics::SimOptions sim;
    sim.max_frames = 900;
    auto res = physics::strike_and_trace(state, out.tuned.shot, cfg.tune.spec, sim);
    out.frames = std::move(res.frames);
    out.frames_truncated = res.frames_truncated;
  }
  return out;
}

}  // namespace cuecoach::assistant
