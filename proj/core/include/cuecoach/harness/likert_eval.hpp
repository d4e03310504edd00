#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cuecoach/assistant/lm.hpp"
#include "cuecoach/assistant/prompts.hpp"
#include "cuecoach/rules/rules.hpp"
#include "cuecoach/surrogate/dataset.hpp"

namespace cuecoach::harness {

using LikertBins = std::array<int, rules::kRuleCount>;

/// Rule-rating prompt for one sample; weights and the conversion table are
/// included only when `with_r` is set.
assistant::Prompt likert_prompt(const surrogate::TrainingSample& sample, bool with_r,
                                const physics::TableSpec& spec = {});

/// Reads 29 Likert keys from a JSON array of strings or from one key per
/// line (optionally numbered). nullopt when the count is wrong or a key is
/// unknown.
std::optional<LikertBins> parse_likert_values(std::string_view text);

struct LikertEvalResult {
  std::array<double, rules::kRuleCount> mean{};
  std::array<double, rules::kRuleCount> stderr_{};
  double overall_mean = 0.0;
  double overall_stderr = 0.0;
  int evaluated = 0;
  int excluded = 0;
  std::vector<std::string> diagnostics;

  double exclusion_rate() const;
  nlohmann::json to_json() const;
};

/// Per-rule mean absolute bin distance between the LM's keys and the
/// quantized rule values. Unparseable replies are excluded and counted.
LikertEvalResult likert_agreement_eval(const assistant::LMClient& lm,
                                       std::span<const surrogate::TrainingSample> samples, bool with_r,
                                       const assistant::DecodeParams& decode = {},
                                       const physics::TableSpec& spec = {});

}  // namespace cuecoach::harness
