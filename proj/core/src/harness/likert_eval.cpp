#include "cuecoach/harness/likert_eval.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include "cuecoach/assistant/explainer.hpp"
#include "cuecoach/common/error.hpp"
#include "cuecoach/physics/simulator.hpp"

namespace cuecoach::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"'`*,-");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"'`*,.;");
  return s.substr(b, e - b + 1);
}

void mean_stderr(const std::vector<double>& xs, double& mean, double& se) {
  mean = 0.0;
  se = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  se = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
}

}  // namespace

assistant::Prompt likert_prompt(const surrogate::TrainingSample& sample, bool with_r,
                                const physics::TableSpec& spec) {
  const auto trace = physics::simulate(sample.state, sample.shot, spec).trace;
  const auto ctx = assistant::build_explainer_context(sample.state, sample.shot, trace, sample.r, with_r, spec);
  const std::vector<assistant::Field> outputs{
      {"likert_values",
       "The applicability of each rule, value rules then difficulty rules in rule order, as a JSON list of "
       "strings from: very low, low, moderately low, moderate, moderately high, high, very high"}};
  return assistant::render_prompt(assistant::likert_task_description(with_r), ctx.inputs, outputs);
}

std::optional<LikertBins> parse_likert_values(std::string_view text) {
  std::vector<std::string> keys;
  const auto open = text.find('[');
  const auto close = text.rfind(']');
  bool parsed_json = false;
  if (open != std::string_view::npos && close != std::string_view::npos && close > open) {
    try {
      const auto j = nlohmann::json::parse(text.substr(open, close - open + 1));
      for (const auto& item : j) keys.push_back(item.get<std::string>());
      parsed_json = true;
    } catch (const nlohmann::json::exception&) {
      keys.clear();
    }
  }
  if (!parsed_json) {
    static const std::regex numbered(R"(^\s*(?:\d+\s*[.):]\s*)?(.*)$)");
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      std::smatch m;
      std::string body = std::regex_match(line, m, numbered) ? m[1].str() : line;
      // "Rule name: key" keeps only the key.
      if (const auto colon = body.rfind(':'); colon != std::string::npos) body = body.substr(colon + 1);
      body = trim(body);
      if (!body.empty()) keys.push_back(body);
    }
  }
  if (keys.size() != rules::kRuleCount) return std::nullopt;
  LikertBins bins{};
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto b = rules::parse_likert_key(trim(keys[i]));
    if (!b) return std::nullopt;
    bins[i] = *b;
  }
  return bins;
}

double LikertEvalResult::exclusion_rate() const {
  const int total = evaluated + excluded;
  return total > 0 ? static_cast<double>(excluded) / total : 0.0;
}

nlohmann::json LikertEvalResult::to_json() const {
  nlohmann::json per_rule = nlohmann::json::array();
  for (std::size_t i = 0; i < mean.size(); ++i) {
    per_rule.push_back({{"id", i + 1}, {"mean", mean[i]}, {"stderr", stderr_[i]}});
  }
  return {{"rules", per_rule},
          {"overall_mean", overall_mean},
          {"overall_stderr", overall_stderr},
          {"evaluated", evaluated},
          {"excluded", excluded},
          {"exclusion_rate", exclusion_rate()},
          {"diagnostics", diagnostics}};
}

LikertEvalResult likert_agreement_eval(const assistant::LMClient& lm,
                                       std::span<const surrogate::TrainingSample> samples, bool with_r,
                                       const assistant::DecodeParams& decode, const physics::TableSpec& spec) {
  if (samples.empty()) throw EmptyInput("no samples to evaluate");
  std::array<std::vector<double>, rules::kRuleCount> dist;
  std::vector<double> all;
  LikertEvalResult out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto prompt = likert_prompt(samples[s], with_r, spec);
    const std::string reply = lm.complete(prompt.system, prompt.user, decode);
    const auto bins = parse_likert_values(assistant::extract_field(reply, "likert_values").value_or(reply));
    if (!bins) {
      ++out.excluded;
      out.diagnostics.push_back("sample " + std::to_string(s) + ": unparseable reply");
      continue;
    }
    ++out.evaluated;
    for (std::size_t i = 0; i < rules::kRuleCount; ++i) {
      const double d = std::abs((*bins)[i] - rules::quantize_likert(samples[s].r[i]).bin);
      dist[i].push_back(d);
      all.push_back(d);
    }
  }
  for (std::size_t i = 0; i < rules::kRuleCount; ++i) mean_stderr(dist[i], out.mean[i], out.stderr_[i]);
  mean_stderr(all, out.overall_mean, out.overall_stderr);
  return out;
}

}  // namespace cuecoach::harness
