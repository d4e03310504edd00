#include "cuecoach/assistant/recommender.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <sstream>

#include "cuecoach/assistant/prompts.hpp"
#include "cuecoach/common/error.hpp"

namespace cuecoach::assistant {

using physics::EventSequence;

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Offensive: return "offensive";
    case Strategy::Defensive: return "defensive";
    case Strategy::None: return "none";
  }
  return "none";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "offensive") return Strategy::Offensive;
  if (t == "defensive") return Strategy::Defensive;
  if (t == "none") return Strategy::None;
  return std::nullopt;
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r*`");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r*`");
  return s.substr(b, e - b + 1);
}

}  // namespace

ParsedRecommendation parse_recommendation(std::string_view text) {
  static const std::regex label_re(R"(^\s*\**\s*(STRATEGY|DIFFICULTY)\s*\**\s*:\s*\**\s*([A-Za-z]+))",
                                   std::regex::icase);
  static const std::regex shot_re(R"(^\s*\d+\s*[.)]\s*(.*)$)");
  ParsedRecommendation out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_search(line, m, label_re)) {
      std::string key = m[1].str();
      std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::toupper(c); });
      if (key == "STRATEGY") {
        if (auto s = parse_strategy(m[2].str())) out.strategy = *s;
      } else if (auto d = surrogate::parse_difficulty(m[2].str())) {
        out.difficulty = *d;
      }
      continue;
    }
    if (!std::regex_match(line, m, shot_re)) continue;
    EventSequence events;
    bool ok = true;
    std::istringstream tokens(m[1].str());
    std::string token;
    while (std::getline(tokens, token, ',')) {
      token = trim(token);
      if (token.empty()) continue;
      auto e = physics::parse_event(token);
      if (!e) {
        ok = false;
        break;
      }
      events.push_back(*e);
    }
    if (ok && !events.empty()) {
      out.shots.push_back(std::move(events));
    } else {
      out.rejected.push_back(trim(line));
    }
  }
  if (out.shots.empty()) throw ParseFailure("no valid shot lines in LM response");
  return out;
}

std::string format_recommendation(const ParsedRecommendation& rec) {
  std::string out = "STRATEGY: " + std::string(to_string(rec.strategy)) +
                    "\nDIFFICULTY: " + std::string(surrogate::to_string(rec.difficulty)) + "\nSHOTS:";
  for (std::size_t i = 0; i < rec.shots.size(); ++i) {
    out += "\n" + std::to_string(i + 1) + ". ";
    for (std::size_t k = 0; k < rec.shots[i].size(); ++k) {
      if (k > 0) out += ", ";
      out += rec.shots[i][k].to_text();
    }
  }
  return out;
}

Prompt recommender_prompt(const physics::TableState& state, std::span<const physics::BallId> targets,
                          std::string_view query, int n_r) {
  const std::vector<std::pair<Field, std::string>> inputs{
      {{"balls", "The IDs and exact (x,y) coordinates of each ball currently on the table"},
       format_balls(state)},
      {{"target_balls", "The IDs of the balls that must be pocketed to win, and of the ones that must be avoided"},
       format_targets(targets)},
      {{"message", "A message from the user to inform what shots to suggest"}, std::string(query)},
      {{"num_shots", "The number of shots to return"}, std::to_string(n_r)}};
  const std::vector<Field> outputs{
      {"response", "The strategy, the difficulty and the events of each suggested shot"}};
  return render_prompt(recommender_task_description(), inputs, outputs);
}

Recommendation recommend(const physics::TableState& state, std::string_view query,
                         std::span<const physics::BallId> targets, const LMClient& lm,
                         const RecommendOptions& options) {
  if (options.n_r < 1 || options.votes < 1 || options.k_retry < 0) {
    throw InvalidInput("recommender needs n_r >= 1, votes >= 1 and k_retry >= 0");
  }
  const Prompt prompt = recommender_prompt(state, targets, query, options.n_r);
  Recommendation out;
  int failures = 0;
  int sample = 0;
  // Rounds stop once n_r plans exist, a round adds nothing new, or retries run out.
  while (static_cast<int>(out.plans.size()) < options.n_r) {
    std::vector<ParsedRecommendation> parsed;
    for (int v = 0; v < options.votes; ++v) {
      DecodeParams params = options.decode;
      params.sample = sample++;
      const std::string reply = lm.complete(prompt.system, prompt.user, params);
      const std::string body = extract_field(reply, "response").value_or(reply);
      try {
        parsed.push_back(parse_recommendation(body));
        for (const auto& r : parsed.back().rejected) out.diagnostics.push_back("rejected line: " + r);
      } catch (const ParseFailure& e) {
        out.diagnostics.push_back(std::string("sample ") + std::to_string(params.sample) + ": " + e.what());
      }
    }
    if (parsed.empty()) {
      if (++failures > options.k_retry) {
        out.diagnostics.push_back("recommender gave up after " + std::to_string(failures) + " unparseable rounds");
        break;
      }
      continue;
    }
    std::map<Strategy, int> s_votes;
    std::map<Difficulty, int> d_votes;
    for (const auto& p : parsed) {
      ++s_votes[p.strategy];
      ++d_votes[p.difficulty];
    }
    Strategy s = parsed.front().strategy;
    Difficulty d = parsed.front().difficulty;
    for (const auto& p : parsed) {
      if (s_votes[p.strategy] > s_votes[s]) s = p.strategy;
      if (d_votes[p.difficulty] > d_votes[d]) d = p.difficulty;
    }
    std::size_t added = 0;
    for (const auto& events : parsed.front().shots) {
      if (static_cast<int>(out.plans.size()) >= options.n_r) break;
      const bool seen = std::any_of(out.plans.begin(), out.plans.end(), [&](const CandidatePlan& c) {
        return c.target_events.size() == events.size() &&
               std::equal(events.begin(), events.end(), c.target_events.begin(), physics::same_symbol);
      });
      if (seen) continue;
      out.plans.push_back({events, s, d});
      ++added;
    }
    if (added == 0) break;
  }
  return out;
}

}  // namespace cuecoach::assistant
