#include "cuecoach/assistant/lm.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "cuecoach/common/error.hpp"

namespace cuecoach::assistant {

std::optional<RemoteLMConfig> RemoteLMConfig::from_env() {
  const char* base = std::getenv("LM_BASE_URL");
  if (!base || !*base) return std::nullopt;
  RemoteLMConfig cfg;
  cfg.base_url = base;
  if (const char* key = std::getenv("LM_API_KEY")) cfg.api_key = key;
  if (const char* model = std::getenv("LM_MODEL")) cfg.model = model;
  return cfg;
}

RemoteLM::RemoteLM(RemoteLMConfig cfg) : cfg_(std::move(cfg)) {
  const auto scheme_end = cfg_.base_url.find("://");
  if (scheme_end == std::string::npos) throw InvalidInput("LM base URL needs a scheme: " + cfg_.base_url);
  const auto path_start = cfg_.base_url.find('/', scheme_end + 3);
  scheme_host_port_ = cfg_.base_url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : cfg_.base_url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string RemoteLM::complete(const std::string& system, const std::string& user,
                               const DecodeParams& params) const {
  nlohmann::json body = {{"model", cfg_.model},
                         {"messages",
                          {{{"role", "system"}, {"content", system}},
                           {{"role", "user"}, {"content", user}}}},
                         {"temperature", params.temperature},
                         {"max_tokens", params.max_tokens},
                         {"seed", params.sample}};
  httplib::Client client(scheme_host_port_);
  const auto secs = static_cast<time_t>(cfg_.timeout_s);
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);
  const auto res = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(),
                               "application/json");
  if (!res) {
    throw LMUnavailable("LM request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw LMUnavailable("LM endpoint returned HTTP " + std::to_string(res->status));
  }
  try {
    const auto reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw LMUnavailable(std::string("unreadable LM reply: ") + e.what());
  }
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t hash) {
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string request_key(const std::string& system, const std::string& user) {
  std::uint64_t h = fnv1a64(system);
  h = fnv1a64("\x1e", h);
  h = fnv1a64(user, h);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::string FixtureLM::complete(const std::string& system, const std::string& user,
                                const DecodeParams&) const {
  const auto key = request_key(system, user);
  const auto path = dir_ / (key + ".txt");
  std::ifstream in(path);
  if (!in) throw LMUnavailable("no fixture for request " + key + " in " + dir_.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<ScriptedLM> ScriptedLM::constant(std::string text) {
  return std::make_shared<ScriptedLM>(
      [text = std::move(text)](const std::string&, const std::string&, std::size_t) { return text; });
}

std::shared_ptr<ScriptedLM> ScriptedLM::sequence(std::vector<std::string> texts) {
  return std::make_shared<ScriptedLM>(
      [texts = std::move(texts)](const std::string&, const std::string&, std::size_t i) {
        if (i >= texts.size()) throw LMUnavailable("scripted responses exhausted");
        return texts[i];
      });
}

std::shared_ptr<ScriptedLM> ScriptedLM::offline() {
  return std::make_shared<ScriptedLM>(
      [](const std::string&, const std::string&, std::size_t) -> std::string {
        throw LMUnavailable("language model offline");
      });
}

std::string ScriptedLM::complete(const std::string& system, const std::string& user,
                                 const DecodeParams&) const {
  std::size_t index;
  {
    std::lock_guard lock(mu_);
    index = calls_++;
    last_ = {system, user};
  }
  return script_(system, user, index);
}

std::size_t ScriptedLM::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

std::pair<std::string, std::string> ScriptedLM::last_request() const {
  std::lock_guard lock(mu_);
  return last_;
}

}  // namespace cuecoach::assistant
