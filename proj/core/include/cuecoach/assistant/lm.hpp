#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cuecoach::assistant {

struct DecodeParams {
  double temperature = 0.7;
  int max_tokens = 1024;
  // Sample index within a self-consistency vote; forwarded as the request seed.
  int sample = 0;
};

/// Text-completion backend. Failures raise LMUnavailable; implementations
/// never fabricate text.
class LMClient {
 public:
  virtual ~LMClient() = default;
  virtual std::string complete(const std::string& system, const std::string& user,
                               const DecodeParams& params) const = 0;
  virtual std::string name() const = 0;
};

using LMPtr = std::shared_ptr<const LMClient>;

struct RemoteLMConfig {
  std::string base_url;  // e.g. http://localhost:8000/v1
  std::string api_key;
  std::string model;
  double timeout_s = 60.0;

  // Reads LM_BASE_URL, LM_API_KEY and LM_MODEL; nullopt when no base URL.
  static std::optional<RemoteLMConfig> from_env();
};

/// Chat-completion endpoint speaking the common JSON wire format.
class RemoteLM : public LMClient {
 public:
  explicit RemoteLM(RemoteLMConfig cfg);
  std::string complete(const std::string& system, const std::string& user,
                       const DecodeParams& params) const override;
  std::string name() const override { return "remote:" + cfg_.model; }

 private:
  RemoteLMConfig cfg_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t hash = 0xCBF29CE484222325ULL);

/// Fixture key of a request: 16 lowercase hex digits of FNV-1a over
/// system + "\x1e" + user.
std::string request_key(const std::string& system, const std::string& user);

/// Replays `<dir>/<request_key>.txt`; a missing file is LMUnavailable.
class FixtureLM : public LMClient {
 public:
  explicit FixtureLM(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::string complete(const std::string& system, const std::string& user,
                       const DecodeParams& params) const override;
  std::string name() const override { return "fixture"; }

 private:
  std::filesystem::path dir_;
};

/// Test double driven by a callback of (system, user, call index).
class ScriptedLM : public LMClient {
 public:
  using Script = std::function<std::string(const std::string&, const std::string&, std::size_t)>;

  explicit ScriptedLM(Script script) : script_(std::move(script)) {}
  // Always answers with the same text.
  static std::shared_ptr<ScriptedLM> constant(std::string text);
  // Answers from the queue in order; an exhausted queue is LMUnavailable.
  static std::shared_ptr<ScriptedLM> sequence(std::vector<std::string> texts);
  // Always raises LMUnavailable.
  static std::shared_ptr<ScriptedLM> offline();

  std::string complete(const std::string& system, const std::string& user,
                       const DecodeParams& params) const override;
  std::string name() const override { return "scripted"; }

  std::size_t calls() const;
  // The most recent (system, user) pair seen.
  std::pair<std::string, std::string> last_request() const;

 private:
  Script script_;
  mutable std::mutex mu_;
  mutable std::size_t calls_ = 0;
  mutable std::pair<std::string, std::string> last_;
};

}  // namespace cuecoach::assistant
