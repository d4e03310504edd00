#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cuecoach/assistant/lm.hpp"
#include "cuecoach/surrogate/model.hpp"

namespace cuecoach::service {

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string model_path;       // empty: model-backed routes answer 409
  std::string cors_origin = "*";
  std::string fixtures_dir;     // replay LM fixtures instead of a remote LM
  bool allow_degraded = true;
  int workers = 4;
  int default_steps = 300;
  int default_candidates = 5;
  int max_steps = 5000;
  std::optional<assistant::RemoteLMConfig> lm;

  // Keys mirror the member names; unknown keys are rejected.
  static ServiceConfig from_json(const nlohmann::json& j);
  static ServiceConfig from_file(const std::filesystem::path& path);
  // PORT, MODEL_PATH, LM_BASE_URL, LM_API_KEY, LM_MODEL.
  void apply_env();
};

struct HttpResponse {
  int status = 200;
  nlohmann::json body;
};

/// Error code to HTTP status: invalid input 400, unknown agent 404,
/// missing model 409, LM unavailable 503, anything else 500.
int status_for(std::string_view code);

/// Stateless request handlers behind the HTTP routes; usable without a
/// socket. The model and LM are shared read-only.
class Service {
 public:
  Service(ServiceConfig cfg, std::shared_ptr<const surrogate::SurrogateModel> model, assistant::LMPtr lm);

  // Loads the model from cfg.model_path (when set) and picks the LM:
  // fixtures directory, then remote endpoint, else none.
  static Service from_config(const ServiceConfig& cfg);

  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

  HttpResponse simulate(const nlohmann::json& request) const;
  HttpResponse agent_shot(const nlohmann::json& request) const;
  HttpResponse assist(const nlohmann::json& request) const;
  HttpResponse rules() const;

  // Blocks serving HTTP until stop() or a bind failure (returns false).
  bool listen();
  void stop();

  const ServiceConfig& config() const { return cfg_; }

 private:
  ServiceConfig cfg_;
  std::shared_ptr<const surrogate::SurrogateModel> model_;
  assistant::LMPtr lm_;
  struct Http;
  std::shared_ptr<Http> http_;
};

}  // namespace cuecoach::service
