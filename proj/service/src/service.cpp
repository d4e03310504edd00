#include "cuecoach/service/service.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "cuecoach/agents/registry.hpp"
#include "cuecoach/assistant/assist.hpp"
#include "cuecoach/common/error.hpp"
#include "cuecoach/io/serialize.hpp"
#include "cuecoach/physics/simulator.hpp"

namespace cuecoach::service {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxFrames = 900;

json error_body(const std::string& code, const std::string& stage, const std::string& message) {
  return {{"code", code}, {"stage", stage}, {"message", message}};
}

HttpResponse error_response(const Error& e) { return {status_for(e.code()), error_body(e.code(), e.stage(), e.what())}; }

std::uint64_t seed_of(const json& req) {
  if (!req.contains("seed")) return 0;
  const auto& s = req.at("seed");
  if (!s.is_number_integer() || s.get<std::int64_t>() < 0) throw InvalidInput("seed must be a non-negative integer");
  return s.get<std::uint64_t>();
}

int int_field(const json& req, const char* key, int fallback, int lo, int hi) {
  if (!req.contains(key)) return fallback;
  const auto& v = req.at(key);
  if (!v.is_number_integer()) throw InvalidInput(std::string(key) + " must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    throw InvalidInput(std::string(key) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

std::vector<physics::BallId> targets_of(const json& req) {
  if (!req.contains("targets")) return {physics::BallId::Blue, physics::BallId::Red, physics::BallId::Yellow};
  std::vector<physics::BallId> out;
  for (const auto& t : req.at("targets")) {
    if (!t.is_string()) throw InvalidInput("targets must be ball ids");
    const auto id = physics::parse_ball_id(t.get<std::string>());
    if (!id || *id == physics::BallId::Cue) throw InvalidInput("invalid target ball '" + t.get<std::string>() + "'");
    out.push_back(*id);
  }
  if (out.empty()) throw InvalidInput("targets must not be empty");
  return out;
}

const json& field(const json& req, const char* key) {
  if (!req.is_object() || !req.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return req.at(key);
}

json frames_json(const physics::SimResult& sim) {
  return io::to_json(sim.frames);
}

}  // namespace

int status_for(std::string_view code) {
  if (code == "invalid_input" || code == "empty_input" || code == "placement_failed") return 400;
  if (code == "unknown_agent") return 404;
  if (code == "model_missing") return 409;
  if (code == "lm_unavailable") return 503;
  return 500;
}

ServiceConfig ServiceConfig::from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("service config must be a JSON object");
  ServiceConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "host") c.host = value.get<std::string>();
      else if (key == "port") c.port = value.get<int>();
      else if (key == "model_path") c.model_path = value.get<std::string>();
      else if (key == "cors_origin") c.cors_origin = value.get<std::string>();
      else if (key == "fixtures_dir") c.fixtures_dir = value.get<std::string>();
      else if (key == "allow_degraded") c.allow_degraded = value.get<bool>();
      else if (key == "workers") c.workers = value.get<int>();
      else if (key == "default_steps") c.default_steps = value.get<int>();
      else if (key == "default_candidates") c.default_candidates = value.get<int>();
      else if (key == "max_steps") c.max_steps = value.get<int>();
      else if (key == "lm") {
        assistant::RemoteLMConfig lm;
        lm.base_url = value.at("base_url").get<std::string>();
        lm.api_key = value.value("api_key", std::string());
        lm.model = value.value("model", std::string());
        lm.timeout_s = value.value("timeout_s", lm.timeout_s);
        c.lm = lm;
      } else {
        throw InvalidInput("unknown service config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad service config: ") + e.what());
  }
  if (c.port < 0 || c.port > 65535) throw InvalidInput("port out of range");
  if (c.workers < 1) throw InvalidInput("workers must be at least 1");
  return c;
}

ServiceConfig ServiceConfig::from_file(const std::filesystem::path& path) {
  return from_json(io::read_json_file(path));
}

void ServiceConfig::apply_env() {
  if (const char* p = std::getenv("PORT"); p && *p) {
    char* end = nullptr;
    const long v = std::strtol(p, &end, 10);
    if (*end != '\0' || v < 0 || v > 65535) throw InvalidInput(std::string("bad PORT: ") + p);
    port = static_cast<int>(v);
  }
  if (const char* m = std::getenv("MODEL_PATH"); m && *m) model_path = m;
  if (auto env = assistant::RemoteLMConfig::from_env()) lm = *env;
}

struct Service::Http {
  httplib::Server server;
};

Service::Service(ServiceConfig cfg, std::shared_ptr<const surrogate::SurrogateModel> model, assistant::LMPtr lm)
    : cfg_(std::move(cfg)), model_(std::move(model)), lm_(std::move(lm)), http_(std::make_shared<Http>()) {}

Service Service::from_config(const ServiceConfig& cfg) {
  std::shared_ptr<const surrogate::SurrogateModel> model;
  if (!cfg.model_path.empty()) {
    model = std::make_shared<surrogate::SurrogateModel>(surrogate::SurrogateModel::load(cfg.model_path));
  }
  assistant::LMPtr lm;
  if (!cfg.fixtures_dir.empty()) {
    lm = std::make_shared<assistant::FixtureLM>(cfg.fixtures_dir);
  } else if (cfg.lm) {
    lm = std::make_shared<assistant::RemoteLM>(*cfg.lm);
  }
  return Service(cfg, std::move(model), std::move(lm));
}

HttpResponse Service::simulate(const json& req) const {
  seed_of(req);
  const auto state = io::table_state_from_json(field(req, "state"));
  const bool clamp = req.value("clamp", false);
  const auto shot = io::shot_from_json(field(req, "shot"), clamp);
  physics::SimOptions opt;
  opt.max_frames = kMaxFrames;
  const auto sim = physics::strike_and_trace(state, shot, {}, opt);
  return {200,
          {{"post_state", io::to_json(sim.post)},
           {"trace", io::to_json(sim.trace)},
           {"frames", frames_json(sim)},
           {"frames_truncated", sim.frames_truncated}}};
}

HttpResponse Service::agent_shot(const json& req) const {
  const auto state = io::table_state_from_json(field(req, "state"));
  const auto& name = field(req, "agent");
  if (!name.is_string()) throw InvalidInput("agent must be a string");
  agents::AgentResources res;
  res.model = model_;
  res.lm = lm_;
  res.assistant.allow_degraded = cfg_.allow_degraded;
  const auto agent = agents::make_agent(name.get<std::string>(), res);
  const auto shot = agent->select_shot(state, targets_of(req), seed_of(req));
  return {200, {{"agent", agent->name()}, {"shot", io::to_json(shot)}}};
}

HttpResponse Service::assist(const json& req) const {
  const auto state = io::table_state_from_json(field(req, "state"));
  const auto& query = field(req, "query");
  if (!query.is_string()) throw InvalidInput("query must be a string");
  if (!model_) throw ModelMissing("no surrogate model loaded; set model_path or MODEL_PATH");

  assistant::AssistConfig cfg;
  cfg.targets = targets_of(req);
  cfg.seed = seed_of(req);
  cfg.allow_degraded = cfg_.allow_degraded;
  const int steps = int_field(req, "steps", cfg_.default_steps, 0, cfg_.max_steps);
  const int n = int_field(req, "n_candidates", cfg_.default_candidates, 1, 20);
  cfg.fit.steps = steps;
  cfg.tune.sa.steps = steps;
  cfg.recommend.n_r = n;
  cfg.tune.jobs = cfg_.workers;

  const auto res = assistant::assist(state, query.get<std::string>(), lm_.get(), *model_, cfg);
  json report = json::array();
  for (const auto& e : res.report) {
    report.push_back({{"id", e.id},
                      {"name", e.name},
                      {"value", e.value},
                      {"likert", e.likert},
                      {"polarity", std::string(assistant::to_string(e.polarity))}});
  }
  json frames = io::to_json(res.frames);
  return {200,
          {{"shot", io::to_json(res.tuned.shot)},
           {"explanation", res.explanation},
           {"degraded", res.degraded},
           {"rule_report", report},
           {"trace", io::to_json(res.tuned.trace)},
           {"frames", frames},
           {"frames_truncated", res.frames_truncated},
           {"expected_value", res.tuned.expected_value},
           {"v_s", res.tuned.v_s},
           {"v_d", res.tuned.v_d},
           {"score", res.tuned.score},
           {"strategy", std::string(assistant::to_string(res.tuned.plan.strategy))},
           {"difficulty", std::string(surrogate::to_string(res.tuned.plan.difficulty))},
           {"diagnostics", res.diagnostics}}};
}

HttpResponse Service::rules() const { return {200, rules::rule_catalog_json()}; }

HttpResponse Service::handle(std::string_view method, std::string_view path, std::string_view body) const {
  try {
    if (method == "GET" && path == "/healthz") return {200, {{"status", "ok"}}};
    if (method == "GET" && path == "/api/v1/rules") return rules();
    const bool known = path == "/api/v1/simulate" || path == "/api/v1/agent-shot" || path == "/api/v1/assist";
    if (!known) return {404, error_body("not_found", "service", "no route " + std::string(path))};
    if (method != "POST") return {405, error_body("method_not_allowed", "service", "use POST for " + std::string(path))};
    json req;
    try {
      req = json::parse(body);
    } catch (const json::parse_error& e) {
      return {400, error_body("invalid_json", "input", e.what())};
    }
    if (!req.is_object()) return {400, error_body("invalid_json", "input", "request body must be a JSON object")};
    if (path == "/api/v1/simulate") return simulate(req);
    if (path == "/api/v1/agent-shot") return agent_shot(req);
    return assist(req);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const json::exception& e) {
    return {400, error_body("invalid_input", "input", e.what())};
  } catch (const std::exception& e) {
    return {500, error_body("internal", "service", e.what())};
  }
}

bool Service::listen() {
  auto& srv = http_->server;
  srv.new_task_queue = [n = cfg_.workers] { return new httplib::ThreadPool(static_cast<std::size_t>(n)); };
  const std::string origin = cfg_.cors_origin;
  auto cors = [origin](httplib::Response& res) {
    if (origin.empty()) return;
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  };
  auto route = [this, cors](const httplib::Request& req, httplib::Response& res) {
    const auto out = handle(req.method, req.path, req.body);
    cors(res);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  srv.Get(R"(/.*)", route);
  srv.Post(R"(/.*)", route);
  srv.Options(R"(/.*)", [cors](const httplib::Request&, httplib::Response& res) {
    cors(res);
    res.status = 204;
  });
  return srv.listen(cfg_.host, cfg_.port);
}

void Service::stop() { http_->server.stop(); }

}  // namespace cuecoach::service
