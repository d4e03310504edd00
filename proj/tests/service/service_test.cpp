#include <gtest/gtest.h>

#include <cstdlib>

#include "cuecoach/assistant/lm.hpp"
#include "cuecoach/common/error.hpp"
#include "cuecoach/io/serialize.hpp"
#include "cuecoach/physics/shot.hpp"
#include "cuecoach/service/service.hpp"
#include "toy_model.hpp"

namespace cuecoach {
namespace {

using nlohmann::json;
using service::Service;
using service::ServiceConfig;

json fixture(const std::string& name) {
  return io::read_json_file(std::string(CUECOACH_TEST_DATA_DIR) + "/fixtures/" + name);
}

const std::shared_ptr<const surrogate::SurrogateModel>& model() {
  static const auto m = testing::toy_model(3);
  return m;
}

void expect_error(const service::HttpResponse& res, int status) {
  EXPECT_EQ(res.status, status) << res.body.dump();
  EXPECT_TRUE(res.body.contains("code"));
  EXPECT_TRUE(res.body.contains("stage"));
  EXPECT_TRUE(res.body.contains("message"));
}

TEST(Service, HealthAndRules) {
  const Service svc({}, nullptr, nullptr);
  const auto h = svc.handle("GET", "/healthz", "");
  EXPECT_EQ(h.status, 200);
  EXPECT_EQ(h.body, json({{"status", "ok"}}));
  const auto r = svc.handle("GET", "/api/v1/rules", "");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body.size(), 29u);
  expect_error(svc.handle("GET", "/nope", ""), 404);
  expect_error(svc.handle("GET", "/api/v1/simulate", ""), 405);
}

TEST(Service, SimulateZeroSpeedKeepsState) {
  const Service svc({}, nullptr, nullptr);
  const json req = {{"state", fixture("pot_state.json")},
                    {"shot", {{"v", 0.0}, {"alpha", 0.0}, {"beta", 0.0}, {"a", 0.0}, {"b", 0.0}}}};
  const auto res = svc.handle("POST", "/api/v1/simulate", req.dump());
  ASSERT_EQ(res.status, 200) << res.body.dump();
  EXPECT_TRUE(res.body.at("trace").empty());
  EXPECT_EQ(res.body.at("post_state"), io::to_json(io::table_state_from_json(req.at("state"))));
}

TEST(Service, SimulateHeadOnPot) {
  const Service svc({}, nullptr, nullptr);
  const json req = {{"state", fixture("pot_state.json")}, {"shot", fixture("pot_shot.json")}};
  const auto res = svc.handle("POST", "/api/v1/simulate", req.dump());
  ASSERT_EQ(res.status, 200) << res.body.dump();
  const auto& trace = res.body.at("trace");
  ASSERT_FALSE(trace.empty());
  EXPECT_EQ(trace.back().at("kind"), "ball_pocket");
  EXPECT_EQ(trace.back().at("balls").at(0), "blue");
  EXPECT_FALSE(res.body.at("frames").empty());
  EXPECT_LE(res.body.at("frames").size(), 900u);
}

TEST(Service, BadRequests) {
  const Service svc({}, nullptr, nullptr);
  json req = {{"state", fixture("pot_state.json")}, {"shot", fixture("pot_shot.json")}};
  req["shot"]["v"] = 9.0;
  expect_error(svc.handle("POST", "/api/v1/simulate", req.dump()), 400);
  req["clamp"] = true;
  EXPECT_EQ(svc.handle("POST", "/api/v1/simulate", req.dump()).status, 200);
  expect_error(svc.handle("POST", "/api/v1/simulate", "{not json"), 400);
  expect_error(svc.handle("POST", "/api/v1/simulate", "[]"), 400);
  expect_error(svc.handle("POST", "/api/v1/simulate", R"({"shot": {}})"), 400);
}

TEST(Service, AgentShot) {
  const Service svc({}, nullptr, nullptr);
  json req = {{"state", fixture("pot_state.json")}, {"agent", "greedy"}, {"seed", 4}};
  const auto ok = svc.handle("POST", "/api/v1/agent-shot", req.dump());
  ASSERT_EQ(ok.status, 200) << ok.body.dump();
  EXPECT_TRUE(io::shot_from_json(ok.body.at("shot")).in_bounds());
  req["agent"] = "nobody";
  expect_error(svc.handle("POST", "/api/v1/agent-shot", req.dump()), 404);
  req["agent"] = "surrogate";
  const auto missing = svc.handle("POST", "/api/v1/agent-shot", req.dump());
  expect_error(missing, 409);
  EXPECT_EQ(missing.body.at("code"), "model_missing");
}

TEST(Service, AssistDegradedIsDeterministic) {
  ServiceConfig cfg;
  cfg.default_steps = 40;
  cfg.workers = 1;
  const Service svc(cfg, model(), nullptr);
  const json req = {{"state", fixture("pot_state.json")}, {"query", "pot the blue"}, {"seed", 11},
                    {"n_candidates", 2}};
  const auto a = svc.handle("POST", "/api/v1/assist", req.dump());
  ASSERT_EQ(a.status, 200) << a.body.dump();
  for (const char* key : {"shot", "explanation", "degraded", "rule_report", "trace", "frames",
                          "expected_value", "strategy", "difficulty"}) {
    EXPECT_TRUE(a.body.contains(key)) << key;
  }
  EXPECT_TRUE(a.body.at("degraded").get<bool>());
  EXPECT_EQ(a.body.at("rule_report").size(), 29u);
  EXPECT_TRUE(io::shot_from_json(a.body.at("shot")).in_bounds());
  if (!a.body.at("trace").empty()) EXPECT_FALSE(a.body.at("frames").empty());
  EXPECT_EQ(svc.handle("POST", "/api/v1/assist", req.dump()).body, a.body);
}

TEST(Service, AssistErrors) {
  ServiceConfig cfg;
  cfg.default_steps = 10;
  json req = {{"state", fixture("pot_state.json")}, {"query", "anything"}};
  expect_error(Service(cfg, nullptr, nullptr).handle("POST", "/api/v1/assist", req.dump()), 409);

  cfg.allow_degraded = false;
  const Service strict(cfg, model(), assistant::ScriptedLM::offline());
  expect_error(strict.handle("POST", "/api/v1/assist", req.dump()), 503);

  req["state"]["balls"]["purple"] = {{"x", 0.3}, {"y", 0.3}, {"on_table", true}};
  expect_error(strict.handle("POST", "/api/v1/assist", req.dump()), 400);
  req["state"] = fixture("pot_state.json");
  req["steps"] = 1 << 30;
  expect_error(strict.handle("POST", "/api/v1/assist", req.dump()), 400);
}

TEST(Service, StatusMapping) {
  EXPECT_EQ(service::status_for("invalid_input"), 400);
  EXPECT_EQ(service::status_for("unknown_agent"), 404);
  EXPECT_EQ(service::status_for("model_missing"), 409);
  EXPECT_EQ(service::status_for("lm_unavailable"), 503);
  EXPECT_EQ(service::status_for("non_finite_loss"), 500);
}

TEST(ServiceConfig, JsonAndEnv) {
  const auto c = ServiceConfig::from_json({{"port", 9000}, {"workers", 2}, {"cors_origin", "http://ui"}});
  EXPECT_EQ(c.port, 9000);
  EXPECT_EQ(c.workers, 2);
  EXPECT_EQ(c.cors_origin, "http://ui");
  EXPECT_THROW(ServiceConfig::from_json({{"bogus", 1}}), InvalidInput);
  EXPECT_THROW(ServiceConfig::from_json({{"port", 70000}}), InvalidInput);

  ServiceConfig e;
  ::setenv("PORT", "8123", 1);
  ::setenv("MODEL_PATH", "/tmp/m.json", 1);
  e.apply_env();
  ::unsetenv("PORT");
  ::unsetenv("MODEL_PATH");
  EXPECT_EQ(e.port, 8123);
  EXPECT_EQ(e.model_path, "/tmp/m.json");
}

}  // namespace
}  // namespace cuecoach
