#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cuecoach/agents/assistant_agent.hpp"
#include "cuecoach/agents/registry.hpp"
#include "cuecoach/assistant/assist.hpp"
#include "cuecoach/common/error.hpp"
#include "cuecoach/game/game.hpp"
#include "cuecoach/harness/diverse.hpp"
#include "cuecoach/harness/likert_eval.hpp"
#include "cuecoach/harness/tournament.hpp"
#include "cuecoach/io/serialize.hpp"
#include "cuecoach/physics/simulator.hpp"
#include "cuecoach/service/service.hpp"
#include "cuecoach/surrogate/model.hpp"

using namespace cuecoach;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string config;
  int jobs = 1;
};

// Optional sections of --config: {"lm": {...}, "fixtures_dir": "...", "service": {...}}.
json load_config(const Globals& g) {
  if (g.config.empty()) return json::object();
  auto j = io::read_json_file(g.config);
  if (!j.is_object()) throw InvalidInput("--config must hold a JSON object");
  return j;
}

assistant::LMPtr make_lm(const json& config, const std::string& fixtures) {
  if (!fixtures.empty()) return std::make_shared<assistant::FixtureLM>(fixtures);
  if (config.contains("fixtures_dir")) {
    return std::make_shared<assistant::FixtureLM>(config.at("fixtures_dir").get<std::string>());
  }
  if (auto env = assistant::RemoteLMConfig::from_env()) return std::make_shared<assistant::RemoteLM>(*env);
  if (config.contains("lm")) {
    const auto& l = config.at("lm");
    assistant::RemoteLMConfig c;
    c.base_url = l.at("base_url").get<std::string>();
    c.api_key = l.value("api_key", std::string());
    c.model = l.value("model", std::string());
    c.timeout_s = l.value("timeout_s", c.timeout_s);
    return std::make_shared<assistant::RemoteLM>(c);
  }
  return nullptr;
}

std::shared_ptr<const surrogate::SurrogateModel> load_model(const std::string& path) {
  if (path.empty()) return nullptr;
  return std::make_shared<surrogate::SurrogateModel>(surrogate::SurrogateModel::load(path));
}

agents::AgentResources resources(const std::string& model, const assistant::LMPtr& lm, int jobs) {
  agents::AgentResources res;
  res.model = load_model(model);
  res.lm = lm;
  res.surrogate.tune.jobs = jobs;
  res.assistant.tune.jobs = jobs;
  return res;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

void progress_line(std::size_t done, std::size_t total) {
  std::fprintf(stderr, "\r%zu/%zu", done, total);
  if (done == total) std::fprintf(stderr, "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3Pool coaching engine: simulation, agents, surrogate training and shot assistance"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
  app.add_option("--config", g.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();

  // simulate
  auto* sim = app.add_subcommand("simulate", "Strike a shot and write the post state, trace and frames");
  std::string sim_state, sim_shot, sim_out;
  bool sim_clamp = false;
  sim->add_option("--state", sim_state, "Table state JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--shot", sim_shot, "Shot JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", sim_out, "Output JSON")->required();
  sim->add_flag("--clamp", sim_clamp, "Clamp out-of-range shot parameters");
  sim->callback([&] {
    const auto state = io::table_state_from_json(io::read_json_file(sim_state));
    const auto shot = io::shot_from_json(io::read_json_file(sim_shot), sim_clamp);
    const auto res = physics::strike_and_trace(state, shot);
    io::write_json_file(sim_out, {{"post_state", io::to_json(res.post)},
                                  {"trace", io::to_json(res.trace)},
                                  {"frames", io::to_json(res.frames)},
                                  {"frames_truncated", res.frames_truncated}});
    std::cout << physics::to_text(res.trace) << "\n";
  });

  // play
  auto* play = app.add_subcommand("play", "Play one game between two agents");
  std::string p1 = "greedy", p2 = "greedy", play_state, play_out, play_model, play_fixtures;
  bool play_noiseless = false;
  play->add_option("--agent1", p1, "Player 1 agent")->capture_default_str();
  play->add_option("--agent2", p2, "Player 2 agent")->capture_default_str();
  play->add_option("--state", play_state, "Start state JSON (default: seeded random start)")
      ->check(CLI::ExistingFile);
  play->add_option("--model", play_model, "Surrogate model JSON")->check(CLI::ExistingFile);
  play->add_option("--lm-fixtures", play_fixtures, "Replay LM answers from this directory");
  play->add_option("--out", play_out, "Shot log (JSON Lines)");
  play->add_flag("--noiseless", play_noiseless, "Execute shots exactly");
  play->callback([&] {
    const auto cfg = load_config(g);
    const auto res = resources(play_model, make_lm(cfg, play_fixtures), g.jobs);
    const auto a = agents::make_agent(p1, res);
    const auto b = agents::make_agent(p2, res);
    const auto start = play_state.empty() ? game::random_start(derive_seed(g.seed, 0))
                                          : io::table_state_from_json(io::read_json_file(play_state));
    const auto noise = play_noiseless ? game::NoiseModel::none() : game::NoiseModel{};
    const auto result = game::play_game(*a, *b, start, noise, derive_seed(g.seed, 1));
    if (!play_out.empty()) write_text(play_out, io::game_log_jsonl(result));
    std::cout << io::game_summary(result).dump(2) << "\n";
  });

  // tournament
  auto* tour = app.add_subcommand("tournament", "Round-robin win-rate table");
  std::string tour_agents = "greedy,poolmaster", tour_out, tour_model, tour_fixtures;
  int tour_games = 100;
  tour->add_option("--agents", tour_agents, "Comma-separated agent names")->capture_default_str();
  tour->add_option("--games", tour_games, "Games per pair")->check(CLI::PositiveNumber)->capture_default_str();
  tour->add_option("--model", tour_model, "Surrogate model JSON")->check(CLI::ExistingFile);
  tour->add_option("--lm-fixtures", tour_fixtures, "Replay LM answers from this directory");
  tour->add_option("--out", tour_out, "Win table JSON");
  tour->callback([&] {
    const auto cfg = load_config(g);
    const auto res = resources(tour_model, make_lm(cfg, tour_fixtures), 1);
    std::vector<agents::AgentPtr> list;
    for (const auto& name : split_csv(tour_agents)) list.push_back(agents::make_agent(name, res));
    if (list.size() < 2) throw InvalidInput("a tournament needs at least two agents");
    harness::TournamentOptions opt;
    opt.games_per_pair = tour_games;
    opt.seed = g.seed;
    opt.jobs = g.jobs;
    opt.progress = progress_line;
    const auto table = harness::run_tournament(list, opt);
    if (!tour_out.empty()) io::write_json_file(tour_out, table.to_json());
    std::cout << table.to_text();
  });

  // gen-dataset
  auto* gen = app.add_subcommand("gen-dataset", "Generate surrogate training samples (JSON Lines)");
  std::string gen_agent = "greedy", gen_out, gen_model;
  std::size_t gen_count = 1000;
  surrogate::GenConfig gen_cfg;
  gen->add_option("--agent", gen_agent, "Data-generating agent")->capture_default_str();
  gen->add_option("--count", gen_count, "Number of samples")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--M", gen_cfg.M, "Noisy executions per sample")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--N", gen_cfg.N, "Rollouts per execution")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--bins", gen_cfg.n, "Value histogram bins")->check(CLI::Range(2, 1000))->capture_default_str();
  gen->add_option("--explore", gen_cfg.explore, "Fraction of samples with an off-policy shot")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen->add_flag("--explore-uniform", gen_cfg.explore_uniform,
                "Draw off-policy shots uniformly instead of perturbing the agent's shot");
  gen->add_option("--model", gen_model, "Surrogate model JSON (for model-backed agents)")->check(CLI::ExistingFile);
  gen->add_option("--out", gen_out, "Output JSON Lines")->required();
  gen->callback([&] {
    const auto res = resources(gen_model, nullptr, 1);
    const auto agent = agents::make_agent(gen_agent, res);
    const auto data = surrogate::gen_dataset(*agent, gen_count, gen_cfg, g.seed, g.jobs, progress_line);
    surrogate::write_dataset(gen_out, data);
    std::cout << "wrote " << data.size() << " samples to " << gen_out << "\n";
  });

  // train
  auto* train = app.add_subcommand("train", "Fit the surrogate network to a dataset");
  std::string train_data, train_out, train_hidden, train_anchors = "quantile";
  surrogate::Hyper hyper;
  train->add_option("--data", train_data, "Dataset JSON Lines")->required()->check(CLI::ExistingFile);
  train->add_option("--out", train_out, "Model JSON")->required();
  train->add_option("--epochs", hyper.epochs, "Epochs")->check(CLI::NonNegativeNumber)->capture_default_str();
  train->add_option("--lr", hyper.lr, "Learning rate")->check(CLI::PositiveNumber)->capture_default_str();
  train->add_option("--batch", hyper.batch, "Batch size")->check(CLI::PositiveNumber)->capture_default_str();
  train->add_option("--dropout", hyper.dropout, "Dropout rate")->check(CLI::Range(0.0, 0.99))->capture_default_str();
  train->add_option("--hidden", train_hidden, "Comma-separated hidden widths (default 6x256)");
  train->add_option("--anchors", train_anchors, "Difficulty anchors")
      ->check(CLI::IsMember({"quantile", "absolute"}))->capture_default_str();
  train->callback([&] {
    hyper.seed = g.seed;
    if (!train_hidden.empty()) {
      hyper.hidden.clear();
      for (const auto& w : split_csv(train_hidden)) hyper.hidden.push_back(std::stoi(w));
    }
    const auto data = surrogate::read_dataset(train_data);
    const auto model = surrogate::train(data, hyper, *surrogate::parse_anchor_mode(train_anchors),
                                        [](int epoch, double loss) {
                                          std::fprintf(stderr, "epoch %d loss %.4f\n", epoch, loss);
                                        });
    model.save(train_out);
    const auto& curve = model.loss_curve();
    std::printf("cross-entropy %.4f -> %.4f over %zu samples\n", curve.front(), curve.back(), data.size());
  });

  // assist
  auto* as = app.add_subcommand("assist", "Recommend, tune and explain a shot");
  std::string as_state, as_query = agents::kDefaultQuery, as_model, as_out, as_fixtures;
  int as_steps = 300, as_candidates = 5;
  bool as_strict = false;
  as->add_option("--state", as_state, "Table state JSON")->required()->check(CLI::ExistingFile);
  as->add_option("--query", as_query, "Coaching query")->capture_default_str();
  as->add_option("--model", as_model, "Surrogate model JSON")->required()->check(CLI::ExistingFile);
  as->add_option("--lm-fixtures", as_fixtures, "Replay LM answers from this directory");
  as->add_option("--steps", as_steps, "Annealing steps")->check(CLI::NonNegativeNumber)->capture_default_str();
  as->add_option("--candidates", as_candidates, "Candidate shots")->check(CLI::PositiveNumber)->capture_default_str();
  as->add_flag("--no-degraded", as_strict, "Fail instead of falling back when the LM is unavailable");
  as->add_option("--out", as_out, "Result JSON");
  as->callback([&] {
    const auto cfg = load_config(g);
    const auto lm = make_lm(cfg, as_fixtures);
    const auto model = surrogate::SurrogateModel::load(as_model);
    const auto state = io::table_state_from_json(io::read_json_file(as_state));
    assistant::AssistConfig ac;
    ac.seed = g.seed;
    ac.fit.steps = as_steps;
    ac.tune.sa.steps = as_steps;
    ac.tune.jobs = g.jobs;
    ac.recommend.n_r = as_candidates;
    ac.allow_degraded = !as_strict;
    const auto res = assistant::assist(state, as_query, lm.get(), model, ac);
    json report = json::array();
    for (const auto& e : res.report) {
      report.push_back({{"id", e.id}, {"name", e.name}, {"value", e.value}, {"likert", e.likert},
                        {"polarity", std::string(assistant::to_string(e.polarity))}});
    }
    if (!as_out.empty()) {
      io::write_json_file(as_out, {{"shot", io::to_json(res.tuned.shot)},
                                   {"explanation", res.explanation},
                                   {"degraded", res.degraded},
                                   {"rule_report", report},
                                   {"trace", io::to_json(res.tuned.trace)},
                                   {"expected_value", res.tuned.expected_value},
                                   {"score", res.tuned.score},
                                   {"diagnostics", res.diagnostics}});
    }
    std::cout << io::to_json(res.tuned.shot).dump() << "\n"
              << physics::to_text(res.tuned.trace) << "\n"
              << (res.degraded ? "[degraded] " : "") << res.explanation << "\n";
  });

  // eval-rules
  auto* ev = app.add_subcommand("eval-rules", "Likert agreement between LM ratings and rule values");
  std::string ev_dir, ev_data, ev_out, ev_mock, ev_fixtures;
  bool ev_lm = false, ev_with_r = true;
  int ev_clusters = 10, ev_per_cluster = 5;
  auto* dir_opt = ev->add_option("--model-dir", ev_dir, "Directory holding dataset.jsonl")->check(CLI::ExistingDirectory);
  ev->add_option("--data", ev_data, "Dataset JSON Lines")->check(CLI::ExistingFile)->excludes(dir_opt);
  auto* lm_flag = ev->add_flag("--lm", ev_lm, "Query the configured language model");
  ev->add_option("--mock", ev_mock, "Mock rater")->check(CLI::IsMember({"oracle", "moderate"}))->excludes(lm_flag);
  ev->add_option("--lm-fixtures", ev_fixtures, "Replay LM answers from this directory");
  ev->add_flag("--with-r,!--no-r", ev_with_r, "Include rule weights in the prompt")->capture_default_str();
  ev->add_option("--clusters", ev_clusters, "K-means clusters")->check(CLI::PositiveNumber)->capture_default_str();
  ev->add_option("--per-cluster", ev_per_cluster, "Samples per cluster")->check(CLI::PositiveNumber)->capture_default_str();
  ev->add_option("--out", ev_out, "Result JSON");
  ev->callback([&] {
    if (ev_dir.empty() && ev_data.empty()) throw CLI::RequiredError("--model-dir or --data");
    if (!ev_lm && ev_mock.empty()) throw CLI::RequiredError("--lm or --mock");
    const auto data = surrogate::read_dataset(ev_data.empty() ? ev_dir + "/dataset.jsonl" : ev_data);
    const auto pick = harness::kmeans_diverse_sample(data, ev_clusters, ev_per_cluster, g.seed);
    std::vector<surrogate::TrainingSample> samples;
    for (auto i : pick.selected) samples.push_back(data[i]);

    assistant::LMPtr lm;
    if (ev_mock == "moderate") {
      json keys = json::array();
      for (int i = 0; i < rules::kRuleCount; ++i) keys.push_back("moderate");
      lm = assistant::ScriptedLM::constant(keys.dump());
    } else if (ev_mock == "oracle") {
      std::vector<std::string> answers;
      for (const auto& s : samples) {
        json keys = json::array();
        for (double x : s.r) keys.push_back(std::string(rules::quantize_likert(x).key));
        answers.push_back(keys.dump());
      }
      lm = assistant::ScriptedLM::sequence(std::move(answers));
    } else {
      lm = make_lm(load_config(g), ev_fixtures);
      if (!lm) throw LMUnavailable("no language model configured; set LM_BASE_URL or --lm-fixtures");
    }
    const auto res = harness::likert_agreement_eval(*lm, samples, ev_with_r);
    if (!ev_out.empty()) io::write_json_file(ev_out, res.to_json());
    std::printf("%-5s %8s %8s\n", "rule", "mean", "stderr");
    for (int i = 0; i < rules::kRuleCount; ++i) {
      std::printf("%-5d %8.3f %8.3f\n", i + 1, res.mean[static_cast<std::size_t>(i)],
                  res.stderr_[static_cast<std::size_t>(i)]);
    }
    std::printf("%-5s %8.3f %8.3f\nevaluated %d, excluded %d\n", "all", res.overall_mean, res.overall_stderr,
                res.evaluated, res.excluded);
  });

  // serve
  auto* srv = app.add_subcommand("serve", "Run the HTTP service");
  int srv_port = -1;
  std::string srv_model;
  srv->add_option("--port", srv_port, "Listen port (overrides config and PORT)")->check(CLI::Range(0, 65535));
  srv->add_option("--model", srv_model, "Surrogate model JSON")->check(CLI::ExistingFile);
  srv->callback([&] {
    const auto cfg_json = load_config(g);
    auto cfg = cfg_json.contains("service") ? service::ServiceConfig::from_json(cfg_json.at("service"))
                                            : service::ServiceConfig{};
    cfg.apply_env();
    if (srv_port >= 0) cfg.port = srv_port;
    if (!srv_model.empty()) cfg.model_path = srv_model;
    auto svc = service::Service::from_config(cfg);
    std::fprintf(stderr, "listening on %s:%d\n", cfg.host.c_str(), cfg.port);
    if (!svc.listen()) throw InvalidInput("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s/%s]: %s\n", e.stage().c_str(), e.code().c_str(), e.what());
    return 1;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error [input]: %s\n", e.what());
    return 1;
  }
  return 0;
}
