#include "cuecoach/surrogate/dataset.hpp"

#include <atomic>
#include <cmath>
#include <fstream>

#include "cuecoach/common/error.hpp"
#include "cuecoach/common/parallel.hpp"
#include "cuecoach/io/serialize.hpp"
#include "cuecoach/physics/simulator.hpp"

namespace cuecoach::surrogate {

using physics::BallId;
using physics::TableState;

ValueDistribution histogram(std::span<const double> values, int n) {
  if (values.empty()) throw EmptyInput("histogram of no values");
  if (n < 2) throw InvalidInput("histogram needs at least two bins");
  ValueDistribution p(static_cast<std::size_t>(n), 0.0);
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("histogram value outside [0, 1]");
    const int k = std::min(n - 1, static_cast<int>(std::floor(v * n)));
    p[static_cast<std::size_t>(k)] += 1.0;
  }
  for (double& x : p) x /= static_cast<double>(values.size());
  return p;
}

void GenConfig::validate() const {
  if (M < 1 || N < 1) throw InvalidInput("M and N must be at least 1");
  if (n < 2) throw InvalidInput("n must be at least 2");
  if (!noise.valid() || !explore_noise.valid()) throw InvalidInput("noise deviations must be non-negative");
  if (!(explore >= 0.0 && explore <= 1.0)) throw InvalidInput("explore must lie in [0, 1]");
  game.assignment.validate();
}

namespace {

bool cleared(const TableState& s, const std::vector<BallId>& targets) {
  for (BallId id : targets) {
    if (s.on_table(id)) return false;
  }
  return true;
}

}  // namespace

TrainingSample gen_sample(const agents::Agent& agent, const TableState& state,
                          const GenConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const auto& spec = cfg.game.spec;
  const auto& mine = cfg.game.assignment.player1;
  const auto& theirs = cfg.game.assignment.player2;

  TrainingSample out;
  out.state = state;
  out.meta = {seed, cfg.M, cfg.N, cfg.noise};
  out.shot = agent.select_shot(state, mine, derive_seed(seed, 0));
  if (!out.shot.in_bounds()) throw AgentError(1, agent.name() + " returned an out-of-bounds shot");
  if (cfg.explore > 0.0) {
    Rng explore_rng(derive_seed(seed, 0x7E));
    if (explore_rng.bernoulli(cfg.explore)) {
      if (cfg.explore_uniform) {
        std::array<double, 5> u;
        for (double& x : u) x = explore_rng.uniform();
        out.shot = physics::ShotParams::from_normalized(u);
      } else {
        out.shot = game::apply_noise(out.shot, cfg.explore_noise, explore_rng);
      }
      out.meta.explored = true;
    }
  }
  out.r = rules::evaluate_rules(rules::make_context(state, out.shot, mine, theirs, spec));

  game::GameOptions rollout = cfg.game;
  rollout.keep_log = false;
  std::vector<double> v(static_cast<std::size_t>(cfg.M));
  for (int j = 0; j < cfg.M; ++j) {
    Rng rng(derive_seed(seed, 0x100 + static_cast<std::uint64_t>(j)));
    const auto executed = game::apply_noise(out.shot, cfg.noise, rng);
    const auto sim = physics::simulate(state, executed, spec);
    const auto ruling = game::judge_shot(state, sim.post, sim.trace, mine);
    double wins = 0.0;
    if (cleared(sim.post, mine)) {
      wins = cfg.N;
    } else if (!cleared(sim.post, theirs)) {
      rollout.first_shooter = ruling.shooter_continues ? game::Player::One : game::Player::Two;
      for (int k = 0; k < cfg.N; ++k) {
        const auto result = game::play_game(agent, agent, sim.post, cfg.noise,
                                            derive_seed(seed, 0x10000 + static_cast<std::uint64_t>(k)),
                                            rollout);
        wins += game::did_player1_win(result);
      }
    }
    v[static_cast<std::size_t>(j)] = wins / cfg.N;
  }
  out.p = histogram(v, cfg.n);
  return out;
}

std::vector<TrainingSample> gen_dataset(const agents::Agent& agent, std::size_t count,
                                        const GenConfig& cfg, std::uint64_t seed, int jobs,
                                        const Progress& progress) {
  cfg.validate();
  std::vector<TrainingSample> out(count);
  std::atomic<std::size_t> done{0};
  parallel_for(count, jobs, [&](std::size_t i) {
    const auto start = game::random_start(derive_seed(seed, 2 * i), cfg.game.spec);
    try {
      out[i] = gen_sample(agent, start, cfg, derive_seed(seed, 2 * i + 1));
    } catch (const Error& e) {
      throw Error(e.code(), e.stage(), "sample " + std::to_string(i) + ": " + e.what());
    }
    const std::size_t d = ++done;
    if (progress) progress(d, count);
  });
  return out;
}

nlohmann::json to_json(const TrainingSample& s) {
  const auto& nz = s.meta.noise;
  return {{"state", io::to_json(s.state)},
          {"shot", io::to_json(s.shot)},
          {"r", s.r},
          {"p", s.p},
          {"meta",
           {{"seed", s.meta.seed},
            {"M", s.meta.M},
            {"N", s.meta.N},
            {"explored", s.meta.explored},
            {"sigma", {nz.sigma_v, nz.sigma_alpha, nz.sigma_beta, nz.sigma_a, nz.sigma_b}}}}};
}

TrainingSample sample_from_json(const nlohmann::json& j) {
  TrainingSample s;
  try {
    s.state = io::table_state_from_json(j.at("state"), {}, false);
    s.shot = io::shot_from_json(j.at("shot"), true);
    const auto r = j.at("r").get<std::vector<double>>();
    if (r.size() != s.r.size()) throw InvalidInput("rule vector must have 29 entries");
    std::copy(r.begin(), r.end(), s.r.begin());
    s.p = j.at("p").get<std::vector<double>>();
    if (s.p.size() < 2) throw InvalidInput("value distribution needs at least two bins");
    if (j.contains("meta")) {
      const auto& m = j.at("meta");
      s.meta.seed = m.value("seed", std::uint64_t{0});
      s.meta.M = m.value("M", 0);
      s.meta.N = m.value("N", 0);
      s.meta.explored = m.value("explored", false);
      if (m.contains("sigma")) {
        const auto sg = m.at("sigma").get<std::vector<double>>();
        if (sg.size() == 5) s.meta.noise = {sg[0], sg[1], sg[2], sg[3], sg[4]};
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed training sample: ") + e.what());
  }
  return s;
}

void write_dataset(const std::filesystem::path& path, std::span<const TrainingSample> samples) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  for (const auto& s : samples) out << to_json(s).dump() << '\n';
}

std::vector<TrainingSample> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::vector<TrainingSample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(sample_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace cuecoach::surrogate
