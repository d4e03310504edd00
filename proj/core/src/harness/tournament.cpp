#include "cuecoach/harness/tournament.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>

#include "cuecoach/common/error.hpp"
#include "cuecoach/common/parallel.hpp"

namespace cuecoach::harness {

double WinCell::stddev() const {
  if (games <= 0) return 0.0;
  const double p = static_cast<double>(wins) / games;
  return std::sqrt(p * (1.0 - p) / games) * 100.0;
}

WinTable::WinTable(std::vector<std::string> names)
    : names_(std::move(names)), cells_(names_.size() * names_.size()) {}

WinCell WinTable::combined(std::size_t a, std::size_t b) const {
  const WinCell& first = cell(a, b);
  const WinCell& second = cell(b, a);
  return {first.games + second.games, first.wins + (second.games - second.wins)};
}

nlohmann::json WinTable::to_json() const {
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t r = 0; r < names_.size(); ++r) {
    for (std::size_t c = 0; c < names_.size(); ++c) {
      if (r == c) continue;
      const auto& x = cell(r, c);
      cells.push_back({{"player1", names_[r]},
                       {"player2", names_[c]},
                       {"games", x.games},
                       {"wins", x.wins},
                       {"win_rate", x.rate()},
                       {"std", x.stddev()}});
    }
  }
  return {{"agents", names_}, {"cells", cells}};
}

std::string WinTable::to_text() const {
  std::size_t width = 12;
  for (const auto& n : names_) width = std::max(width, n.size() + 2);
  auto pad = [&](std::string s) {
    s.resize(std::max(s.size(), width), ' ');
    return s;
  };
  std::string out = pad("p1 \\ p2");
  for (const auto& n : names_) out += pad(n);
  out += "\n";
  for (std::size_t r = 0; r < names_.size(); ++r) {
    out += pad(names_[r]);
    for (std::size_t c = 0; c < names_.size(); ++c) {
      if (r == c || cell(r, c).games == 0) {
        out += pad("-");
        continue;
      }
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.0f (%.1f)", cell(r, c).rate(), cell(r, c).stddev());
      out += pad(buf);
    }
    out += "\n";
  }
  return out;
}

WinTable run_tournament(std::span<const agents::AgentPtr> agents, const TournamentOptions& options) {
  if (agents.size() < 2) throw InvalidInput("a tournament needs at least two agents");
  if (options.games_per_pair < 0) throw InvalidInput("games per pair must be non-negative");
  std::vector<std::string> names;
  for (const auto& a : agents) {
    if (!a) throw InvalidInput("null agent in tournament");
    names.push_back(a->name());
  }
  // Duplicate names get a positional suffix so rows stay distinguishable.
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (std::count(names.begin(), names.end(), names[i]) > 1) names[i] += "#" + std::to_string(i + 1);
  }
  WinTable table(names);

  struct Job {
    std::size_t p1, p2;
    int k;
  };
  const int half = options.games_per_pair / 2;
  std::vector<Job> jobs;
  for (std::size_t a = 0; a < agents.size(); ++a) {
    for (std::size_t b = a + 1; b < agents.size(); ++b) {
      for (int k = 0; k < options.games_per_pair; ++k) {
        // Even split; an odd extra game goes to the first orientation.
        const bool a_first = k < options.games_per_pair - half;
        const int slot = a_first ? k : k - (options.games_per_pair - half);
        jobs.push_back(a_first ? Job{a, b, slot} : Job{b, a, slot});
      }
    }
  }

  std::vector<int> p1_won(jobs.size(), 0);
  std::atomic<std::size_t> done{0};
  game::GameOptions gopt = options.game;
  gopt.keep_log = false;
  parallel_for(jobs.size(), options.jobs, [&](std::size_t i) {
    const Job& j = jobs[i];
    const auto k = static_cast<std::uint64_t>(j.k);
    const auto start = game::random_start(derive_seed(options.seed, k), gopt.spec);
    try {
      const auto result = game::play_game(*agents[j.p1], *agents[j.p2], start, options.noise,
                                          derive_seed(options.seed, 0x10000 + k), gopt);
      p1_won[i] = game::did_player1_win(result);
    } catch (const Error& e) {
      throw Error(e.code(), e.stage(),
                  names[j.p1] + " vs " + names[j.p2] + ", game " + std::to_string(j.k) + ": " + e.what());
    }
    const std::size_t d = ++done;
    if (options.progress) options.progress(d, jobs.size());
  });

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto& c = table.cell(jobs[i].p1, jobs[i].p2);
    ++c.games;
    c.wins += p1_won[i];
  }
  return table;
}

double potting_rate(const agents::Agent& agent, std::span<const physics::TableState> states,
                    std::span<const physics::BallId> targets, std::uint64_t seed,
                    const physics::TableSpec& spec) {
  if (states.empty()) throw EmptyInput("potting rate over no states");
  std::size_t potted = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto shot = agent.select_shot(states[i], targets, derive_seed(seed, i));
    const auto sim = physics::simulate(states[i], shot, spec);
    const bool hit = std::any_of(sim.trace.begin(), sim.trace.end(), [&](const physics::Event& e) {
      return e.kind == physics::EventKind::BallPocket &&
             std::find(targets.begin(), targets.end(), e.ball) != targets.end();
    });
    potted += hit ? 1 : 0;
  }
  return static_cast<double>(potted) / static_cast<double>(states.size());
}

}  // namespace cuecoach::harness
