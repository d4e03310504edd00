#include <benchmark/benchmark.h>

#include "cuecoach/agents/greedy.hpp"
#include "cuecoach/assistant/annealing.hpp"
#include "cuecoach/common/random.hpp"
#include "cuecoach/game/game.hpp"
#include "cuecoach/physics/simulator.hpp"
#include "cuecoach/rules/rules.hpp"
#include "cuecoach/surrogate/model.hpp"

using namespace cuecoach;

namespace {

struct Case {
  physics::TableState state;
  physics::ShotParams shot;
};

std::vector<Case> cases(std::size_t n) {
  std::vector<Case> out;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(11, i));
    out.push_back({game::random_start(derive_seed(12, i)), assistant::random_shot(rng)});
  }
  return out;
}

void BM_Simulate(benchmark::State& st) {
  const auto cs = cases(64);
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& c = cs[i++ % cs.size()];
    benchmark::DoNotOptimize(physics::simulate(c.state, c.shot));
  }
}
BENCHMARK(BM_Simulate);

void BM_StrikeAndTrace(benchmark::State& st) {
  const auto cs = cases(64);
  std::size_t i = 0;
  for (auto _ : st) {
    const auto& c = cs[i++ % cs.size()];
    benchmark::DoNotOptimize(physics::strike_and_trace(c.state, c.shot));
  }
}
BENCHMARK(BM_StrikeAndTrace);

void BM_EvaluateRules(benchmark::State& st) {
  const auto cs = cases(64);
  const game::PlayerAssignment pa;
  std::vector<rules::RuleContext> ctx;
  for (const auto& c : cs) ctx.push_back(rules::make_context(c.state, c.shot, pa.player1, pa.player2));
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(rules::evaluate_rules(ctx[i++ % ctx.size()]));
}
BENCHMARK(BM_EvaluateRules);

void BM_LcsMatch(benchmark::State& st) {
  const auto cs = cases(32);
  std::vector<physics::EventSequence> seqs;
  for (const auto& c : cs) seqs.push_back(physics::simulate(c.state, c.shot).trace);
  std::size_t i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(assistant::lcs_match(seqs[i % seqs.size()], seqs[(i * 7 + 3) % seqs.size()]));
    ++i;
  }
}
BENCHMARK(BM_LcsMatch);

void BM_SurrogateForward(benchmark::State& st) {
  const surrogate::Mlp net({29, 128, 128, 10}, 3);
  surrogate::Matrix x = surrogate::Matrix::Random(29, st.range(0)).cwiseAbs();
  for (auto _ : st) benchmark::DoNotOptimize(net.forward(x));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_SurrogateForward)->Arg(1)->Arg(64);

void BM_GreedySelect(benchmark::State& st) {
  const agents::GreedyAgent agent;
  const game::PlayerAssignment pa;
  const auto start = game::random_start(5);
  std::uint64_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(agent.select_shot(start, pa.player1, seed++));
}
BENCHMARK(BM_GreedySelect);

}  // namespace

BENCHMARK_MAIN();
