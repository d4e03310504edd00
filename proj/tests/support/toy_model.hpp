#pragma once

#include <memory>

#include "cuecoach/common/random.hpp"
#include "cuecoach/surrogate/model.hpp"

namespace cuecoach::testing {

/// Small surrogate trained on synthetic samples whose win rate follows
/// rule 13 (potting); cheap enough for unit tests.
inline std::shared_ptr<const surrogate::SurrogateModel> toy_model(std::uint64_t seed = 1) {
  Rng rng(seed);
  std::vector<surrogate::TrainingSample> data(300);
  for (auto& s : data) {
    for (double& r : s.r) r = rng.uniform() < 0.5 ? 0.0 : rng.uniform();
    std::vector<double> v{s.r[12], std::min(1.0, 0.3 + 0.7 * s.r[12] * rng.uniform())};
    s.p = surrogate::histogram(v, 10);
  }
  surrogate::Hyper h;
  h.hidden = {16, 16};
  h.batch = 32;
  h.lr = 0.05;
  h.dropout = 0.0;
  h.epochs = 20;
  h.seed = seed;
  return std::make_shared<surrogate::SurrogateModel>(surrogate::train(data, h));
}

}  // namespace cuecoach::testing
