#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cuecoach/rules/rules.hpp"
#include "cuecoach/surrogate/dataset.hpp"

namespace cuecoach::surrogate {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Rectifier network with a normalized-exponential output. Columns of the
/// input matrix are samples.
struct Mlp {
  std::vector<int> dims;  // input, hidden..., output
  std::vector<Matrix> weights;
  std::vector<Vector> biases;

  Mlp() = default;
  // He-normal weights from the seed, zero biases.
  Mlp(std::vector<int> dims, std::uint64_t seed);

  std::size_t layers() const { return weights.size(); }
  // Output probabilities, one column per input column.
  Matrix forward(const Matrix& x) const;
};

struct Gradients {
  double loss = 0.0;  // mean cross-entropy over the batch
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

/// Cross-entropy of the network against target distributions (columns of
/// `targets`) and its gradient. `masks`, when given, holds one inverted
/// dropout mask per hidden layer (entries 0 or 1/(1 - rate)).
Gradients backprop(const Mlp& net, const Matrix& inputs, const Matrix& targets,
                   const std::vector<Matrix>* masks = nullptr);

double cross_entropy(const Mlp& net, const Matrix& inputs, const Matrix& targets);

struct Hyper {
  std::vector<int> hidden = std::vector<int>(6, 256);
  int batch = 128;
  double lr = 0.005;
  double dropout = 0.25;
  int epochs = 25;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class AnchorMode { Quantile, Absolute };

std::string_view to_string(AnchorMode mode);
std::optional<AnchorMode> parse_anchor_mode(std::string_view text);

struct Anchors {
  double low = 0.0;
  double med = 0.0;
  double high = 0.0;
};

enum class Difficulty { Easy, Medium, Hard, None };

std::string_view to_string(Difficulty d);
std::optional<Difficulty> parse_difficulty(std::string_view text);

/// Mean entropy of the low/medium/high sections of the entropy
/// distribution. Quantile mode splits the sorted values at the 40% and 80%
/// ranks; absolute mode splits at 0.4 and 0.8 of h_max. Empty sections take
/// the overall mean.
Anchors difficulty_anchors(std::span<const double> entropies, AnchorMode mode = AnchorMode::Quantile,
                           double h_max = 0.0);

double expected_value(const ValueDistribution& p);
double entropy(const ValueDistribution& p);

/// H_max - |h_t - h_d| for the anchor matching `d`; 0 when d is None.
double difficulty_score(double h_t, Difficulty d, const Anchors& anchors, double h_max);

class SurrogateModel {
 public:
  SurrogateModel() = default;
  SurrogateModel(Mlp net, Hyper hyper, Anchors anchors, AnchorMode mode,
                 std::vector<double> loss_curve);

  int bins() const { return net_.dims.back(); }
  double h_max() const;
  const Mlp& net() const { return net_; }
  const Hyper& hyper() const { return hyper_; }
  const Anchors& anchors() const { return anchors_; }
  AnchorMode anchor_mode() const { return mode_; }
  const std::vector<double>& loss_curve() const { return loss_curve_; }

  ValueDistribution predict(const rules::RuleVector& r) const;

  nlohmann::json to_json() const;
  static SurrogateModel from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static SurrogateModel load(const std::filesystem::path& path);

 private:
  Mlp net_;
  Hyper hyper_;
  Anchors anchors_;
  AnchorMode mode_ = AnchorMode::Quantile;
  std::vector<double> loss_curve_;
};

using EpochCallback = std::function<void(int epoch, double loss)>;

/// Mini-batch gradient descent on cross-entropy with seeded shuffling and
/// dropout. The loss curve holds the full-dataset loss (dropout off) before
/// training and after every epoch. Bit-identical for a fixed seed.
SurrogateModel train(std::span<const TrainingSample> dataset, const Hyper& hyper,
                     AnchorMode mode = AnchorMode::Quantile, const EpochCallback& on_epoch = {});

}  // namespace cuecoach::surrogate
