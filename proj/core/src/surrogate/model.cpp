#include "cuecoach/surrogate/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cuecoach/common/error.hpp"
#include "cuecoach/common/random.hpp"
#include "cuecoach/io/serialize.hpp"

namespace cuecoach::surrogate {

namespace {

// Column-wise softmax with the usual max shift.
Matrix softmax(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const double m = logits.col(c).maxCoeff();
    out.col(c) = (logits.col(c).array() - m).exp().matrix();
    out.col(c) /= out.col(c).sum();
  }
  return out;
}

double mean_cross_entropy(const Matrix& probs, const Matrix& targets) {
  double total = 0.0;
  for (Eigen::Index c = 0; c < probs.cols(); ++c) {
    for (Eigen::Index k = 0; k < probs.rows(); ++k) {
      const double t = targets(k, c);
      if (t > 0.0) total -= t * std::log(std::max(probs(k, c), 1e-300));
    }
  }
  return total / static_cast<double>(probs.cols());
}

Matrix rule_matrix(std::span<const TrainingSample> data) {
  Matrix x(static_cast<Eigen::Index>(rules::kRuleCount), static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t k = 0; k < rules::kRuleCount; ++k) {
      x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = data[i].r[k];
    }
  }
  return x;
}

Matrix target_matrix(std::span<const TrainingSample> data, int n) {
  Matrix p(n, static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (static_cast<int>(data[i].p.size()) != n) {
      throw InvalidInput("sample " + std::to_string(i) + " has " +
                         std::to_string(data[i].p.size()) + " bins, expected " + std::to_string(n));
    }
    for (int k = 0; k < n; ++k) p(k, static_cast<Eigen::Index>(i)) = data[i].p[static_cast<std::size_t>(k)];
  }
  return p;
}

}  // namespace

Mlp::Mlp(std::vector<int> d, std::uint64_t seed) : dims(std::move(d)) {
  if (dims.size() < 2) throw InvalidInput("network needs an input and an output layer");
  for (int w : dims) {
    if (w < 1) throw InvalidInput("layer widths must be positive");
  }
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const double scale = std::sqrt(2.0 / dims[l]);
    Matrix w(dims[l + 1], dims[l]);
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = scale * rng.normal();
    }
    weights.push_back(std::move(w));
    biases.push_back(Vector::Zero(dims[l + 1]));
  }
}

Matrix Mlp::forward(const Matrix& x) const {
  Matrix a = x;
  for (std::size_t l = 0; l < layers(); ++l) {
    Matrix z = weights[l] * a;
    z.colwise() += biases[l];
    if (l + 1 < layers()) {
      a = z.cwiseMax(0.0);
    } else {
      a = softmax(z);
    }
  }
  return a;
}

Gradients backprop(const Mlp& net, const Matrix& inputs, const Matrix& targets,
                   const std::vector<Matrix>* masks) {
  const std::size_t L = net.layers();
  const double batch = static_cast<double>(inputs.cols());
  // activations[l] is the input to layer l (after dropout).
  std::vector<Matrix> activations(L);
  std::vector<Matrix> pre(L);
  Matrix a = inputs;
  for (std::size_t l = 0; l < L; ++l) {
    activations[l] = a;
    pre[l] = net.weights[l] * a;
    pre[l].colwise() += net.biases[l];
    if (l + 1 < L) {
      a = pre[l].cwiseMax(0.0);
      if (masks) a = a.cwiseProduct((*masks)[l]);
    }
  }
  const Matrix probs = softmax(pre[L - 1]);

  Gradients g;
  g.loss = mean_cross_entropy(probs, targets);
  g.weights.resize(L);
  g.biases.resize(L);
  // d(loss)/d(logits) for softmax + cross-entropy with normalized targets.
  Matrix delta = (probs - targets) / batch;
  for (std::size_t l = L; l-- > 0;) {
    g.weights[l].noalias() = delta * activations[l].transpose();
    g.biases[l] = delta.rowwise().sum();
    if (l == 0) break;
    Matrix back = net.weights[l].transpose() * delta;
    if (masks) back = back.cwiseProduct((*masks)[l - 1]);
    delta = back.cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
  }
  return g;
}

double cross_entropy(const Mlp& net, const Matrix& inputs, const Matrix& targets) {
  return mean_cross_entropy(net.forward(inputs), targets);
}

void Hyper::validate() const {
  if (batch < 1) throw InvalidInput("batch size must be positive");
  if (!(lr > 0.0) || !std::isfinite(lr)) throw InvalidInput("learning rate must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw InvalidInput("dropout must lie in [0, 1)");
  if (epochs < 0) throw InvalidInput("epochs must be non-negative");
  for (int h : hidden) {
    if (h < 1) throw InvalidInput("hidden widths must be positive");
  }
}

std::string_view to_string(AnchorMode mode) {
  return mode == AnchorMode::Quantile ? "quantile" : "absolute";
}

std::optional<AnchorMode> parse_anchor_mode(std::string_view text) {
  if (text == "quantile") return AnchorMode::Quantile;
  if (text == "absolute") return AnchorMode::Absolute;
  return std::nullopt;
}

std::string_view to_string(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Medium: return "medium";
    case Difficulty::Hard: return "hard";
    case Difficulty::None: return "none";
  }
  return "none";
}

std::optional<Difficulty> parse_difficulty(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "easy") return Difficulty::Easy;
  if (t == "medium") return Difficulty::Medium;
  if (t == "hard") return Difficulty::Hard;
  if (t == "none") return Difficulty::None;
  return std::nullopt;
}

Anchors difficulty_anchors(std::span<const double> entropies, AnchorMode mode, double h_max) {
  if (entropies.empty()) throw EmptyInput("no entropies to anchor");
  std::vector<double> h(entropies.begin(), entropies.end());
  std::sort(h.begin(), h.end());
  const double overall = std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(h.size());
  std::array<double, 3> sum{};
  std::array<std::size_t, 3> count{};
  for (std::size_t i = 0; i < h.size(); ++i) {
    int section;
    if (mode == AnchorMode::Quantile) {
      const double q = static_cast<double>(i) / static_cast<double>(h.size());
      section = q < 0.4 ? 0 : (q < 0.8 ? 1 : 2);
    } else {
      if (!(h_max > 0.0)) throw InvalidInput("absolute anchors need a positive H_max");
      const double q = h[i] / h_max;
      section = q < 0.4 ? 0 : (q < 0.8 ? 1 : 2);
    }
    sum[static_cast<std::size_t>(section)] += h[i];
    ++count[static_cast<std::size_t>(section)];
  }
  auto mean = [&](int s) {
    const auto k = static_cast<std::size_t>(s);
    return count[k] ? sum[k] / static_cast<double>(count[k]) : overall;
  };
  return {mean(0), mean(1), mean(2)};
}

double expected_value(const ValueDistribution& p) {
  const double n = static_cast<double>(p.size());
  double e = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) e += p[k] * (static_cast<double>(k) + 0.5) / n;
  return e;
}

double entropy(const ValueDistribution& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double difficulty_score(double h_t, Difficulty d, const Anchors& anchors, double h_max) {
  switch (d) {
    case Difficulty::Easy: return h_max - std::abs(h_t - anchors.low);
    case Difficulty::Medium: return h_max - std::abs(h_t - anchors.med);
    case Difficulty::Hard: return h_max - std::abs(h_t - anchors.high);
    case Difficulty::None: return 0.0;
  }
  return 0.0;
}

SurrogateModel::SurrogateModel(Mlp net, Hyper hyper, Anchors anchors, AnchorMode mode,
                               std::vector<double> loss_curve)
    : net_(std::move(net)),
      hyper_(std::move(hyper)),
      anchors_(anchors),
      mode_(mode),
      loss_curve_(std::move(loss_curve)) {
  if (net_.dims.empty() || net_.dims.front() != static_cast<int>(rules::kRuleCount)) {
    throw InvalidInput("surrogate input width must equal the rule count");
  }
}

double SurrogateModel::h_max() const { return std::log(static_cast<double>(bins())); }

ValueDistribution SurrogateModel::predict(const rules::RuleVector& r) const {
  Matrix x(static_cast<Eigen::Index>(r.size()), 1);
  for (std::size_t k = 0; k < r.size(); ++k) x(static_cast<Eigen::Index>(k), 0) = r[k];
  const Matrix out = net_.forward(x);
  return ValueDistribution(out.data(), out.data() + out.size());
}

nlohmann::json SurrogateModel::to_json() const {
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json biases = nlohmann::json::array();
  for (std::size_t l = 0; l < net_.layers(); ++l) {
    const Matrix& w = net_.weights[l];
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      std::vector<double> row(static_cast<std::size_t>(w.cols()));
      for (Eigen::Index c = 0; c < w.cols(); ++c) row[static_cast<std::size_t>(c)] = w(r, c);
      rows.push_back(std::move(row));
    }
    weights.push_back(std::move(rows));
    const Vector& b = net_.biases[l];
    biases.push_back(std::vector<double>(b.data(), b.data() + b.size()));
  }
  return {{"dims", net_.dims},
          {"n", bins()},
          {"weights", std::move(weights)},
          {"biases", std::move(biases)},
          {"anchors",
           {{"low", anchors_.low}, {"med", anchors_.med}, {"high", anchors_.high},
            {"mode", std::string(to_string(mode_))}}},
          {"H_max", h_max()},
          {"hyper",
           {{"hidden", hyper_.hidden},
            {"batch", hyper_.batch},
            {"lr", hyper_.lr},
            {"dropout", hyper_.dropout},
            {"epochs", hyper_.epochs},
            {"seed", hyper_.seed}}},
          {"train_loss_curve", loss_curve_}};
}

SurrogateModel SurrogateModel::from_json(const nlohmann::json& j) {
  try {
    Mlp net;
    net.dims = j.at("dims").get<std::vector<int>>();
    const auto& weights = j.at("weights");
    const auto& biases = j.at("biases");
    if (net.dims.size() < 2 || weights.size() + 1 != net.dims.size() ||
        biases.size() != weights.size()) {
      throw InvalidInput("model layer counts disagree");
    }
    for (std::size_t l = 0; l < weights.size(); ++l) {
      const int rows = net.dims[l + 1];
      const int cols = net.dims[l];
      if (weights[l].size() != static_cast<std::size_t>(rows)) throw InvalidInput("weight rows disagree with dims");
      Matrix w(rows, cols);
      for (int r = 0; r < rows; ++r) {
        const auto row = weights[l][static_cast<std::size_t>(r)].get<std::vector<double>>();
        if (row.size() != static_cast<std::size_t>(cols)) throw InvalidInput("weight columns disagree with dims");
        for (int c = 0; c < cols; ++c) {
          if (!std::isfinite(row[static_cast<std::size_t>(c)])) throw InvalidInput("non-finite weight");
          w(r, c) = row[static_cast<std::size_t>(c)];
        }
      }
      const auto b = biases[l].get<std::vector<double>>();
      if (b.size() != static_cast<std::size_t>(rows)) throw InvalidInput("bias length disagrees with dims");
      net.weights.push_back(std::move(w));
      net.biases.push_back(Eigen::Map<const Vector>(b.data(), rows));
    }
    Hyper hyper;
    if (j.contains("hyper")) {
      const auto& h = j.at("hyper");
      hyper.hidden = h.value("hidden", hyper.hidden);
      hyper.batch = h.value("batch", hyper.batch);
      hyper.lr = h.value("lr", hyper.lr);
      hyper.dropout = h.value("dropout", hyper.dropout);
      hyper.epochs = h.value("epochs", hyper.epochs);
      hyper.seed = h.value("seed", hyper.seed);
    }
    const auto& a = j.at("anchors");
    const auto mode = parse_anchor_mode(a.value("mode", std::string("quantile")));
    if (!mode) throw InvalidInput("unknown anchor mode");
    return SurrogateModel(std::move(net), hyper,
                          {a.at("low").get<double>(), a.at("med").get<double>(), a.at("high").get<double>()},
                          *mode, j.value("train_loss_curve", std::vector<double>{}));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed model: ") + e.what());
  }
}

void SurrogateModel::save(const std::filesystem::path& path) const {
  io::write_json_file(path, to_json(), -1);
}

SurrogateModel SurrogateModel::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ModelMissing("no model at " + path.string());
  return from_json(io::read_json_file(path));
}

SurrogateModel train(std::span<const TrainingSample> dataset, const Hyper& hyper, AnchorMode mode,
                     const EpochCallback& on_epoch) {
  hyper.validate();
  if (dataset.empty()) throw EmptyInput("training dataset is empty");
  const int n = static_cast<int>(dataset.front().p.size());
  const Matrix x = rule_matrix(dataset);
  const Matrix p = target_matrix(dataset, n);

  std::vector<int> dims{static_cast<int>(rules::kRuleCount)};
  dims.insert(dims.end(), hyper.hidden.begin(), hyper.hidden.end());
  dims.push_back(n);
  Mlp net(dims, derive_seed(hyper.seed, 0));
  Rng shuffle_rng(derive_seed(hyper.seed, 1));
  Rng dropout_rng(derive_seed(hyper.seed, 2));

  auto full_loss = [&](int epoch) {
    const double loss = cross_entropy(net, x, p);
    if (!std::isfinite(loss)) {
      throw NonFiniteLoss("loss became non-finite after epoch " + std::to_string(epoch));
    }
    return loss;
  };
  std::vector<double> curve{full_loss(0)};

  std::vector<Eigen::Index> order(dataset.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const double keep = 1.0 - hyper.dropout;
  for (int epoch = 1; epoch <= hyper.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(hyper.batch)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(hyper.batch));
      const auto cols = static_cast<Eigen::Index>(end - start);
      Matrix xb(x.rows(), cols);
      Matrix pb(p.rows(), cols);
      for (Eigen::Index c = 0; c < cols; ++c) {
        xb.col(c) = x.col(order[start + static_cast<std::size_t>(c)]);
        pb.col(c) = p.col(order[start + static_cast<std::size_t>(c)]);
      }
      std::vector<Matrix> masks;
      if (hyper.dropout > 0.0) {
        for (std::size_t l = 1; l + 1 < dims.size(); ++l) {
          Matrix m(dims[l], cols);
          for (Eigen::Index c = 0; c < cols; ++c) {
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
              m(r, c) = dropout_rng.uniform() < keep ? 1.0 / keep : 0.0;
            }
          }
          masks.push_back(std::move(m));
        }
      }
      const Gradients g = backprop(net, xb, pb, masks.empty() ? nullptr : &masks);
      if (!std::isfinite(g.loss)) {
        throw NonFiniteLoss("batch loss became non-finite in epoch " + std::to_string(epoch) +
                            " at offset " + std::to_string(start));
      }
      for (std::size_t l = 0; l < net.layers(); ++l) {
        net.weights[l] -= hyper.lr * g.weights[l];
        net.biases[l] -= hyper.lr * g.biases[l];
      }
    }
    curve.push_back(full_loss(epoch));
    if (on_epoch) on_epoch(epoch, curve.back());
  }

  const Matrix pred = net.forward(x);
  std::vector<double> entropies(dataset.size());
  for (Eigen::Index c = 0; c < pred.cols(); ++c) {
    double h = 0.0;
    for (Eigen::Index k = 0; k < pred.rows(); ++k) {
      if (pred(k, c) > 0.0) h -= pred(k, c) * std::log(pred(k, c));
    }
    entropies[static_cast<std::size_t>(c)] = h;
  }
  const Anchors anchors = difficulty_anchors(entropies, mode, std::log(static_cast<double>(n)));
  return SurrogateModel(std::move(net), hyper, anchors, mode, std::move(curve));
}

}  // namespace cuecoach::surrogate
