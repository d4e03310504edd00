#include "cuecoach/harness/diverse.hpp"

#include <cmath>
#include <limits>

#include "cuecoach/common/error.hpp"
#include "cuecoach/common/random.hpp"

namespace cuecoach::harness {

namespace {

double dist2(const rules::RuleVector& a, const rules::RuleVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace

KMeansResult kmeans(std::span<const rules::RuleVector> points, int k, std::uint64_t seed, int max_iterations,
                    double tolerance) {
  if (k < 1) throw InvalidInput("k-means needs k >= 1");
  if (points.size() < static_cast<std::size_t>(k)) {
    throw DatasetTooSmall("k-means with k=" + std::to_string(k) + " over " + std::to_string(points.size()) +
                          " points");
  }
  const std::size_t n = points.size();
  Rng rng(seed);
  KMeansResult out;

  // k-means++ seeding.
  out.centroids.push_back(points[rng.below(n)]);
  std::vector<double> d2(n);
  while (out.centroids.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::numeric_limits<double>::infinity();
      for (const auto& c : out.centroids) d2[i] = std::min(d2[i], dist2(points[i], c));
      total += d2[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      for (pick = 0; pick + 1 < n; ++pick) {
        u -= d2[pick];
        if (u < 0.0 && d2[pick] > 0.0) break;
      }
    } else {
      pick = rng.below(n);
    }
    out.centroids.push_back(points[pick]);
  }

  out.assignment.assign(n, 0);
  for (int it = 0; it < max_iterations; ++it) {
    double wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < out.centroids.size(); ++c) {
        const double d = dist2(points[i], out.centroids[c]);
        if (d < best) {
          best = d;
          out.assignment[i] = static_cast<int>(c);
        }
      }
      wcss += best;
    }
    out.wcss.push_back(wcss);
    out.iterations = it + 1;

    std::vector<rules::RuleVector> next(out.centroids.size(), rules::RuleVector{});
    std::vector<std::size_t> count(out.centroids.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& c = next[static_cast<std::size_t>(out.assignment[i])];
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += points[i][j];
      ++count[static_cast<std::size_t>(out.assignment[i])];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < next.size(); ++c) {
      if (count[c] == 0) {
        next[c] = out.centroids[c];  // empty cluster keeps its centroid
        continue;
      }
      for (double& x : next[c]) x /= static_cast<double>(count[c]);
      shift = std::max(shift, std::sqrt(dist2(next[c], out.centroids[c])));
    }
    out.centroids = std::move(next);
    if (shift <= tolerance) break;
  }
  return out;
}

DiverseSample kmeans_diverse_sample(std::span<const surrogate::TrainingSample> dataset, int k, int per_cluster,
                                    std::uint64_t seed) {
  if (per_cluster < 1) throw InvalidInput("per_cluster must be at least 1");
  std::vector<rules::RuleVector> points;
  points.reserve(dataset.size());
  for (const auto& s : dataset) points.push_back(s.r);
  const auto km = kmeans(points, k, derive_seed(seed, 0));

  DiverseSample out;
  out.k = k;
  out.assignment = km.assignment;
  Rng rng(derive_seed(seed, 1));
  for (int c = 0; c < k; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (km.assignment[i] == c) members.push_back(i);
    }
    rng.shuffle(members);
    const std::size_t take = std::min(members.size(), static_cast<std::size_t>(per_cluster));
    out.selected.insert(out.selected.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

}  // namespace cuecoach::harness
