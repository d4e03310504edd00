#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cuecoach/rules/rules.hpp"
#include "cuecoach/surrogate/dataset.hpp"

namespace cuecoach::harness {

struct KMeansResult {
  std::vector<rules::RuleVector> centroids;
  std::vector<int> assignment;
  // Within-cluster sum of squares after each assignment step.
  std::vector<double> wcss;
  int iterations = 0;
};

/// Lloyd iterations from a seeded k-means++ start; stops after 100
/// iterations or when no centroid moves more than 1e-6.
KMeansResult kmeans(std::span<const rules::RuleVector> points, int k, std::uint64_t seed,
                    int max_iterations = 100, double tolerance = 1e-6);

struct DiverseSample {
  int k = 0;
  std::vector<int> assignment;    // cluster per dataset index
  std::vector<std::size_t> selected;  // dataset indices, grouped by cluster
};

/// Clusters rule vectors and draws up to `per_cluster` members uniformly
/// from every nonempty cluster. Throws DatasetTooSmall when the dataset has
/// fewer than k samples.
DiverseSample kmeans_diverse_sample(std::span<const surrogate::TrainingSample> dataset, int k,
                                    int per_cluster, std::uint64_t seed);

}  // namespace cuecoach::harness
