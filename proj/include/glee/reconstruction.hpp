#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "glee/embedding.hpp"
#include "glee/graph.hpp"
#include "glee/report.hpp"
#include "glee/threshold.hpp"

namespace glee {

/// Ranked edge prediction. ranked_pairs is sorted ascending by dot product
/// (most negative first, ties in (i, j) order); the first predicted_count
/// entries are exactly the pairs with dot product below theta_used.
struct ReconstructionResult {
  std::vector<std::pair<int, int>> ranked_pairs;
  std::vector<double> ranked_dots;
  std::size_t predicted_count = 0;
  ThresholdEstimate theta_used;

  std::span<const std::pair<int, int>> predicted_edges() const {
    return {ranked_pairs.data(), predicted_count};
  }
};

/// Scores every node pair by its embedding dot product and thresholds at
/// theta. To bound memory on large graphs the ranked list keeps only the
/// max(10 * predicted_count, 100000) most negative pairs; the predicted
/// prefix always survives the cut.
ReconstructionResult reconstruct(const Embedding& e,
                                 const ThresholdEstimate& theta);

/// Squared Frobenius distance between the true and predicted Laplacian off-
/// diagonal parts: 2 * (false positives + false negatives). Throws
/// std::invalid_argument when embedding and graph sizes differ.
double reconstruction_loss(const Embedding& e, const Graph& g,
                           const ThresholdEstimate& theta);

/// Fraction of the top-k ranked pairs that are true edges, for each k.
/// Every k must be positive and within the ranked list. Series points carry
/// x = k, mean = precision.
EvalReport precision_at_k(const ReconstructionResult& result, const Graph& g,
                          const std::vector<std::uint64_t>& ks);

}  // namespace glee
