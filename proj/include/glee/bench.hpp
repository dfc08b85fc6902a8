#pragma once

#include <cstdint>
#include <vector>

#include "glee/generators.hpp"
#include "glee/report.hpp"
#include "glee/threshold.hpp"

namespace glee {

struct BenchOptions {
  std::uint64_t max_pairs = kDefaultMaxPairs;
  double bandwidth = 0.3;
};

/// Threshold-estimator comparison across random-graph models. For each
/// (model, trial) one graph is generated; for each dimension it is embedded
/// once and reconstructed with each of the constant, kde and gmm thresholds;
/// the recorded value is the Frobenius distance between true and predicted
/// adjacency, sqrt(2 * (FP + FN)).
///
/// Returns one report per (model, estimator) with a series point per
/// dimension. Each point also carries the per-(model, dimension) min-max
/// normalization of the three estimator means (all 0 when the means tie).
/// Deterministic given the master seed; trials run in parallel.
std::vector<EvalReport> estimator_benchmark(
    const std::vector<GeneratorSpec>& models, const std::vector<int>& dims,
    int trials, std::uint64_t seed, const BenchOptions& options = {});

}  // namespace glee
