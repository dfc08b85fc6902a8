#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "glee/embedding.hpp"
#include "glee/graph.hpp"

namespace glee {

/// Pairwise dot products s_i . s_j over i < j, or a uniform subsample.
struct DotProductSample {
  std::vector<double> values;
  std::uint64_t pair_count = 0;  // total number of node pairs
  bool sampled = false;
};

enum class ThetaMethod { constant, kde, gmm, oracle };

std::string theta_method_name(ThetaMethod m);
ThetaMethod theta_method_from_name(const std::string& name);

/// Edge-decision threshold in [-1, 0] with estimator provenance. fallback is
/// set when an estimator could not produce a usable value and returned the
/// constant instead; diagnostics carry estimator-specific values in a fixed
/// order for deterministic reporting.
struct ThresholdEstimate {
  double theta = -0.5;
  ThetaMethod method = ThetaMethod::constant;
  bool fallback = false;
  std::vector<std::pair<std::string, double>> diagnostics;
};

inline constexpr std::uint64_t kDefaultMaxPairs = 2'000'000;

/// All C(n,2) dot products when they fit under max_pairs, otherwise a
/// uniform without-replacement sample of max_pairs of them (deterministic
/// per seed). Full enumeration lists pairs in (i, j) lexicographic order.
DotProductSample collect_dot_products(const Embedding& e,
                                      std::uint64_t max_pairs = kDefaultMaxPairs,
                                      std::uint64_t seed = 0);

/// The constant heuristic: -0.5, the midpoint of the two ideal dot-product
/// values (-1 for edges, 0 for non-edges).
ThresholdEstimate theta_constant();

/// Box-kernel density minimum between the two modes of the dot-product
/// distribution, on a 401-point grid over [-1, 0] with local refinement;
/// window half-width is h/2. Falls back to the constant when the
/// distribution shows a single cluster. Throws std::invalid_argument on an
/// empty sample or h outside (0, 1).
ThresholdEstimate theta_kde(const DotProductSample& sample, double h = 0.3);

/// Two-component Gaussian mixture fit of the dot products (EM with mean
/// priors at -1 and 0 of strength 10 pseudo-observations), component weights
/// replaced by w1 = m_hat / pair_count, threshold taken as the root of
/// w1 f1(t) = w2 f2(t) in (-1, 0) solved as a quadratic in closed form.
/// Deterministic per seed (the seed drives the right-cluster subsample).
/// Falls back to the constant when no usable root exists or the sample
/// cannot support a two-component fit.
ThresholdEstimate theta_gmm(const DotProductSample& sample, std::uint64_t m_hat,
                            std::uint64_t seed);

/// Exact minimizer of the reconstruction loss over theta, found by sweeping
/// the midpoints of consecutive sorted dot products plus the interval
/// endpoints. Requires the true graph; intended for tests and benchmarks.
ThresholdEstimate theta_oracle(const Embedding& e, const Graph& g);

/// Estimated edge count: the number of sampled dot products below -0.5,
/// scaled up to the full pair population when the sample is partial.
std::uint64_t m_hat_default(const DotProductSample& sample);

/// Alternative edge-count heuristic n * log(n).
std::uint64_t m_hat_nlogn(int n);

std::uint64_t pair_count(int n);

/// Inverse of the lexicographic pair enumeration: maps a linear index in
/// [0, C(n,2)) to the pair (i, j) with i < j.
std::pair<int, int> unrank_pair(std::uint64_t k, int n);

}  // namespace glee
