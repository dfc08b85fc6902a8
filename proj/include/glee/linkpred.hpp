#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glee/embedding.hpp"
#include "glee/graph.hpp"
#include "glee/report.hpp"
#include "glee/threshold.hpp"

namespace glee {

/// Connected spanning train graph plus the held-out test edges.
struct SplitDataset {
  Graph g_train;
  std::vector<std::pair<int, int>> e_test;  // sorted
  std::uint64_t seed = 0;
};

/// Splits the edges of a connected graph: a uniform spanning tree seeds the
/// train set (keeping it connected and spanning), then random remaining
/// edges fill it up to round(train_fraction * m). Deterministic per seed.
/// Throws std::invalid_argument when g is disconnected, the fraction is not
/// in (0, 1), or the target train size is below n-1.
SplitDataset split_graph(const Graph& g, double train_fraction,
                         std::uint64_t seed);

/// Estimated neighborhood of a node: the nodes whose embedding dot product
/// with it falls below theta, their centroid, and the degree estimate
/// |s_node|^2.
struct ApproxNeighborhood {
  int node = -1;
  std::vector<int> members;
  Eigen::RowVectorXd centroid;  // defined only when members is nonempty
  double deg_hat = 0.0;
};

ApproxNeighborhood approx_neighborhood(const Embedding& e, int node,
                                       const ThresholdEstimate& theta);

/// Number of edges between two disjoint node sets, read off the embedding:
/// -|v1||v2| * (centroid(v1) . centroid(v2)). Exact at full dimension.
/// Throws std::invalid_argument on empty or overlapping sets.
double centroid_edge_count(const Embedding& e, const std::vector<int>& v1,
                           const std::vector<int>& v2);

/// Approximate common-neighbor count of (i, j): -deg_hat(side) *
/// (centroid of N_hat(side)) . s_other, where side is the endpoint with the
/// smaller estimated neighborhood. 0 when that neighborhood is empty. With
/// average_both_sides the two one-sided forms are averaged instead.
double cn_score(const Embedding& e, int i, int j,
                const ThresholdEstimate& theta,
                bool average_both_sides = false);

/// Approximate count of length-3 walks between i and j:
/// -deg_hat(i) deg_hat(j) C_i . C_j + sum of deg_hat(k) over common
/// estimated neighbors k. 0 when either neighborhood is empty.
double l3_score(const Embedding& e, int i, int j,
                const ThresholdEstimate& theta);

/// Per-node neighborhoods precomputed once; scores match the free functions
/// exactly.
class NeighborhoodIndex {
 public:
  NeighborhoodIndex(const Embedding& e, const ThresholdEstimate& theta);

  const ApproxNeighborhood& of(int v) const { return hoods_[static_cast<std::size_t>(v)]; }
  double cn_score(int i, int j, bool average_both_sides = false) const;
  double l3_score(int i, int j) const;

 private:
  const Embedding* e_;
  std::vector<ApproxNeighborhood> hoods_;
  std::vector<double> deg_hat_;
};

/// Mann-Whitney AUC: P(pos > neg) + 0.5 P(pos = neg) over all cross pairs.
/// Throws std::invalid_argument when either side is empty.
double auc(std::span<const double> scores_pos, std::span<const double> scores_neg);

enum class LinkPredMethod { cn, l3, le_distance };

std::string linkpred_method_name(LinkPredMethod m);
LinkPredMethod linkpred_method_from_name(const std::string& name);

struct LinkPredOptions {
  double train_fraction = 0.75;
  ThetaMethod estimator = ThetaMethod::kde;  // threshold for the neighborhoods
  double bandwidth = 0.3;
  std::uint64_t max_pairs = kDefaultMaxPairs;
  bool cn_average_both_sides = false;
};

/// Per trial: split, embed the train graph (GLEE for cn/l3, LE for
/// le_distance), score the held-out edges against an equal-sized uniform
/// sample of non-edges of g, and compute AUC. Trials run in parallel;
/// the report carries one series point at x = d with per-trial AUC raw
/// values. Deterministic per seed.
EvalReport link_prediction_experiment(const Graph& g, int d,
                                      LinkPredMethod method, int trials,
                                      std::uint64_t seed,
                                      const LinkPredOptions& options = {});

}  // namespace glee
