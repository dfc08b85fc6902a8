#include "glee/reconstruction.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "glee/textio.hpp"

namespace glee {

namespace {

int gram_block_rows(int n) {
  return std::max(1, std::min(n, (1 << 22) / std::max(1, n)));
}

struct ScoredPair {
  double dot;
  int i, j;
  bool operator<(const ScoredPair& o) const {
    if (dot != o.dot) return dot < o.dot;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

}  // namespace

ReconstructionResult reconstruct(const Embedding& e,
                                 const ThresholdEstimate& theta) {
  const int n = e.node_count();
  const std::uint64_t total = pair_count(n);
  const int block = gram_block_rows(n);

  std::uint64_t predicted = 0;
  for (int i0 = 0; i0 < n; i0 += block) {
    const int rows = std::min(block, n - i0);
    const Eigen::MatrixXd m =
        e.coords.middleRows(i0, rows) * e.coords.transpose();
    for (int r = 0; r < rows; ++r)
      for (int j = i0 + r + 1; j < n; ++j)
        if (m(r, j) < theta.theta) ++predicted;
  }

  const std::uint64_t cap =
      std::max<std::uint64_t>(10 * predicted, 100000);
  const bool keep_all = total <= cap;

  std::vector<ScoredPair> kept;
  kept.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(
      total, keep_all ? total : 4 * cap + 1)));
  const auto prune = [&] {
    if (kept.size() <= static_cast<std::size_t>(4 * cap)) return;
    std::nth_element(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(cap),
                     kept.end());
    kept.resize(static_cast<std::size_t>(cap));
  };

  for (int i0 = 0; i0 < n; i0 += block) {
    const int rows = std::min(block, n - i0);
    const Eigen::MatrixXd m =
        e.coords.middleRows(i0, rows) * e.coords.transpose();
    for (int r = 0; r < rows; ++r) {
      const int i = i0 + r;
      for (int j = i + 1; j < n; ++j) kept.push_back({m(r, j), i, j});
    }
    if (!keep_all) prune();
  }
  if (!keep_all && kept.size() > static_cast<std::size_t>(cap)) {
    std::nth_element(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(cap),
                     kept.end());
    kept.resize(static_cast<std::size_t>(cap));
  }
  std::sort(kept.begin(), kept.end());

  ReconstructionResult result;
  result.theta_used = theta;
  result.predicted_count = static_cast<std::size_t>(predicted);
  result.ranked_pairs.reserve(kept.size());
  result.ranked_dots.reserve(kept.size());
  for (const auto& sp : kept) {
    result.ranked_pairs.emplace_back(sp.i, sp.j);
    result.ranked_dots.push_back(sp.dot);
  }
  return result;
}

double reconstruction_loss(const Embedding& e, const Graph& g,
                           const ThresholdEstimate& theta) {
  if (e.node_count() != g.node_count())
    throw std::invalid_argument(
        "reconstruction_loss: embedding has " +
        std::to_string(e.node_count()) + " nodes, graph has " +
        std::to_string(g.node_count()));
  const int n = g.node_count();
  const int block = gram_block_rows(n);
  std::uint64_t wrong = 0;
  for (int i0 = 0; i0 < n; i0 += block) {
    const int rows = std::min(block, n - i0);
    const Eigen::MatrixXd m =
        e.coords.middleRows(i0, rows) * e.coords.transpose();
    for (int r = 0; r < rows; ++r) {
      const int i = i0 + r;
      for (int j = i + 1; j < n; ++j) {
        const bool predicted = m(r, j) < theta.theta;
        if (predicted != g.has_edge(i, j)) ++wrong;
      }
    }
  }
  return 2.0 * static_cast<double>(wrong);
}

EvalReport precision_at_k(const ReconstructionResult& result, const Graph& g,
                          const std::vector<std::uint64_t>& ks) {
  EvalReport report;
  report.experiment = "precision_at_k";
  report.params = {
      {"theta", format_double(result.theta_used.theta)},
      {"estimator", theta_method_name(result.theta_used.method)},
  };

  const std::uint64_t total = pair_count(g.node_count());
  for (const std::uint64_t k : ks) {
    if (k < 1 || k > total)
      throw std::invalid_argument("precision_at_k: k = " + std::to_string(k) +
                                  " outside [1, C(n,2)]");
    if (k > result.ranked_pairs.size())
      throw std::invalid_argument(
          "precision_at_k: k = " + std::to_string(k) +
          " exceeds the ranked list (truncated to " +
          std::to_string(result.ranked_pairs.size()) + ")");
  }

  std::uint64_t hits = 0;
  std::size_t pos = 0;
  std::vector<std::uint64_t> sorted_ks = ks;
  std::sort(sorted_ks.begin(), sorted_ks.end());
  std::vector<std::pair<std::uint64_t, double>> precisions;
  for (const std::uint64_t k : sorted_ks) {
    while (pos < k) {
      const auto& [i, j] = result.ranked_pairs[pos];
      if (g.has_edge(i, j)) ++hits;
      ++pos;
    }
    precisions.emplace_back(
        k, static_cast<double>(hits) / static_cast<double>(k));
  }
  // Report points in the caller's k order.
  for (const std::uint64_t k : ks) {
    const auto it = std::find_if(precisions.begin(), precisions.end(),
                                 [k](const auto& p) { return p.first == k; });
    report.series.push_back(make_series_point(static_cast<double>(k), {it->second}));
  }
  return report;
}

}  // namespace glee
