#include "glee/linkpred.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "glee/parallel.hpp"
#include "glee/rng.hpp"
#include "glee/spectral.hpp"
#include "glee/textio.hpp"

namespace glee {

SplitDataset split_graph(const Graph& g, double train_fraction,
                         std::uint64_t seed) {
  if (!g.connected())
    throw std::invalid_argument("split_graph: graph must be connected");
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0))
    throw std::invalid_argument(
        "split_graph: train_fraction must lie in (0, 1)");
  const int n = g.node_count();
  const std::uint64_t m = g.edge_count();
  const std::uint64_t target = static_cast<std::uint64_t>(
      std::llround(train_fraction * static_cast<double>(m)));
  if (target < static_cast<std::uint64_t>(n) - 1)
    throw std::invalid_argument(
        "split_graph: train_fraction keeps only " + std::to_string(target) +
        " edges, below the n-1 needed for a spanning connected subgraph");

  Rng rng(derive_seed(seed, stream::split));

  // Uniform spanning tree by loop-erased random walks.
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<int> walk_next(static_cast<std::size_t>(n), -1);
  in_tree[0] = 1;
  std::set<std::pair<int, int>> tree_edges;
  for (int v = 0; v < n; ++v) {
    if (in_tree[static_cast<std::size_t>(v)]) continue;
    int u = v;
    while (!in_tree[static_cast<std::size_t>(u)]) {
      const auto& nb = g.neighbors(u);
      const int w = nb[static_cast<std::size_t>(
          rng.next_below(static_cast<std::uint64_t>(nb.size())))];
      walk_next[static_cast<std::size_t>(u)] = w;
      u = w;
    }
    u = v;
    while (!in_tree[static_cast<std::size_t>(u)]) {
      in_tree[static_cast<std::size_t>(u)] = 1;
      const int w = walk_next[static_cast<std::size_t>(u)];
      tree_edges.emplace(std::min(u, w), std::max(u, w));
      u = w;
    }
  }

  std::vector<std::pair<int, int>> rest;
  rest.reserve(m - tree_edges.size());
  for (const auto& edge : g.edges())
    if (!tree_edges.contains(edge)) rest.push_back(edge);
  rng.shuffle(rest);

  std::vector<std::pair<int, int>> train(tree_edges.begin(), tree_edges.end());
  std::size_t take = static_cast<std::size_t>(target) - train.size();
  SplitDataset out;
  out.seed = seed;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (i < take)
      train.push_back(rest[i]);
    else
      out.e_test.push_back(rest[i]);
  }
  std::sort(out.e_test.begin(), out.e_test.end());
  out.g_train = Graph(n, std::move(train));
  return out;
}

ApproxNeighborhood approx_neighborhood(const Embedding& e, int node,
                                       const ThresholdEstimate& theta) {
  ApproxNeighborhood hood;
  hood.node = node;
  const Eigen::VectorXd dots = e.coords * e.coords.row(node).transpose();
  hood.deg_hat = e.coords.row(node).squaredNorm();
  Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(e.dim());
  for (int k = 0; k < e.node_count(); ++k) {
    if (k == node || dots(k) >= theta.theta) continue;
    hood.members.push_back(k);
    sum += e.coords.row(k);
  }
  if (!hood.members.empty())
    hood.centroid = sum / static_cast<double>(hood.members.size());
  return hood;
}

double centroid_edge_count(const Embedding& e, const std::vector<int>& v1,
                           const std::vector<int>& v2) {
  if (v1.empty() || v2.empty())
    throw std::invalid_argument("centroid_edge_count: empty node set");
  std::unordered_set<int> seen(v1.begin(), v1.end());
  for (const int v : v2)
    if (seen.contains(v))
      throw std::invalid_argument("centroid_edge_count: sets overlap at node " +
                                  std::to_string(v));
  Eigen::RowVectorXd c1 = Eigen::RowVectorXd::Zero(e.dim());
  Eigen::RowVectorXd c2 = Eigen::RowVectorXd::Zero(e.dim());
  for (const int v : v1) c1 += e.coords.row(v);
  for (const int v : v2) c2 += e.coords.row(v);
  c1 /= static_cast<double>(v1.size());
  c2 /= static_cast<double>(v2.size());
  return -static_cast<double>(v1.size()) * static_cast<double>(v2.size()) *
         c1.dot(c2);
}

namespace {

double one_sided_cn(const Embedding& e, const ApproxNeighborhood& side,
                    int other) {
  if (side.members.empty()) return 0.0;
  return -side.deg_hat * side.centroid.dot(e.coords.row(other));
}

double cn_from_hoods(const Embedding& e, const ApproxNeighborhood& hi,
                     const ApproxNeighborhood& hj, bool average_both_sides) {
  if (average_both_sides)
    return 0.5 * (one_sided_cn(e, hi, hj.node) + one_sided_cn(e, hj, hi.node));
  const bool use_i = hi.members.size() <= hj.members.size();
  const ApproxNeighborhood& side = use_i ? hi : hj;
  const int other = use_i ? hj.node : hi.node;
  return one_sided_cn(e, side, other);
}

double l3_from_hoods(const ApproxNeighborhood& hi, const ApproxNeighborhood& hj,
                     const std::vector<double>& deg_hat) {
  if (hi.members.empty() || hj.members.empty()) return 0.0;
  double score = -hi.deg_hat * hj.deg_hat * hi.centroid.dot(hj.centroid);
  // members lists are sorted ascending by construction
  auto a = hi.members.begin();
  auto b = hj.members.begin();
  while (a != hi.members.end() && b != hj.members.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      score += deg_hat[static_cast<std::size_t>(*a)];
      ++a;
      ++b;
    }
  }
  return score;
}

std::vector<double> all_deg_hat(const Embedding& e) {
  std::vector<double> out(static_cast<std::size_t>(e.node_count()));
  for (int k = 0; k < e.node_count(); ++k)
    out[static_cast<std::size_t>(k)] = e.coords.row(k).squaredNorm();
  return out;
}

}  // namespace

double cn_score(const Embedding& e, int i, int j,
                const ThresholdEstimate& theta, bool average_both_sides) {
  if (i == j) throw std::invalid_argument("cn_score: i == j");
  return cn_from_hoods(e, approx_neighborhood(e, i, theta),
                       approx_neighborhood(e, j, theta), average_both_sides);
}

double l3_score(const Embedding& e, int i, int j,
                const ThresholdEstimate& theta) {
  if (i == j) throw std::invalid_argument("l3_score: i == j");
  return l3_from_hoods(approx_neighborhood(e, i, theta),
                       approx_neighborhood(e, j, theta), all_deg_hat(e));
}

NeighborhoodIndex::NeighborhoodIndex(const Embedding& e,
                                     const ThresholdEstimate& theta)
    : e_(&e), deg_hat_(all_deg_hat(e)) {
  const int n = e.node_count();
  hoods_.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    hoods_[static_cast<std::size_t>(v)] = approx_neighborhood(e, v, theta);
}

double NeighborhoodIndex::cn_score(int i, int j,
                                   bool average_both_sides) const {
  if (i == j) throw std::invalid_argument("cn_score: i == j");
  return cn_from_hoods(*e_, of(i), of(j), average_both_sides);
}

double NeighborhoodIndex::l3_score(int i, int j) const {
  if (i == j) throw std::invalid_argument("l3_score: i == j");
  return l3_from_hoods(of(i), of(j), deg_hat_);
}

double auc(std::span<const double> scores_pos,
           std::span<const double> scores_neg) {
  if (scores_pos.empty() || scores_neg.empty())
    throw std::invalid_argument("auc: empty score list");
  struct Entry {
    double value;
    bool positive;
  };
  std::vector<Entry> all;
  all.reserve(scores_pos.size() + scores_neg.size());
  for (const double v : scores_pos) all.push_back({v, true});
  for (const double v : scores_neg) all.push_back({v, false});
  std::sort(all.begin(), all.end(),
            [](const Entry& a, const Entry& b) { return a.value < b.value; });

  // Average ranks across ties, then the Mann-Whitney statistic.
  double rank_sum_pos = 0.0;
  std::size_t t = 0;
  while (t < all.size()) {
    std::size_t u = t;
    while (u < all.size() && all[u].value == all[t].value) ++u;
    const double avg_rank = 0.5 * (static_cast<double>(t + 1) + static_cast<double>(u));
    for (std::size_t k = t; k < u; ++k)
      if (all[k].positive) rank_sum_pos += avg_rank;
    t = u;
  }
  const double p = static_cast<double>(scores_pos.size());
  const double q = static_cast<double>(scores_neg.size());
  return (rank_sum_pos - p * (p + 1.0) / 2.0) / (p * q);
}

std::string linkpred_method_name(LinkPredMethod m) {
  switch (m) {
    case LinkPredMethod::cn: return "cn";
    case LinkPredMethod::l3: return "l3";
    case LinkPredMethod::le_distance: return "le";
  }
  throw std::logic_error("unreachable");
}

LinkPredMethod linkpred_method_from_name(const std::string& name) {
  if (name == "cn") return LinkPredMethod::cn;
  if (name == "l3") return LinkPredMethod::l3;
  if (name == "le" || name == "le-distance") return LinkPredMethod::le_distance;
  throw std::invalid_argument("unknown link prediction method: '" + name + "'");
}

namespace {

// Uniform sample of `count` non-edges of g, deterministic per rng state.
std::vector<std::pair<int, int>> sample_non_edges(const Graph& g,
                                                  std::size_t count, Rng& rng) {
  const int n = g.node_count();
  const std::uint64_t total = pair_count(n);
  const std::uint64_t non_edges = total - g.edge_count();
  if (non_edges < count)
    throw std::runtime_error(
        "sample_non_edges: graph has only " + std::to_string(non_edges) +
        " non-edges, need " + std::to_string(count));

  std::vector<std::pair<int, int>> out;
  out.reserve(count);
  if (count * 2 >= non_edges) {
    // Dense regime: enumerate all non-edges and subsample.
    std::vector<std::pair<int, int>> pool;
    pool.reserve(static_cast<std::size_t>(non_edges));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!g.has_edge(i, j)) pool.emplace_back(i, j);
    for (const std::uint64_t k : rng.sample_indices(pool.size(), count))
      out.push_back(pool[static_cast<std::size_t>(k)]);
    return out;
  }

  std::set<std::pair<int, int>> chosen;
  while (chosen.size() < count) {
    const auto [a, b] = unrank_pair(rng.next_below(total), n);
    if (!g.has_edge(a, b)) chosen.emplace(a, b);
  }
  out.assign(chosen.begin(), chosen.end());
  return out;
}

}  // namespace

EvalReport link_prediction_experiment(const Graph& g, int d,
                                      LinkPredMethod method, int trials,
                                      std::uint64_t seed,
                                      const LinkPredOptions& options) {
  if (trials < 1)
    throw std::invalid_argument("link_prediction_experiment: trials < 1");
  if (!g.connected())
    throw std::invalid_argument(
        "link_prediction_experiment: graph must be connected");

  std::vector<double> aucs(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t trial_seed = derive_seed(seed, stream::trial, t);
    const SplitDataset split =
        split_graph(g, options.train_fraction, trial_seed);

    Embedding emb;
    ThresholdEstimate theta = theta_constant();
    if (method == LinkPredMethod::le_distance) {
      emb = le_embed(split.g_train, d);
    } else {
      emb = glee_embed(split.g_train, d, trial_seed);
      switch (options.estimator) {
        case ThetaMethod::constant:
          theta = theta_constant();
          break;
        case ThetaMethod::kde: {
          const auto sample =
              collect_dot_products(emb, options.max_pairs, trial_seed);
          theta = theta_kde(sample, options.bandwidth);
          break;
        }
        case ThetaMethod::gmm: {
          const auto sample =
              collect_dot_products(emb, options.max_pairs, trial_seed);
          theta = theta_gmm(sample, m_hat_default(sample), trial_seed);
          break;
        }
        case ThetaMethod::oracle:
          theta = theta_oracle(emb, split.g_train);
          break;
      }
    }

    Rng neg_rng(derive_seed(trial_seed, stream::negative_sample));
    const auto negatives = sample_non_edges(g, split.e_test.size(), neg_rng);

    std::vector<double> pos, neg;
    pos.reserve(split.e_test.size());
    neg.reserve(negatives.size());
    if (method == LinkPredMethod::le_distance) {
      const auto score = [&emb](const std::pair<int, int>& p) {
        return -(emb.coords.row(p.first) - emb.coords.row(p.second)).norm();
      };
      for (const auto& p : split.e_test) pos.push_back(score(p));
      for (const auto& p : negatives) neg.push_back(score(p));
    } else {
      const NeighborhoodIndex index(emb, theta);
      const auto score = [&](const std::pair<int, int>& p) {
        return method == LinkPredMethod::cn
                   ? index.cn_score(p.first, p.second,
                                    options.cn_average_both_sides)
                   : index.l3_score(p.first, p.second);
      };
      for (const auto& p : split.e_test) pos.push_back(score(p));
      for (const auto& p : negatives) neg.push_back(score(p));
    }
    aucs[t] = auc(pos, neg);
  });

  EvalReport report;
  report.experiment = "link_prediction";
  report.params = {
      {"method", linkpred_method_name(method)},
      {"dim", std::to_string(d)},
      {"trials", std::to_string(trials)},
      {"seed", format_u64(seed)},
      {"train_fraction", format_double(options.train_fraction)},
      {"estimator", theta_method_name(options.estimator)},
      {"bandwidth", format_double(options.bandwidth)},
      {"n", std::to_string(g.node_count())},
      {"m", std::to_string(g.edge_count())},
  };
  report.series.push_back(make_series_point(static_cast<double>(d), std::move(aucs)));
  return report;
}

}  // namespace glee
