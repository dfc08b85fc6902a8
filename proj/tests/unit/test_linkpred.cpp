#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "glee/graph.hpp"
#include "glee/linkpred.hpp"
#include "glee/rng.hpp"
#include "glee/spectral.hpp"
#include "glee/threshold.hpp"

using namespace glee;

namespace {

const std::string kDataDir = GLEE_TEST_DATA_DIR;

Graph karate() {
  return Graph::load_edge_list_file(kDataDir + "/karate.edges");
}

ThresholdEstimate at(double theta) {
  ThresholdEstimate est;
  est.theta = theta;
  return est;
}

int exact_common_neighbors(const Graph& g, int i, int j) {
  const auto& a = g.neighbors(i);
  const auto& b = g.neighbors(j);
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return int(common.size());
}

int exact_l3_paths(const Graph& g, int i, int j) {
  // Number of walks i -> u -> v -> j with u adjacent to i, v adjacent to j.
  int count = 0;
  for (const int u : g.neighbors(i))
    for (const int v : g.neighbors(j))
      if (g.has_edge(u, v)) ++count;
  return count;
}

}  // namespace

TEST_CASE("split keeps the train graph connected and spanning") {
  const Graph g = karate();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SplitDataset split = split_graph(g, 0.75, seed);
    CHECK(split.g_train.node_count() == g.node_count());
    CHECK(split.g_train.connected());
    CHECK(split.g_train.edge_count() == 59);  // round(0.75 * 78)
    CHECK(split.e_test.size() == 19);
    for (const auto& [u, v] : split.e_test) {
      CHECK(g.has_edge(u, v));
      CHECK_FALSE(split.g_train.has_edge(u, v));
    }
    for (const auto& edge : split.g_train.edges())
      CHECK(g.has_edge(edge.first, edge.second));
  }
}

TEST_CASE("split is deterministic per seed") {
  const Graph g = karate();
  const SplitDataset a = split_graph(g, 0.75, 42);
  const SplitDataset b = split_graph(g, 0.75, 42);
  const SplitDataset c = split_graph(g, 0.75, 43);
  CHECK(a.g_train == b.g_train);
  CHECK(a.e_test == b.e_test);
  CHECK(a.g_train != c.g_train);
}

TEST_CASE("split of a triangle keeps two edges") {
  const Graph g(3, {{0, 1}, {1, 2}, {0, 2}});
  const SplitDataset split = split_graph(g, 2.0 / 3.0, 1);
  CHECK(split.g_train.edge_count() == 2);
  CHECK(split.e_test.size() == 1);
  CHECK(split.g_train.connected());
}

TEST_CASE("split validates its inputs") {
  const Graph tree(4, {{0, 1}, {1, 2}, {2, 3}});
  // Any fraction keeps at least n-1 edges; a tree has exactly n-1, so the
  // only valid outcome already holds every edge and leaves nothing to test.
  CHECK_THROWS_AS(split_graph(tree, 0.5, 1), std::invalid_argument);
  const Graph disconnected(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(split_graph(disconnected, 0.9, 1), std::invalid_argument);
  const Graph g = karate();
  CHECK_THROWS_AS(split_graph(g, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(split_graph(g, 1.0, 1), std::invalid_argument);
}

TEST_CASE("approx neighborhood at full dimension is the true neighborhood") {
  const Graph g = karate();
  const Embedding e = glee_embed(g, 34);
  for (const int v : {0, 5, 33}) {
    const auto hood = approx_neighborhood(e, v, theta_constant());
    CHECK(hood.members == g.neighbors(v));
    CHECK(hood.deg_hat == doctest::Approx(double(g.degree(v))).epsilon(1e-9));
  }
}

TEST_CASE("centroid edge count matches the true cut at full dimension") {
  const Graph g = karate();
  const Embedding e = glee_embed(g, 34);
  const std::vector<int> v1{0, 1, 2, 3};
  const std::vector<int> v2{30, 31, 32, 33};
  int want = 0;
  for (const int a : v1)
    for (const int b : v2)
      if (g.has_edge(a, b)) ++want;
  CHECK(centroid_edge_count(e, v1, v2) ==
        doctest::Approx(double(want)).epsilon(1e-8));

  const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
  const Embedding te = glee_embed(tri, 3);
  CHECK(centroid_edge_count(te, {0}, {1}) == doctest::Approx(1.0));
  const Graph path(3, {{0, 1}, {1, 2}});
  const Embedding pe = glee_embed(path, 3);
  CHECK(centroid_edge_count(pe, {0}, {2}) ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("centroid edge count validates sets") {
  const Graph g = karate();
  const Embedding e = glee_embed(g, 8);
  CHECK_THROWS_AS(centroid_edge_count(e, {}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(centroid_edge_count(e, {0, 1}, {1, 2}),
                  std::invalid_argument);
}

TEST_CASE("cn score recovers exact common neighbor counts at full dimension") {
  const Graph path(3, {{0, 1}, {1, 2}});
  const Embedding pe = glee_embed(path, 3);
  CHECK(cn_score(pe, 0, 2, theta_constant()) == doctest::Approx(1.0).epsilon(1e-9));

  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const Embedding se = glee_embed(star, 4);
  CHECK(cn_score(se, 1, 2, theta_constant()) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cn_score(se, 1, 3, theta_constant()) == doctest::Approx(1.0).epsilon(1e-9));

  const Graph g = karate();
  const Embedding e = glee_embed(g, 34);
  for (int i = 0; i < g.node_count(); ++i)
    for (int j = i + 1; j < g.node_count(); ++j) {
      if (g.has_edge(i, j)) continue;
      const double want = exact_common_neighbors(g, i, j);
      CHECK(cn_score(e, i, j, theta_constant()) ==
            doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("both one-sided cn forms agree at full dimension") {
  const Graph g = karate();
  const Embedding e = glee_embed(g, 34);
  Rng rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const int i = int(rng.next_below(34));
    const int j = int(rng.next_below(34));
    if (i == j || g.has_edge(i, j)) continue;
    const double one = cn_score(e, i, j, theta_constant(), false);
    const double avg = cn_score(e, i, j, theta_constant(), true);
    CHECK(one == doctest::Approx(avg).epsilon(1e-6));
  }
}

TEST_CASE("l3 score counts length-3 walks at full dimension") {
  // Square: adjacent corners are joined by exactly one 3-step walk around
  // the cycle... times degree contributions; opposite corners get none.
  const Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const Embedding ce = glee_embed(c4, 4);
  CHECK(l3_score(ce, 0, 1, theta_constant()) ==
        doctest::Approx(double(exact_l3_paths(c4, 0, 1))).epsilon(1e-8));
  CHECK(exact_l3_paths(c4, 0, 1) == 4);

  const Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
  const Embedding pe = glee_embed(p4, 4);
  CHECK(exact_l3_paths(p4, 0, 3) == 1);
  CHECK(l3_score(pe, 0, 3, theta_constant()) ==
        doctest::Approx(1.0).epsilon(1e-8));

  const Graph g = karate();
  const Embedding e = glee_embed(g, 34);
  Rng rng(9);
  for (int rep = 0; rep < 50; ++rep) {
    const int i = int(rng.next_below(34));
    const int j = int(rng.next_below(34));
    if (i == j) continue;
    const double want = exact_l3_paths(g, i, j);
    CHECK(l3_score(e, i, j, theta_constant()) ==
          doctest::Approx(want).epsilon(1e-6).scale(1.0 + want));
  }
}

TEST_CASE("neighborhood index matches the free functions") {
  const Graph g = karate();
  const Embedding e = glee_embed(g, 12);
  const auto theta = theta_constant();
  const NeighborhoodIndex index(e, theta);
  Rng rng(3);
  for (int rep = 0; rep < 60; ++rep) {
    const int i = int(rng.next_below(34));
    const int j = int(rng.next_below(34));
    if (i == j) continue;
    CHECK(index.cn_score(i, j) == cn_score(e, i, j, theta));
    CHECK(index.cn_score(i, j, true) == cn_score(e, i, j, theta, true));
    CHECK(index.l3_score(i, j) == l3_score(e, i, j, theta));
    CHECK(index.of(i).members == approx_neighborhood(e, i, theta).members);
  }
}

TEST_CASE("auc on hand-computable score lists") {
  const std::vector<double> pos1{1.0, 1.0};
  const std::vector<double> neg1{0.0, 0.0};
  CHECK(auc(pos1, neg1) == 1.0);

  const std::vector<double> pos2{2.0, 0.0};
  const std::vector<double> neg2{1.0, 1.0};
  CHECK(auc(pos2, neg2) == 0.5);

  const std::vector<double> pos3{1.0};
  const std::vector<double> neg3{1.0};
  CHECK(auc(pos3, neg3) == 0.5);

  const std::vector<double> pos4{3.0, 2.0};
  const std::vector<double> neg4{1.0, 2.0};
  // Cross pairs: (3>1), (3>2), (2>1), (2=2) -> (3 + 0.5) / 4.
  CHECK(auc(pos4, neg4) == doctest::Approx(0.875));

  CHECK_THROWS_AS(auc({}, neg1), std::invalid_argument);
  CHECK_THROWS_AS(auc(pos1, {}), std::invalid_argument);
}

TEST_CASE("auc matches brute force counting with ties") {
  Rng rng(44);
  std::vector<double> pos, neg;
  for (int i = 0; i < 80; ++i) pos.push_back(double(rng.next_below(12)));
  for (int i = 0; i < 120; ++i) neg.push_back(double(rng.next_below(12)));
  double acc = 0.0;
  for (const double p : pos)
    for (const double q : neg) acc += p > q ? 1.0 : (p == q ? 0.5 : 0.0);
  CHECK(auc(pos, neg) ==
        doctest::Approx(acc / (pos.size() * neg.size())).epsilon(1e-12));
}

TEST_CASE("auc is invariant under monotone transforms") {
  Rng rng(45);
  std::vector<double> pos, neg;
  for (int i = 0; i < 50; ++i) pos.push_back(rng.next_normal());
  for (int i = 0; i < 70; ++i) neg.push_back(rng.next_normal() - 0.4);
  const double base = auc(pos, neg);
  auto squash = [](std::vector<double> v) {
    for (double& x : v) x = std::atan(3.0 * x + 1.0);
    return v;
  };
  CHECK(auc(squash(pos), squash(neg)) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("experiment separates a clique with periphery") {
  // Clique of 10 plus a path tail: plenty of common neighbors inside the
  // clique, none along the tail, and enough non-edges to sample.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) edges.emplace_back(i, j);
  for (int v = 10; v < 16; ++v) edges.emplace_back(v - (v == 10 ? 10 : 1), v);
  const Graph g(16, edges);
  REQUIRE(g.connected());

  LinkPredOptions options;
  options.estimator = ThetaMethod::constant;
  const EvalReport report = link_prediction_experiment(
      g, g.node_count(), LinkPredMethod::cn, 8, 3, options);
  REQUIRE(report.series.size() == 1);
  CHECK(report.series[0].raw.size() == 8);
  CHECK(report.series[0].mean > 0.85);
}

TEST_CASE("experiment is deterministic per seed") {
  const Graph g = karate();
  LinkPredOptions options;
  options.estimator = ThetaMethod::constant;
  const EvalReport a =
      link_prediction_experiment(g, 16, LinkPredMethod::cn, 4, 7, options);
  const EvalReport b =
      link_prediction_experiment(g, 16, LinkPredMethod::cn, 4, 7, options);
  const EvalReport c =
      link_prediction_experiment(g, 16, LinkPredMethod::cn, 4, 8, options);
  CHECK(a.series[0].raw == b.series[0].raw);
  CHECK(a.series[0].raw != c.series[0].raw);
}

TEST_CASE("experiment validates inputs") {
  const Graph disconnected(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(
      link_prediction_experiment(disconnected, 2, LinkPredMethod::cn, 1, 0),
      std::invalid_argument);
  const Graph g = karate();
  CHECK_THROWS_AS(link_prediction_experiment(g, 16, LinkPredMethod::cn, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("le distance method runs and scores above chance on karate") {
  const Graph g = karate();
  const EvalReport report =
      link_prediction_experiment(g, 2, LinkPredMethod::le_distance, 6, 11);
  CHECK(report.series[0].raw.size() == 6);
  CHECK(report.series[0].mean > 0.5);
}
