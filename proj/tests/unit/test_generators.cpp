#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "glee/generators.hpp"
#include "glee/graph.hpp"

using namespace glee;

namespace {

GeneratorSpec spec_for(GraphModel model, int n, double kbar, std::uint64_t seed,
                       double gamma = 2.3) {
  GeneratorSpec spec;
  spec.model = model;
  spec.n = n;
  spec.target_mean_degree = kbar;
  spec.gamma = gamma;
  spec.seed = seed;
  return spec;
}

double mean_degree(const Graph& g) {
  return 2.0 * double(g.edge_count()) / double(g.node_count());
}

/// Maximum-likelihood tail exponent for degrees >= k_min (continuous
/// approximation): 1 + m / sum(log(k_i / (k_min - 0.5))).
double tail_exponent(const std::vector<int>& degrees, int k_min) {
  double acc = 0.0;
  int count = 0;
  for (const int k : degrees)
    if (k >= k_min) {
      acc += std::log(double(k) / (double(k_min) - 0.5));
      ++count;
    }
  return 1.0 + double(count) / acc;
}

}  // namespace

TEST_CASE("generators are deterministic per seed") {
  for (const GraphModel model : {GraphModel::er, GraphModel::ba, GraphModel::hg}) {
    const Graph a = generate(spec_for(model, 300, 8.0, 5));
    const Graph b = generate(spec_for(model, 300, 8.0, 5));
    const Graph c = generate(spec_for(model, 300, 8.0, 6));
    CHECK(a == b);
    CHECK(a != c);
  }
}

TEST_CASE("er mean degree concentrates near the target") {
  double acc = 0.0;
  int close = 0;
  const int trials = 20;
  for (int seed = 0; seed < trials; ++seed) {
    const Graph g = generate(spec_for(GraphModel::er, 1000, 8.0, seed));
    const double k = mean_degree(g);
    acc += k;
    if (std::abs(k - 8.0) < 0.8) ++close;
  }
  CHECK(acc / trials == doctest::Approx(8.0).epsilon(0.05));
  CHECK(close >= 19);
}

TEST_CASE("er keeps nearly every node at this density") {
  const Graph g = generate(spec_for(GraphModel::er, 1000, 8.0, 3));
  CHECK(g.node_count() >= 990);
  CHECK(g.connected());
}

TEST_CASE("ba edge count identity") {
  // Seed clique of m+1 nodes, then n - m - 1 arrivals with m edges each.
  const int n = 500;
  const int m_attach = 4;
  const Graph g = generate(spec_for(GraphModel::ba, n, 8.0, 9));
  CHECK(g.node_count() == n);
  CHECK(g.edge_count() ==
        std::size_t(m_attach * (m_attach + 1) / 2 + (n - m_attach - 1) * m_attach));
  CHECK(g.connected());
}

TEST_CASE("ba degrees are heavy tailed relative to er") {
  const Graph ba = generate(spec_for(GraphModel::ba, 1000, 8.0, 12));
  const Graph er = generate(spec_for(GraphModel::er, 1000, 8.0, 12));
  int ba_max = 0, er_max = 0;
  for (int v = 0; v < ba.node_count(); ++v) ba_max = std::max(ba_max, ba.degree(v));
  for (int v = 0; v < er.node_count(); ++v) er_max = std::max(er_max, er.degree(v));
  CHECK(ba_max > 2 * er_max);
}

TEST_CASE("hg lands near the target mean degree") {
  // Calibration hits 10% on the raw graph; trimming to the largest
  // component drops low-degree outskirts and shifts the mean up a little.
  for (const std::uint64_t seed : {1u, 2u, 3u}) {
    const Graph g = generate(spec_for(GraphModel::hg, 1000, 8.0, seed));
    CHECK(mean_degree(g) > 6.0);
    CHECK(mean_degree(g) < 11.0);
    CHECK(g.node_count() > 700);
  }
}

TEST_CASE("hg degree tail follows the requested exponent") {
  std::vector<int> degrees;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = generate(spec_for(GraphModel::hg, 500, 8.0, seed, 2.3));
    for (int v = 0; v < g.node_count(); ++v) degrees.push_back(g.degree(v));
  }
  const double gamma_hat = tail_exponent(degrees, 10);
  CHECK(gamma_hat > 2.0);
  CHECK(gamma_hat < 2.7);
}

TEST_CASE("hg clusters far more than er") {
  const Graph hg = generate(spec_for(GraphModel::hg, 1000, 8.0, 7));
  const Graph er = generate(spec_for(GraphModel::er, 1000, 8.0, 7));
  CHECK(hg.average_clustering() > 0.5);
  CHECK(er.average_clustering() < 0.05);
  CHECK(hg.average_clustering() > 5.0 * er.average_clustering());
}

TEST_CASE("generator specs are validated") {
  CHECK_THROWS_AS(generate(spec_for(GraphModel::er, 1, 0.5, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_for(GraphModel::er, 100, 0.0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_for(GraphModel::er, 100, 99.5, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_for(GraphModel::ba, 100, 0.4, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_for(GraphModel::hg, 100, 8.0, 0, 1.9)),
                  std::invalid_argument);
  CHECK_NOTHROW(generate(spec_for(GraphModel::hg, 100, 8.0, 0, 2.1)));
}

TEST_CASE("model names round trip") {
  for (const GraphModel model : {GraphModel::er, GraphModel::ba, GraphModel::hg})
    CHECK(graph_model_from_name(graph_model_name(model)) == model);
  CHECK_THROWS_AS(graph_model_from_name("xx"), std::invalid_argument);
}
