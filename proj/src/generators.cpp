#include "glee/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "glee/rng.hpp"

namespace glee {

std::string graph_model_name(GraphModel m) {
  switch (m) {
    case GraphModel::er: return "er";
    case GraphModel::ba: return "ba";
    case GraphModel::hg: return "hg";
  }
  throw std::logic_error("unreachable");
}

GraphModel graph_model_from_name(const std::string& name) {
  if (name == "er") return GraphModel::er;
  if (name == "ba") return GraphModel::ba;
  if (name == "hg") return GraphModel::hg;
  throw std::invalid_argument("unknown graph model: '" + name + "'");
}

namespace {

Graph generate_er(int n, double kbar, Rng& rng) {
  const double p = kbar / static_cast<double>(n - 1);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(p * n * n / 2.0 * 1.2) + 16);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_unit() < p) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph generate_ba(int n, double kbar, Rng& rng) {
  const long long m_attach_ll = std::llround(kbar / 2.0);
  if (m_attach_ll < 1)
    throw std::invalid_argument(
        "generate: BA needs a target mean degree of at least 2");
  const int m_attach = static_cast<int>(m_attach_ll);
  if (n <= m_attach + 1)
    throw std::invalid_argument(
        "generate: BA needs n > round(mean_degree/2) + 1");

  std::vector<std::pair<int, int>> edges;
  std::vector<int> endpoints;  // each edge contributes both ends
  for (int i = 0; i <= m_attach; ++i)
    for (int j = i + 1; j <= m_attach; ++j) {
      edges.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }

  std::unordered_set<int> picked;
  for (int v = m_attach + 1; v < n; ++v) {
    picked.clear();
    while (static_cast<int>(picked.size()) < m_attach) {
      const int t = endpoints[static_cast<std::size_t>(
          rng.next_below(endpoints.size()))];
      picked.insert(t);
    }
    // Sorted insertion order keeps the edge list independent of set iteration
    // order.
    std::vector<int> targets(picked.begin(), picked.end());
    std::sort(targets.begin(), targets.end());
    for (const int t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph generate_hg(int n, double kbar, double gamma, Rng& rng) {
  const double alpha = (gamma - 1.0) / 2.0;
  std::vector<double> u(static_cast<std::size_t>(n)), cphi(static_cast<std::size_t>(n)),
      sphi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = rng.next_unit();
  for (int i = 0; i < n; ++i) {
    const double phi = 6.283185307179586476925286766559 * rng.next_unit();
    cphi[static_cast<std::size_t>(i)] = std::cos(phi);
    sphi[static_cast<std::size_t>(i)] = std::sin(phi);
  }

  std::vector<double> ch(static_cast<std::size_t>(n)), sh(static_cast<std::size_t>(n));
  const auto set_radii = [&](double radius) {
    const double denom = std::cosh(alpha * radius) - 1.0;
    for (int i = 0; i < n; ++i) {
      const double r =
          std::acosh(1.0 + u[static_cast<std::size_t>(i)] * denom) / alpha;
      ch[static_cast<std::size_t>(i)] = std::cosh(r);
      sh[static_cast<std::size_t>(i)] = std::sinh(r);
    }
  };
  const auto mean_degree = [&](double radius) {
    set_radii(radius);
    const double limit = std::cosh(radius);
    std::uint64_t m = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double cos_dphi = cphi[static_cast<std::size_t>(i)] * cphi[static_cast<std::size_t>(j)] +
                                sphi[static_cast<std::size_t>(i)] * sphi[static_cast<std::size_t>(j)];
        const double cosh_dist = ch[static_cast<std::size_t>(i)] * ch[static_cast<std::size_t>(j)] -
                                 sh[static_cast<std::size_t>(i)] * sh[static_cast<std::size_t>(j)] * cos_dphi;
        if (cosh_dist < limit) ++m;
      }
    return 2.0 * static_cast<double>(m) / static_cast<double>(n);
  };

  // Mean degree decreases monotonically with the disk radius.
  double lo = 0.5, hi = 40.0;
  for (int step = 0; step < 50; ++step) {
    const double radius = 0.5 * (lo + hi);
    const double k = mean_degree(radius);
    if (std::abs(k - kbar) <= 0.1 * kbar) {
      const double limit = std::cosh(radius);
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double cos_dphi = cphi[static_cast<std::size_t>(i)] * cphi[static_cast<std::size_t>(j)] +
                                  sphi[static_cast<std::size_t>(i)] * sphi[static_cast<std::size_t>(j)];
          const double cosh_dist = ch[static_cast<std::size_t>(i)] * ch[static_cast<std::size_t>(j)] -
                                   sh[static_cast<std::size_t>(i)] * sh[static_cast<std::size_t>(j)] * cos_dphi;
          if (cosh_dist < limit) edges.emplace_back(i, j);
        }
      return Graph(n, std::move(edges));
    }
    if (k > kbar)
      lo = radius;
    else
      hi = radius;
  }
  throw std::runtime_error(
      "generate: hyperbolic radius calibration did not reach the target mean "
      "degree in 50 bisection steps");
}

}  // namespace

Graph generate(const GeneratorSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("generate: n must be >= 2");
  if (!(spec.target_mean_degree > 0.0) ||
      spec.target_mean_degree >= static_cast<double>(spec.n - 1))
    throw std::invalid_argument(
        "generate: target mean degree must lie in (0, n-1)");
  if (spec.model == GraphModel::hg && !(spec.gamma > 2.0))
    throw std::invalid_argument("generate: HG needs gamma > 2");

  Rng rng(derive_seed(spec.seed, stream::generator));
  Graph g;
  switch (spec.model) {
    case GraphModel::er:
      g = generate_er(spec.n, spec.target_mean_degree, rng);
      break;
    case GraphModel::ba:
      g = generate_ba(spec.n, spec.target_mean_degree, rng);
      break;
    case GraphModel::hg:
      g = generate_hg(spec.n, spec.target_mean_degree, spec.gamma, rng);
      break;
  }
  return g.largest_connected_component();
}

}  // namespace glee
