#pragma once

#include <cstdint>
#include <string>

#include "glee/graph.hpp"

namespace glee {

enum class GraphModel { er, ba, hg };

std::string graph_model_name(GraphModel m);
GraphModel graph_model_from_name(const std::string& name);

struct GeneratorSpec {
  GraphModel model = GraphModel::er;
  int n = 2;
  double target_mean_degree = 1.0;
  double gamma = 2.3;  // degree-distribution exponent, hyperbolic model only
  std::uint64_t seed = 0;
};

/// Random graph per spec, reduced to its largest connected component.
/// ER: G(n, p) with p = target_mean_degree / (n-1).
/// BA: preferential attachment adding round(target_mean_degree / 2) edges
///     per node, seeded with a complete graph one node larger than that.
/// HG: hyperbolic threshold model with radii density a*sinh(a r) on [0, R],
///     a = (gamma-1)/2, uniform angles, edge iff hyperbolic distance < R;
///     R found by bisection until the empirical mean degree is within 10%
///     of the target (std::runtime_error after 50 steps without success).
/// Identical spec and seed give identical edge sets.
Graph generate(const GeneratorSpec& spec);

}  // namespace glee
