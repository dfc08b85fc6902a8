#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "glee/embedding.hpp"
#include "glee/graph.hpp"

namespace glee {

enum class EigenBackend {
  auto_select,  // dense up to kDenseSolveLimit nodes, iterative above
  dense,
  iterative,
};

inline constexpr int kDenseSolveLimit = 2048;

/// Embedding rows scaled so that the Gram matrix of the full-dimensional
/// embedding equals L: eigendecompose L = P diag(lambda) P^T with eigenvalues
/// sorted descending, scale column j of P by sqrt(lambda_j), keep the first d
/// columns. The seed feeds iterative solver start vectors only; results are
/// deterministic per seed. Throws std::invalid_argument unless 1 <= d <= n.
Embedding glee_embed(const Graph& g, int d, std::uint64_t seed = 0,
                     EigenBackend backend = EigenBackend::auto_select);

/// Laplacian Eigenmaps baseline: the d generalized eigenvectors of
/// L y = lambda D y with smallest nonzero eigenvalue, normalized so that
/// y^T D y = 1, trivial constant mode skipped. Requires a connected graph
/// and 1 <= d <= n-1; throws std::invalid_argument otherwise.
Embedding le_embed(const Graph& g, int d,
                   EigenBackend backend = EigenBackend::auto_select);

/// Frobenius norm of L minus the Gram matrix of the d-dimensional embedding.
double low_rank_error(const Graph& g, int d);

/// Gram matrix coords * coords^T. Materializes n x n; intended for small
/// graphs and tests.
Eigen::MatrixXd gram(const Embedding& e);

/// Largest eigenpairs of a symmetric operator given by matvec, via Lanczos
/// iteration with full reorthogonalization. Deterministic per seed; residual
/// tolerance on each returned pair. Exposed for testing.
struct LanczosResult {
  Eigen::VectorXd values;   // k, descending
  Eigen::MatrixXd vectors;  // n x k, orthonormal
};
LanczosResult lanczos_largest(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& matvec,
    int n, int k, std::uint64_t seed, double tol = 1e-9);

}  // namespace glee
