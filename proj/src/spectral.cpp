#include "glee/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "glee/laplacian.hpp"
#include "glee/rng.hpp"

namespace glee {

namespace {

Eigen::VectorXd random_unit_vector(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.next_normal();
  const double norm = v.norm();
  if (norm == 0.0) return Eigen::VectorXd::Unit(n, 0);
  return v / norm;
}

void orthogonalize_against(const std::vector<Eigen::VectorXd>& basis,
                           Eigen::VectorXd& w) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) w -= q.dot(w) * q;
}

}  // namespace

LanczosResult lanczos_largest(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& matvec,
    int n, int k, std::uint64_t seed, double tol) {
  if (k < 1 || k > n) throw std::invalid_argument("lanczos_largest: bad k");

  Rng rng(seed);
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(static_cast<std::size_t>(std::min(n, 2 * k + 64)));
  std::vector<double> alpha, beta;  // beta[j] couples basis[j-1] and basis[j]
  basis.push_back(random_unit_vector(n, rng));
  beta.push_back(0.0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small_solver;
  const auto solve_tridiagonal = [&](int m) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) {
        t(i, i + 1) = beta[static_cast<std::size_t>(i) + 1];
        t(i + 1, i) = beta[static_cast<std::size_t>(i) + 1];
      }
    }
    small_solver.compute(t);
  };

  int m = 0;
  double last_beta = 0.0;
  bool exhausted = false;
  bool restarted = false;
  while (true) {
    Eigen::VectorXd w = matvec(basis.back());
    alpha.push_back(basis.back().dot(w));
    orthogonalize_against(basis, w);
    ++m;

    restarted = false;
    last_beta = w.norm();
    if (m == n) {
      exhausted = true;
    } else if (last_beta < 1e-12) {
      // Invariant subspace found; continue on a fresh random direction.
      Eigen::VectorXd fresh = random_unit_vector(n, rng);
      orthogonalize_against(basis, fresh);
      const double fn = fresh.norm();
      if (fn < 1e-10) {
        exhausted = true;
      } else {
        last_beta = 0.0;
        restarted = true;
        basis.push_back(fresh / fn);
        beta.push_back(0.0);
      }
    } else {
      basis.push_back(w / last_beta);
      beta.push_back(last_beta);
    }

    if (exhausted) {
      solve_tridiagonal(m);
      break;
    }
    // A zero coupling after a restart says nothing about unexplored
    // directions, so convergence is never declared on a restart step.
    if (restarted || m < k + 2 || m % 4 != 0) continue;
    solve_tridiagonal(m);
    bool converged = true;
    for (int i = 0; i < k; ++i) {
      const int col = m - 1 - i;
      const double theta = small_solver.eigenvalues()(col);
      const double resid =
          std::abs(last_beta * small_solver.eigenvectors()(m - 1, col));
      if (resid > tol * std::max(1.0, std::abs(theta))) {
        converged = false;
        break;
      }
    }
    if (converged) break;
  }

  LanczosResult out;
  out.values.resize(k);
  out.vectors.resize(n, k);
  for (int i = 0; i < k; ++i) {
    const int col = m - 1 - i;
    out.values(i) = small_solver.eigenvalues()(col);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < m; ++j)
      v += small_solver.eigenvectors()(j, col) * basis[static_cast<std::size_t>(j)];
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    out.vectors.col(i) = v;
  }
  return out;
}

namespace {

Eigen::MatrixXd dense_laplacian(const Graph& g) {
  const int n = g.node_count();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    l(u, v) = -1.0;
    l(v, u) = -1.0;
  }
  for (int v = 0; v < n; ++v) l(v, v) = static_cast<double>(g.degree(v));
  return l;
}

bool use_dense(int n, EigenBackend backend) {
  switch (backend) {
    case EigenBackend::dense:
      return true;
    case EigenBackend::iterative:
      return false;
    case EigenBackend::auto_select:
    default:
      return n <= kDenseSolveLimit;
  }
}

}  // namespace

Embedding glee_embed(const Graph& g, int d, std::uint64_t seed,
                     EigenBackend backend) {
  const int n = g.node_count();
  if (n < 1) throw std::invalid_argument("glee_embed: empty graph");
  if (d < 1 || d > n)
    throw std::invalid_argument("glee_embed: dimension must satisfy 1 <= d <= n");

  Embedding e;
  e.method = EmbedMethod::glee;
  e.coords.resize(n, d);
  e.eigenvalues.resize(d);

  if (use_dense(n, backend)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(g));
    if (es.info() != Eigen::Success)
      throw std::runtime_error("glee_embed: eigendecomposition failed");
    for (int j = 0; j < d; ++j) {
      const int col = n - 1 - j;  // eigenvalues come back ascending
      const double lam = std::max(0.0, es.eigenvalues()(col));
      e.eigenvalues(j) = lam;
      e.coords.col(j) = es.eigenvectors().col(col) * std::sqrt(lam);
    }
    return e;
  }

  const LaplacianMatrix lap(g);
  const auto result = lanczos_largest(
      [&lap](const Eigen::VectorXd& x) { return lap.apply(x); }, n, d,
      derive_seed(seed, stream::eigensolver));
  for (int j = 0; j < d; ++j) {
    const double lam = std::max(0.0, result.values(j));
    e.eigenvalues(j) = lam;
    e.coords.col(j) = result.vectors.col(j) * std::sqrt(lam);
  }
  return e;
}

Embedding le_embed(const Graph& g, int d, EigenBackend backend) {
  const int n = g.node_count();
  if (n < 2 || !g.connected())
    throw std::invalid_argument("le_embed: graph must be connected");
  if (d < 1 || d > n - 1)
    throw std::invalid_argument(
        "le_embed: dimension must satisfy 1 <= d <= n-1");

  constexpr double kTrivialEigenvalue = 1e-9;
  Embedding e;
  e.method = EmbedMethod::le;
  e.coords.resize(n, d);
  e.eigenvalues.resize(d);

  if (use_dense(n, backend)) {
    Eigen::VectorXd deg(n);
    for (int v = 0; v < n; ++v) deg(v) = static_cast<double>(g.degree(v));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        dense_laplacian(g), Eigen::MatrixXd(deg.asDiagonal()));
    if (es.info() != Eigen::Success)
      throw std::runtime_error("le_embed: eigendecomposition failed");
    // Eigenvectors already satisfy y^T D y = 1; eigenvalues ascending.
    int col = 0;
    while (col < n && es.eigenvalues()(col) < kTrivialEigenvalue) ++col;
    if (n - col < d)
      throw std::runtime_error("le_embed: not enough nontrivial eigenvectors");
    for (int j = 0; j < d; ++j) {
      e.eigenvalues(j) = es.eigenvalues()(col + j);
      e.coords.col(j) = es.eigenvectors().col(col + j);
    }
    return e;
  }

  // Iterative path works on the normalized adjacency D^-1/2 A D^-1/2, whose
  // largest eigenvalues map to the smallest generalized ones by mu = 1 -
  // lambda.
  const LaplacianMatrix lap(g);
  Eigen::VectorXd sqrt_deg(n);
  for (int v = 0; v < n; ++v)
    sqrt_deg(v) = std::sqrt(static_cast<double>(g.degree(v)));
  const auto matvec = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = x.cwiseQuotient(sqrt_deg);
    Eigen::VectorXd ay = lap.degrees().cwiseProduct(y) - lap.apply(y);
    return Eigen::VectorXd(ay.cwiseQuotient(sqrt_deg));
  };

  const int want = std::min(n, d + 2);
  const auto result = lanczos_largest(
      matvec, n, want, derive_seed(0x6c65u, stream::eigensolver));
  int taken = 0;
  for (int i = 0; i < want && taken < d; ++i) {
    const double lambda = 1.0 - result.values(i);
    if (lambda < kTrivialEigenvalue) continue;  // trivial constant mode
    e.eigenvalues(taken) = lambda;
    e.coords.col(taken) = result.vectors.col(i).cwiseQuotient(sqrt_deg);
    ++taken;
  }
  if (taken < d)
    throw std::runtime_error("le_embed: not enough nontrivial eigenvectors");
  return e;
}

double low_rank_error(const Graph& g, int d) {
  const Embedding e = glee_embed(g, d);
  const int n = g.node_count();
  const int block = std::max(1, std::min(n, (1 << 22) / std::max(1, n)));
  double acc = 0.0;
  for (int i0 = 0; i0 < n; i0 += block) {
    const int rows = std::min(block, n - i0);
    Eigen::MatrixXd m = e.coords.middleRows(i0, rows) * e.coords.transpose();
    for (int r = 0; r < rows; ++r) {
      const int i = i0 + r;
      m(r, i) -= static_cast<double>(g.degree(i));
      for (int w : g.neighbors(i)) m(r, w) += 1.0;
    }
    acc += m.squaredNorm();
  }
  return std::sqrt(acc);
}

Eigen::MatrixXd gram(const Embedding& e) {
  return e.coords * e.coords.transpose();
}

}  // namespace glee
