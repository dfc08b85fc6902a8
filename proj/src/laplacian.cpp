#include "glee/laplacian.hpp"

#include <stdexcept>
#include <vector>

namespace glee {

LaplacianMatrix::LaplacianMatrix(const Graph& g)
    : n_(g.node_count()), dense_storage_(g.node_count() <= kDenseLimit) {
  degrees_.resize(n_);
  for (int v = 0; v < n_; ++v) degrees_(v) = static_cast<double>(g.degree(v));

  if (dense_storage_) {
    dense_ = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& [u, v] : g.edges()) {
      dense_(u, v) = -1.0;
      dense_(v, u) = -1.0;
    }
    for (int v = 0; v < n_; ++v) dense_(v, v) = degrees_(v);
  } else {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(2 * g.edge_count() + static_cast<std::size_t>(n_));
    for (const auto& [u, v] : g.edges()) {
      triplets.emplace_back(u, v, -1.0);
      triplets.emplace_back(v, u, -1.0);
    }
    for (int v = 0; v < n_; ++v) triplets.emplace_back(v, v, degrees_(v));
    sparse_.resize(n_, n_);
    sparse_.setFromTriplets(triplets.begin(), triplets.end());
    sparse_.makeCompressed();
  }
}

const Eigen::MatrixXd& LaplacianMatrix::dense() const {
  if (!dense_storage_) throw std::logic_error("LaplacianMatrix: stored sparse");
  return dense_;
}

const Eigen::SparseMatrix<double>& LaplacianMatrix::sparse() const {
  if (dense_storage_) throw std::logic_error("LaplacianMatrix: stored dense");
  return sparse_;
}

Eigen::VectorXd LaplacianMatrix::apply(const Eigen::VectorXd& x) const {
  return dense_storage_ ? Eigen::VectorXd(dense_ * x)
                        : Eigen::VectorXd(sparse_ * x);
}

double LaplacianMatrix::coeff(int i, int j) const {
  return dense_storage_ ? dense_(i, j) : sparse_.coeff(i, j);
}

LaplacianMatrix laplacian(const Graph& g) { return LaplacianMatrix(g); }

}  // namespace glee
