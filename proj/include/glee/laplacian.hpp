#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "glee/graph.hpp"

namespace glee {

/// Symmetric graph Laplacian L = D - A. Stored dense up to kDenseLimit nodes
/// and sparse above; immutable after construction.
class LaplacianMatrix {
 public:
  static constexpr int kDenseLimit = 4096;

  explicit LaplacianMatrix(const Graph& g);

  int size() const { return n_; }
  bool is_dense() const { return dense_storage_; }

  /// Throws std::logic_error when the other storage form is active.
  const Eigen::MatrixXd& dense() const;
  const Eigen::SparseMatrix<double>& sparse() const;

  /// L * x for either storage form.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  double coeff(int i, int j) const;

  /// Node degrees as a real vector (the diagonal of L).
  const Eigen::VectorXd& degrees() const { return degrees_; }

 private:
  int n_ = 0;
  bool dense_storage_ = true;
  Eigen::MatrixXd dense_;
  Eigen::SparseMatrix<double> sparse_;
  Eigen::VectorXd degrees_;
};

LaplacianMatrix laplacian(const Graph& g);

}  // namespace glee
