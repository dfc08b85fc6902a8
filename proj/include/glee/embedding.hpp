#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace glee {

enum class EmbedMethod { glee, le };

std::string method_name(EmbedMethod m);
EmbedMethod method_from_name(const std::string& name);

/// Node embedding: row i of coords is the vector of node i. For GLEE the
/// eigenvalues are those of L sorted descending; for LE the nontrivial
/// generalized eigenvalues sorted ascending.
struct Embedding {
  Eigen::MatrixXd coords;
  Eigen::VectorXd eigenvalues;
  EmbedMethod method = EmbedMethod::glee;

  int node_count() const { return static_cast<int>(coords.rows()); }
  int dim() const { return static_cast<int>(coords.cols()); }
  Eigen::RowVectorXd row(int i) const { return coords.row(i); }
};

/// File format: header "n d METHOD", then n rows of d space-separated
/// coordinates, then one row of d eigenvalues. All values written in
/// shortest round-trip decimal form.
void write_embedding(std::ostream& out, const Embedding& e);
void write_embedding_file(const std::string& path, const Embedding& e);
Embedding read_embedding(std::istream& in);
Embedding read_embedding_file(const std::string& path);

}  // namespace glee
