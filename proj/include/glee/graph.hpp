#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace glee {

/// Undirected, unweighted simple graph over node IDs 0..n-1. Immutable after
/// construction; safe to share across threads for reading.
class Graph {
 public:
  Graph() = default;

  /// Validates and stores the edge set. Throws std::invalid_argument on
  /// self-loops, duplicate edges or endpoints outside [0, n).
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges as (u, v) with u < v, sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Sorted neighbor list of v.
  const std::vector<int>& neighbors(int v) const;

  int degree(int v) const;
  bool has_edge(int u, int v) const;
  bool connected() const;

  /// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
  double average_clustering() const;

  /// Induced subgraph on the largest component, nodes relabeled contiguously
  /// in ascending original-ID order. Size ties go to the component holding
  /// the smallest original node ID.
  Graph largest_connected_component() const;

  /// Relabels nodes so that loading the serialized edge list reproduces this
  /// graph exactly (serialize and load_edge_list are mutually inverse on
  /// canonical graphs). Throws std::invalid_argument if the graph has
  /// isolated nodes, which an edge list cannot carry.
  Graph canonicalized() const;

  /// Writes the edge list, one "u v" line per edge, sorted.
  void serialize(std::ostream& out) const;
  std::string serialize() const;

  bool operator==(const Graph& other) const = default;

  /// Parses an edge-list stream: two integer tokens per line, '#' comment
  /// lines and blank lines skipped, nodes relabeled to 0..n-1 in
  /// first-appearance order, duplicate edges and self-loops dropped.
  /// Throws std::runtime_error with the line number on malformed input
  /// (including weighted rows, which are rejected) and on empty input.
  static Graph load_edge_list(std::istream& in);
  static Graph load_edge_list(const std::string& text);
  static Graph load_edge_list_file(const std::string& path);

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace glee
