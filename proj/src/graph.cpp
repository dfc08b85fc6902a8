#include "glee/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "glee/textio.hpp"

namespace glee {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("Graph: negative node count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("Graph: endpoint outside [0, n)");
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("Graph: duplicate edge");
  edges_ = std::move(edges);
  adj_.resize(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

const std::vector<int>& Graph::neighbors(int v) const {
  return adj_.at(static_cast<std::size_t>(v));
}

int Graph::degree(int v) const {
  return static_cast<int>(neighbors(v).size());
}

bool Graph::has_edge(int u, int v) const {
  const auto& nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj_[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n_;
}

double Graph::average_clustering() const {
  if (n_ == 0) return 0.0;
  double total = 0.0;
  for (int v = 0; v < n_; ++v) {
    const auto& nb = adj_[static_cast<std::size_t>(v)];
    const std::size_t deg = nb.size();
    if (deg < 2) continue;
    std::size_t links = 0;
    for (std::size_t a = 0; a < deg; ++a)
      for (std::size_t b = a + 1; b < deg; ++b)
        if (has_edge(nb[a], nb[b])) ++links;
    total += 2.0 * static_cast<double>(links) /
             (static_cast<double>(deg) * static_cast<double>(deg - 1));
  }
  return total / static_cast<double>(n_);
}

Graph Graph::largest_connected_component() const {
  std::vector<int> comp(static_cast<std::size_t>(n_), -1);
  int best_comp = -1;
  int best_size = 0;
  int comp_count = 0;
  for (int s = 0; s < n_; ++s) {
    if (comp[static_cast<std::size_t>(s)] != -1) continue;
    const int c = comp_count++;
    int size = 0;
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = c;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++size;
      for (int w : adj_[static_cast<std::size_t>(v)]) {
        if (comp[static_cast<std::size_t>(w)] == -1) {
          comp[static_cast<std::size_t>(w)] = c;
          stack.push_back(w);
        }
      }
    }
    // Components are discovered in ascending order of their minimal node ID,
    // so a strict size comparison keeps the tie winner.
    if (size > best_size) {
      best_size = size;
      best_comp = c;
    }
  }
  if (best_comp == -1) return Graph();

  std::vector<int> relabel(static_cast<std::size_t>(n_), -1);
  int next = 0;
  for (int v = 0; v < n_; ++v)
    if (comp[static_cast<std::size_t>(v)] == best_comp)
      relabel[static_cast<std::size_t>(v)] = next++;
  std::vector<std::pair<int, int>> kept;
  for (const auto& [u, v] : edges_)
    if (comp[static_cast<std::size_t>(u)] == best_comp)
      kept.emplace_back(relabel[static_cast<std::size_t>(u)],
                        relabel[static_cast<std::size_t>(v)]);
  return Graph(next, std::move(kept));
}

Graph Graph::canonicalized() const {
  for (int v = 0; v < n_; ++v)
    if (adj_[static_cast<std::size_t>(v)].empty())
      throw std::invalid_argument(
          "canonicalized: graph has an isolated node, which an edge list "
          "cannot represent");

  // Greedy relabeling: repeatedly pick the remaining edge that is smallest in
  // final-label space, assigning fresh labels on first appearance. The
  // emitted order coincides with the sorted order of the final edge list, so
  // loading the serialized form reproduces the labels.
  const int kUnset = -1;
  std::vector<int> label(static_cast<std::size_t>(n_), kUnset);
  std::vector<std::pair<int, int>> remaining = edges_;
  std::vector<std::pair<int, int>> emitted;
  emitted.reserve(edges_.size());
  int next = 0;

  while (!remaining.empty()) {
    std::size_t best = 0;
    long long best_a = std::numeric_limits<long long>::max();
    long long best_b = 0;
    long long best_tie = 0;
    for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
      const auto [u, v] = remaining[idx];
      const int lu = label[static_cast<std::size_t>(u)];
      const int lv = label[static_cast<std::size_t>(v)];
      long long a, b, tie;
      if (lu != kUnset && lv != kUnset) {
        a = std::min(lu, lv);
        b = std::max(lu, lv);
        tie = 0;
      } else if (lu != kUnset || lv != kUnset) {
        const int fixed = lu != kUnset ? lu : lv;
        const int fresh = lu != kUnset ? v : u;
        a = fixed;
        b = next;
        tie = fresh;
      } else {
        a = next;
        b = next + 1;
        tie = static_cast<long long>(std::min(u, v)) *
                  static_cast<long long>(n_) +
              std::max(u, v);
      }
      if (std::tie(a, b, tie) < std::tie(best_a, best_b, best_tie)) {
        best = idx;
        best_a = a;
        best_b = b;
        best_tie = tie;
      }
    }
    const auto [u, v] = remaining[best];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    int& lu = label[static_cast<std::size_t>(u)];
    int& lv = label[static_cast<std::size_t>(v)];
    if (lu == kUnset && lv == kUnset) {
      if (std::min(u, v) == u) {
        lu = next++;
        lv = next++;
      } else {
        lv = next++;
        lu = next++;
      }
    } else if (lu == kUnset) {
      lu = next++;
    } else if (lv == kUnset) {
      lv = next++;
    }
    emitted.emplace_back(std::min(lu, lv), std::max(lu, lv));
  }
  return Graph(next, std::move(emitted));
}

void Graph::serialize(std::ostream& out) const {
  for (const auto& [u, v] : edges_)
    out << u << ' ' << v << '\n';
}

std::string Graph::serialize() const {
  std::ostringstream out;
  serialize(out);
  return out.str();
}

Graph Graph::load_edge_list(std::istream& in) {
  std::unordered_map<long long, int> relabel;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  std::size_t line_no = 0;
  bool saw_edge_line = false;

  auto node_id = [&](long long orig) {
    const auto [it, inserted] =
        relabel.try_emplace(orig, static_cast<int>(relabel.size()));
    (void)inserted;
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;

    std::vector<std::string_view> tokens;
    const std::string_view sv(line);
    while (pos != std::string_view::npos && pos < sv.size()) {
      const std::size_t end = sv.find_first_of(" \t\r", pos);
      tokens.push_back(sv.substr(pos, end - pos));
      pos = sv.find_first_not_of(" \t\r", end);
    }
    if (tokens.size() != 2)
      throw std::runtime_error(
          "edge list line " + std::to_string(line_no) + ": expected two node "
          "IDs, got " + std::to_string(tokens.size()) +
          " tokens (weighted or annotated rows are not accepted)");
    long long u, v;
    try {
      u = parse_int(tokens[0]);
      v = parse_int(tokens[1]);
    } catch (const std::exception& e) {
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": " + e.what());
    }
    if (u < 0 || v < 0)
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": negative node ID");
    saw_edge_line = true;
    const int a = node_id(u);
    const int b = node_id(v);
    if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  if (!saw_edge_line) throw std::runtime_error("edge list: empty input");

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(static_cast<int>(relabel.size()), std::move(edges));
}

Graph Graph::load_edge_list(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

Graph Graph::load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list file: " + path);
  return load_edge_list(in);
}

}  // namespace glee
