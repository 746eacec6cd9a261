#ifndef JCHNET_GRAPH_HPP
#define JCHNET_GRAPH_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jchnet {

/// Simple undirected graph with dense node ids 0..n-1.
/// Neighbor lists are kept sorted; no self-loops, no multi-edges.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n_nodes);

  int num_nodes() const noexcept { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const noexcept { return n_edges_; }

  bool has_edge(int u, int v) const;
  /// Inserts {u,v}; returns false on self-loop or existing edge.
  bool add_edge(int u, int v);
  bool remove_edge(int u, int v);

  int degree(int u) const { return static_cast<int>(adj_[u].size()); }
  std::span<const int> neighbors(int u) const { return adj_[u]; }

  /// Canonical edge list: u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::vector<int>> adj_;
  std::size_t n_edges_ = 0;
};

struct DegreeStats {
  int k_max;
  double mean_k;
  double second_moment_ratio;  // <k^2>/<k>
};

DegreeStats degree_stats(const Graph& g);

/// Connected components as lists of node ids (BFS order within a component).
std::vector<std::vector<int>> connected_components(const Graph& g);

/// Edge-list text format: `# nodes=<N>` first, one `u v` line per edge with
/// u < v, 0-indexed. Further `#` lines are comments.
void save_edge_list(const Graph& g, std::ostream& os);
Graph load_edge_list(std::istream& is);

void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

}  // namespace jchnet

#endif
