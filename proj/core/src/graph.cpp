#include "jchnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "jchnet/errors.hpp"

namespace jchnet {

Graph::Graph(int n_nodes) {
  if (n_nodes < 0) throw std::invalid_argument("negative node count");
  adj_.resize(static_cast<std::size_t>(n_nodes));
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  const auto& nu = adj_[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

bool Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes())
    throw std::out_of_range("edge endpoint out of range");
  if (u == v) return false;
  auto& nu = adj_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  auto& nv = adj_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++n_edges_;
  return true;
}

bool Graph::remove_edge(int u, int v) {
  if (u == v) return false;
  auto& nu = adj_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it == nu.end() || *it != v) return false;
  nu.erase(it);
  auto& nv = adj_[v];
  nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
  --n_edges_;
  return true;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(n_edges_);
  for (int u = 0; u < num_nodes(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

DegreeStats degree_stats(const Graph& g) {
  if (g.num_nodes() == 0) throw std::invalid_argument("empty graph");
  int k_max = 0;
  double sum = 0.0, sum2 = 0.0;
  for (int u = 0; u < g.num_nodes(); ++u) {
    const int k = g.degree(u);
    k_max = std::max(k_max, k);
    sum += k;
    sum2 += double(k) * k;
  }
  const double mean = sum / g.num_nodes();
  return {k_max, mean, sum > 0 ? sum2 / sum : 0.0};
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.num_nodes(), 0);
  std::queue<int> q;
  for (int s = 0; s < g.num_nodes(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    q.push(s);
    std::vector<int> comp;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      comp.push_back(u);
      for (int v : g.neighbors(u))
        if (!seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

void save_edge_list(const Graph& g, std::ostream& os) {
  os << "# nodes=" << g.num_nodes() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

Graph load_edge_list(std::istream& is) {
  std::string line;
  long lineno = 0;
  long declared = -1;
  struct Row {
    int u, v;
    long line;
  };
  std::vector<Row> edges;
  long max_id = -1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("nodes=");
      if (pos != std::string::npos && declared < 0) {
        try {
          declared = std::stol(line.substr(pos + 6));
        } catch (const std::exception&) {
          throw parse_error("malformed nodes header", lineno);
        }
        if (declared < 0) throw parse_error("negative node count", lineno);
      }
      continue;
    }
    std::istringstream ls(line);
    long u, v;
    if (!(ls >> u >> v)) throw parse_error("expected `u v` edge line", lineno);
    std::string trailing;
    if (ls >> trailing) throw parse_error("trailing tokens on edge line", lineno);
    if (u < 0 || v < 0) throw parse_error("negative node id", lineno);
    if (u == v) throw parse_error("self-loop", lineno);
    edges.push_back({static_cast<int>(std::min(u, v)),
                     static_cast<int>(std::max(u, v)), lineno});
    max_id = std::max({max_id, u, v});
  }
  const long n = declared >= 0 ? declared : max_id + 1;
  if (max_id >= n) throw parse_error("node id exceeds declared node count", lineno);
  Graph g(static_cast<int>(n));
  for (const auto& r : edges)
    if (!g.add_edge(r.u, r.v)) throw parse_error("duplicate edge", r.line);
  return g;
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  save_edge_list(g, os);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return load_edge_list(is);
}

}  // namespace jchnet
