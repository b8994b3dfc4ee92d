#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rigidlab {

/// Undirected edge with normalized endpoint order (first < second).
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw std::invalid_argument("self-loop edge " + std::to_string(a));
  }

  auto operator<=>(const Edge&) const = default;
};

inline std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

/// Simple undirected graph on integer vertex ids. Vertices are kept in a
/// sorted map so that iteration order (and hence every report derived from
/// it) is deterministic.
class Graph {
 public:
  Graph() = default;

  void add_vertex(int v) { adj_.try_emplace(v); }

  void add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("self-loop at " + std::to_string(a));
    adj_[a].insert(b);
    adj_[b].insert(a);
  }

  /// add_edge that reports whether the edge was new; used by union builders
  /// that must detect parallel edges.
  bool add_edge_checked(int a, int b) {
    if (a == b) throw std::invalid_argument("self-loop at " + std::to_string(a));
    bool fresh = adj_[a].insert(b).second;
    adj_[b].insert(a);
    return fresh;
  }

  void remove_edge(int a, int b) {
    auto it = adj_.find(a);
    if (it != adj_.end()) it->second.erase(b);
    it = adj_.find(b);
    if (it != adj_.end()) it->second.erase(a);
  }

  void remove_vertex(int v) {
    auto it = adj_.find(v);
    if (it == adj_.end()) return;
    for (int w : it->second) adj_[w].erase(v);
    adj_.erase(it);
  }

  bool has_vertex(int v) const { return adj_.count(v) != 0; }

  bool has_edge(int a, int b) const {
    auto it = adj_.find(a);
    return it != adj_.end() && it->second.count(b) != 0;
  }
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  int vertex_count() const { return static_cast<int>(adj_.size()); }

  int edge_count() const {
    std::size_t darts = 0;
    for (const auto& [v, nbrs] : adj_) darts += nbrs.size();
    return static_cast<int>(darts / 2);
  }

  int degree(int v) const {
    auto it = adj_.find(v);
    return it == adj_.end() ? 0 : static_cast<int>(it->second.size());
  }

  const std::set<int>& neighbors(int v) const {
    static const std::set<int> empty;
    auto it = adj_.find(v);
    return it == adj_.end() ? empty : it->second;
  }

  std::vector<int> vertices() const {
    std::vector<int> out;
    out.reserve(adj_.size());
    for (const auto& [v, nbrs] : adj_) out.push_back(v);
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (const auto& [v, nbrs] : adj_)
      for (int w : nbrs)
        if (v < w) out.emplace_back(v, w);
    return out;
  }

  /// Induced subgraph on a vertex subset.
  Graph induced(const std::set<int>& keep) const {
    Graph g;
    for (int v : keep)
      if (has_vertex(v)) g.add_vertex(v);
    for (const auto& [v, nbrs] : adj_) {
      if (!keep.count(v)) continue;
      for (int w : nbrs)
        if (v < w && keep.count(w)) g.add_edge(v, w);
    }
    return g;
  }

  /// Graph union on shared vertex ids.
  static Graph merge(const Graph& a, const Graph& b) {
    Graph g = a;
    for (int v : b.vertices()) g.add_vertex(v);
    for (const Edge& e : b.edges()) g.add_edge(e.u, e.v);
    return g;
  }

  int max_vertex_id() const { return adj_.empty() ? -1 : adj_.rbegin()->first; }

  bool operator==(const Graph&) const = default;

 private:
  std::map<int, std::set<int>> adj_;
};

bool is_connected(const Graph& g);

/// Witness for a failed 3-connectivity check: the separation pair and the
/// vertex sets of two parts it separates.
struct SeparationWitness {
  std::pair<int, int> pair;
  std::vector<int> part_a;
  std::vector<int> part_b;
};

struct ConnectivityReport {
  bool three_connected = false;
  std::optional<SeparationWitness> witness;
};

/// Decides 3-connectedness by exhausting separation pairs. Requires at
/// least 4 vertices.
ConnectivityReport is_3_connected(const Graph& g);

/// Backtracking graph isomorphism for desk-scale graphs.
bool are_isomorphic(const Graph& a, const Graph& b);

}  // namespace rigidlab
