#include "rigidlab/sparsity.hpp"

#include <algorithm>
#include <queue>

namespace rigidlab {

int freedom(const Graph& g) { return 3 * g.vertex_count() - g.edge_count(); }

bool satisfies_maxwell_count(const Graph& g) { return freedom(g) == 6; }

namespace {

struct Dinic {
  struct Arc {
    int to, rev, cap;
  };
  std::vector<std::vector<Arc>> g;
  std::vector<int> level, iter;

  explicit Dinic(int n) : g(n), level(n), iter(n) {}

  void add_arc(int a, int b, int cap) {
    g[a].push_back({b, static_cast<int>(g[b].size()), cap});
    g[b].push_back({a, static_cast<int>(g[a].size()) - 1, 0});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Arc& a : g[v])
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
    }
    return level[t] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = iter[v]; i < static_cast<int>(g[v].size()); ++i) {
      Arc& a = g[v][i];
      if (a.cap > 0 && level[v] < level[a.to]) {
        int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          g[a.to][a.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int max_flow(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      while (int f = dfs(s, t, 1 << 29)) flow += f;
    }
    return flow;
  }

  // Nodes with no residual path to the sink: the inclusion-maximal
  // source side of a minimum cut.
  std::vector<char> max_source_side(int t) const {
    std::vector<char> reaches_sink(g.size(), 0);
    reaches_sink[t] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t v = 0; v < g.size(); ++v) {
        if (reaches_sink[v]) continue;
        for (const Arc& a : g[v])
          if (a.cap > 0 && reaches_sink[a.to]) {
            reaches_sink[v] = 1;
            grew = true;
            break;
          }
      }
    }
    std::vector<char> side(g.size(), 0);
    for (std::size_t v = 0; v < g.size(); ++v) side[v] = !reaches_sink[v];
    return side;
  }
};

constexpr int kInf = 1 << 29;

}  // namespace

ExcessResult max_subgraph_excess(const Graph& g, const std::set<int>& forced) {
  for (int v : forced)
    if (!g.has_vertex(v)) throw std::invalid_argument("forced vertex not in graph");

  const auto verts = g.vertices();
  const auto edges = g.edges();
  const int n = static_cast<int>(verts.size());
  const int m = static_cast<int>(edges.size());

  std::map<int, int> vidx;
  for (int i = 0; i < n; ++i) vidx[verts[i]] = i;

  // 0 = source, 1..m edge projects, m+1..m+n vertices, m+n+1 sink.
  const int source = 0, sink = m + n + 1;
  Dinic net(m + n + 2);
  for (int i = 0; i < m; ++i) {
    net.add_arc(source, 1 + i, 1);
    net.add_arc(1 + i, m + 1 + vidx[edges[i].u], kInf);
    net.add_arc(1 + i, m + 1 + vidx[edges[i].v], kInf);
  }
  for (int i = 0; i < n; ++i)
    if (!forced.count(verts[i])) net.add_arc(m + 1 + i, sink, 3);

  const int flow = net.max_flow(source, sink);
  const auto side = net.max_source_side(sink);

  ExcessResult out;
  out.witness = forced;
  for (int i = 0; i < n; ++i)
    if (side[m + 1 + i]) out.witness.insert(verts[i]);
  out.value = m - flow - 3 * static_cast<int>(forced.size());
  return out;
}

SparsityReport is_36_sparse(const Graph& g) {
  SparsityReport report;
  report.freedom_of_whole = freedom(g);

  for (int u : g.vertices()) {
    const auto& nbrs = g.neighbors(u);
    for (auto it1 = nbrs.begin(); it1 != nbrs.end(); ++it1) {
      for (auto it2 = std::next(it1); it2 != nbrs.end(); ++it2) {
        auto res = max_subgraph_excess(g, {u, *it1, *it2});
        if (res.value >= -5) {
          report.verdict = SparsityVerdict::Violation;
          report.witness = res.witness;
          report.witness_edges = g.induced(res.witness).edge_count();
          return report;
        }
      }
    }
  }
  report.verdict =
      report.freedom_of_whole == 6 ? SparsityVerdict::Tight : SparsityVerdict::Sparse;
  return report;
}

bool is_36_tight(const Graph& g) {
  if (freedom(g) != 6) return false;
  return is_36_sparse(g).verdict == SparsityVerdict::Tight;
}

bool brute_force_sparse_oracle(const Graph& g, int max_vertices) {
  const auto verts = g.vertices();
  const int n = static_cast<int>(verts.size());
  if (n > max_vertices)
    throw std::invalid_argument("brute_force_sparse_oracle: graph too large");

  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    int size = 0, edges = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      ++size;
      for (int j = i + 1; j < n; ++j)
        if ((mask >> j & 1) && g.has_edge(verts[i], verts[j])) ++edges;
    }
    if (edges >= 2 && 3 * size - edges < 6) return false;
  }
  return true;
}

}  // namespace rigidlab
