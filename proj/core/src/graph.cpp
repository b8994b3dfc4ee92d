#include "rigidlab/graph.hpp"

#include <algorithm>
#include <queue>

namespace rigidlab {

namespace {

// BFS over g restricted to vertices not in `banned`; returns the component
// of `start`.
std::set<int> component_avoiding(const Graph& g, int start, const std::set<int>& banned) {
  std::set<int> seen{start};
  std::queue<int> q;
  q.push(start);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.neighbors(v)) {
      if (banned.count(w) || seen.count(w)) continue;
      seen.insert(w);
      q.push(w);
    }
  }
  return seen;
}

}  // namespace

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  auto comp = component_avoiding(g, g.vertices().front(), {});
  return static_cast<int>(comp.size()) == g.vertex_count();
}

ConnectivityReport is_3_connected(const Graph& g) {
  const auto verts = g.vertices();
  const int n = static_cast<int>(verts.size());
  if (n < 4) throw std::invalid_argument("is_3_connected: need at least 4 vertices");

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int x = verts[i], y = verts[j];
      std::set<int> banned{x, y};
      int start = -1;
      for (int v : verts)
        if (!banned.count(v)) {
          start = v;
          break;
        }
      auto comp = component_avoiding(g, start, banned);
      if (static_cast<int>(comp.size()) < n - 2) {
        SeparationWitness w;
        w.pair = {x, y};
        for (int v : verts) {
          if (banned.count(v)) continue;
          (comp.count(v) ? w.part_a : w.part_b).push_back(v);
        }
        return {false, w};
      }
    }
  }
  return {true, std::nullopt};
}

namespace {

bool extend_isomorphism(const std::vector<int>& av, const std::vector<int>& bv,
                        const Graph& a, const Graph& b, std::size_t pos,
                        std::map<int, int>& fwd, std::map<int, int>& rev) {
  if (pos == av.size()) return true;
  int x = av[pos];
  for (int y : bv) {
    if (rev.count(y)) continue;
    if (a.degree(x) != b.degree(y)) continue;
    bool ok = true;
    for (const auto& [ax, by] : fwd) {
      if (a.has_edge(x, ax) != b.has_edge(y, by)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    fwd[x] = y;
    rev[y] = x;
    if (extend_isomorphism(av, bv, a, b, pos + 1, fwd, rev)) return true;
    fwd.erase(x);
    rev.erase(y);
  }
  return false;
}

}  // namespace

bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto deg_seq = [](const Graph& g) {
    std::vector<int> d;
    for (int v : g.vertices()) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (deg_seq(a) != deg_seq(b)) return false;

  // Order by decreasing degree to fail fast.
  auto av = a.vertices();
  std::sort(av.begin(), av.end(), [&](int x, int y) { return a.degree(x) > a.degree(y); });
  auto bv = b.vertices();

  std::map<int, int> fwd, rev;
  return extend_isomorphism(av, bv, a, b, 0, fwd, rev);
}

}  // namespace rigidlab
