#include "rigidlab/embedded_graph.hpp"

#include <algorithm>
#include <set>

namespace rigidlab {

EmbeddedGraph EmbeddedGraph::from_rotation(std::map<int, std::vector<int>> rotation) {
  EmbeddedGraph g;
  g.rot_ = std::move(rotation);

  for (const auto& [v, nbrs] : g.rot_) {
    std::set<int> seen;
    for (int w : nbrs) {
      if (w == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(v));
      if (!seen.insert(w).second)
        throw std::invalid_argument("repeated neighbor " + std::to_string(w) + " at vertex " +
                                    std::to_string(v));
      auto it = g.rot_.find(w);
      if (it == g.rot_.end() ||
          std::find(it->second.begin(), it->second.end(), v) == it->second.end())
        throw std::invalid_argument("asymmetric rotation: " + std::to_string(v) + "->" +
                                    std::to_string(w));
    }
  }
  g.trace_faces();  // genus check
  return g;
}

const std::vector<int>& EmbeddedGraph::rotation(int v) const {
  auto it = rot_.find(v);
  if (it == rot_.end()) throw std::out_of_range("no vertex " + std::to_string(v));
  return it->second;
}

bool EmbeddedGraph::has_edge(int u, int v) const {
  auto it = rot_.find(u);
  if (it == rot_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), v) != it->second.end();
}

std::vector<int> EmbeddedGraph::vertices() const {
  std::vector<int> out;
  out.reserve(rot_.size());
  for (const auto& [v, nbrs] : rot_) out.push_back(v);
  return out;
}

std::vector<Edge> EmbeddedGraph::edges() const {
  std::vector<Edge> out;
  for (const auto& [v, nbrs] : rot_)
    for (int w : nbrs)
      if (v < w) out.emplace_back(v, w);
  return out;
}

int EmbeddedGraph::edge_count() const {
  std::size_t darts = 0;
  for (const auto& [v, nbrs] : rot_) darts += nbrs.size();
  return static_cast<int>(darts / 2);
}

Graph EmbeddedGraph::abstract() const {
  Graph g;
  for (const auto& [v, nbrs] : rot_) {
    g.add_vertex(v);
    for (int w : nbrs) g.add_edge(v, w);
  }
  return g;
}

std::vector<FaceWalk> EmbeddedGraph::trace_faces() const {
  // Next dart of (u -> v) is (v -> w) with w the successor of u in the
  // rotation at v. Orbits of this map are the faces.
  std::set<std::pair<int, int>> used;
  std::vector<FaceWalk> faces;

  auto successor = [&](int v, int u) {
    const auto& r = rotation(v);
    auto it = std::find(r.begin(), r.end(), u);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    return r[(i + 1) % r.size()];
  };

  for (const auto& [v, nbrs] : rot_) {
    for (int w : nbrs) {
      if (used.count({v, w})) continue;
      FaceWalk walk;
      int a = v, b = w;
      do {
        walk.push_back(a);
        used.insert({a, b});
        int c = successor(b, a);
        a = b;
        b = c;
      } while (!(a == v && b == w));
      faces.push_back(std::move(walk));
    }
  }

  const int V = vertex_count(), E = edge_count(), F = static_cast<int>(faces.size());
  if (V - E + F != 2)
    throw GenusError(V - E + F, "rotation system is not planar: V-E+F = " +
                                    std::to_string(V - E + F));
  return faces;
}

EmbeddedGraph EmbeddedGraph::contract_edge(const Edge& e) const {
  const int u = e.u, v = e.v;
  if (!has_edge(u, v)) throw std::invalid_argument("contract_edge: no edge " + to_string(e));

  // Facial collapse partners: predecessor/successor of v around u (and
  // symmetrically of u around v) bound the two faces at uv.
  const auto& ru = rotation(u);
  const auto& rv = rotation(v);
  auto index_of = [](const std::vector<int>& r, int x) {
    return static_cast<std::size_t>(std::find(r.begin(), r.end(), x) - r.begin());
  };
  const std::size_t iu = index_of(ru, v), iv = index_of(rv, u);
  const int nu = static_cast<int>(ru.size()), nv = static_cast<int>(rv.size());

  std::set<int> facial;
  {
    // Face on one side of uv is u,v,x with x = succ_v(u) = pred_u(v); the
    // other is v,u,y with y = succ_u(v) = pred_v(u). Only true triangles
    // (third vertex adjacent to both) collapse.
    int x = rv[(iv + 1) % nv];
    if (ru[(iu + nu - 1) % nu] == x && has_edge(u, x) && has_edge(v, x)) facial.insert(x);
    int y = ru[(iu + 1) % nu];
    if (rv[(iv + nv - 1) % nv] == y && has_edge(u, y) && has_edge(v, y)) facial.insert(y);
  }

  for (int z : rotation(u)) {
    if (z == v || facial.count(z)) continue;
    if (has_edge(v, z))
      throw ContractionError(z, "contracting " + to_string(e) +
                                    " duplicates edge to shared neighbor " + std::to_string(z));
  }

  // Merged rotation: u's fan starting after v, then v's fan starting after
  // u; the facial partners appear twice in cyclically adjacent positions
  // and are deduplicated.
  std::vector<int> merged;
  for (int k = 1; k < nu; ++k) merged.push_back(ru[(iu + k) % nu]);
  for (int k = 1; k < nv; ++k) merged.push_back(rv[(iv + k) % nv]);
  std::vector<int> dedup;
  for (std::size_t k = 0; k < merged.size(); ++k) {
    if (!dedup.empty() && dedup.back() == merged[k]) continue;
    dedup.push_back(merged[k]);
  }
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();

  std::map<int, std::vector<int>> rot;
  for (const auto& [w, r] : rot_) {
    if (w == u || w == v) continue;
    std::vector<int> nr;
    for (int z : r) {
      int t = (z == v) ? u : z;
      if (!nr.empty() && nr.back() == t) continue;
      nr.push_back(t);
    }
    while (nr.size() > 1 && nr.front() == nr.back()) nr.pop_back();
    rot[w] = std::move(nr);
  }
  rot[u] = std::move(dedup);

  return from_rotation(std::move(rot));
}

EmbeddedGraph EmbeddedGraph::split_vertex(int v, int x, int y, int fresh_id) const {
  if (has_vertex(fresh_id)) throw std::invalid_argument("split_vertex: id in use");
  if (!has_edge(v, x) || !has_edge(v, y) || x == y)
    throw std::invalid_argument("split_vertex: anchors must be distinct neighbors of v");

  const auto& r = rotation(v);
  const int n = static_cast<int>(r.size());
  auto index_of = [&](int z) {
    return static_cast<int>(std::find(r.begin(), r.end(), z) - r.begin());
  };
  const int ix = index_of(x), iy = index_of(y);

  // Arc from x to y exclusive stays with v; complementary arc goes to the
  // fresh vertex.
  std::vector<int> keep, moved;
  for (int k = (ix + 1) % n; k != iy; k = (k + 1) % n) keep.push_back(r[k]);
  for (int k = (iy + 1) % n; k != ix; k = (k + 1) % n) moved.push_back(r[k]);

  std::map<int, std::vector<int>> rot = rot_;
  std::vector<int> rv{x};
  rv.insert(rv.end(), keep.begin(), keep.end());
  rv.push_back(y);
  rv.push_back(fresh_id);
  std::vector<int> rw{y};
  rw.insert(rw.end(), moved.begin(), moved.end());
  rw.push_back(x);
  rw.push_back(v);
  rot[v] = std::move(rv);
  rot[fresh_id] = std::move(rw);

  for (int z : moved) {
    auto& rz = rot[z];
    std::replace(rz.begin(), rz.end(), v, fresh_id);
  }
  // x sees the new vertex right after v in ccw order; y right before.
  {
    auto& rx = rot[x];
    auto it = std::find(rx.begin(), rx.end(), v);
    rx.insert(it + 1, fresh_id);
    auto& ry = rot[y];
    it = std::find(ry.begin(), ry.end(), v);
    ry.insert(it, fresh_id);
  }

  return from_rotation(std::move(rot));
}

std::vector<int> canonical_cycle(const std::vector<int>& walk) {
  const int n = static_cast<int>(walk.size());
  if (n == 0) return {};
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (walk[i] < walk[best]) best = i;

  std::vector<int> fwd(n), bwd(n);
  for (int k = 0; k < n; ++k) {
    fwd[k] = walk[(best + k) % n];
    bwd[k] = walk[(best - k + n) % n];
  }
  return std::min(fwd, bwd);
}

bool is_proper_walk(const std::vector<int>& walk) {
  std::set<int> seen(walk.begin(), walk.end());
  return seen.size() == walk.size();
}

}  // namespace rigidlab
