#include "rigidlab/face_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace rigidlab {

const char* to_string(EdgeType t) {
  switch (t) {
    case EdgeType::BB: return "BB";
    case EdgeType::BH: return "BH";
    case EdgeType::HH: return "HH";
    case EdgeType::BT: return "BT";
    case EdgeType::HT: return "HT";
    case EdgeType::TT: return "TT";
  }
  return "??";
}

namespace {

// Min-rotation form without reflection; distinguishes the two faces of a
// bare cycle graph, which share the same unoriented boundary.
std::vector<int> oriented_canonical(const std::vector<int>& walk) {
  const int n = static_cast<int>(walk.size());
  if (n == 0) return {};
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (walk[i] < walk[best]) best = i;
  std::vector<int> out(n);
  for (int k = 0; k < n; ++k) out[k] = walk[(best + k) % n];
  return out;
}

}  // namespace

FaceGraph FaceGraph::make(EmbeddedGraph emb, const std::vector<LabelledFace>& labelled,
                          const FaceWalk& outer) {
  FaceGraph fg;
  fg.emb_ = std::move(emb);
  fg.faces_ = fg.emb_.trace_faces();
  fg.labels_.assign(fg.faces_.size(), std::nullopt);

  std::map<std::vector<int>, std::vector<int>> by_canon;
  for (int i = 0; i < static_cast<int>(fg.faces_.size()); ++i)
    by_canon[canonical_cycle(fg.faces_[i])].push_back(i);

  // A walk can match two faces only in a bare cycle graph; prefer the face
  // traced in the same orientation, so saved walks bind back exactly.
  auto resolve = [&](const FaceWalk& walk, bool need_unlabelled) -> int {
    auto it = by_canon.find(canonical_cycle(walk));
    if (it == by_canon.end()) return -1;
    std::vector<int> cands;
    for (int i : it->second)
      if (!need_unlabelled || !fg.labels_[i]) cands.push_back(i);
    if (cands.empty()) return -1;
    auto key = oriented_canonical(walk);
    for (int i : cands)
      if (oriented_canonical(fg.faces_[i]) == key) return i;
    return cands.front();
  };

  for (const auto& lf : labelled) {
    if (!is_proper_walk(lf.boundary))
      throw std::invalid_argument("labelled face boundary is not a proper cycle");
    if (lf.boundary.size() < 4)
      throw std::invalid_argument("labelled face must be non-triangular");
    int idx = resolve(lf.boundary, true);
    if (idx < 0)
      throw std::invalid_argument("labelled boundary is not an (unlabelled) face of the embedding");
    fg.labels_[idx] = lf.label;
  }

  for (int i = 0; i < static_cast<int>(fg.faces_.size()); ++i) {
    if (fg.faces_[i].size() != 3 && !fg.labels_[i])
      throw std::invalid_argument("non-triangular face without a label");
    if (fg.labels_[i]) fg.labelled_.push_back(i);
  }

  int ot = resolve(outer, false);
  if (ot < 0) throw std::invalid_argument("outer face is not a face");
  fg.outer_ = ot;
  return fg;
}

FaceGraph FaceGraph::sphere(EmbeddedGraph emb) {
  auto faces = emb.trace_faces();
  return make(std::move(emb), {}, faces.front());
}

std::pair<int, int> FaceGraph::type() const {
  int m = 0, n = 0;
  for (int i : labelled_) (*labels_[i] == FaceLabel::B ? m : n)++;
  return {m, n};
}

std::optional<int> FaceGraph::find_face(const FaceWalk& boundary) const {
  auto key = canonical_cycle(boundary);
  for (int i = 0; i < face_count(); ++i)
    if (canonical_cycle(faces_[i]) == key) return i;
  return std::nullopt;
}

FaceGraph FaceGraph::with_outer(int face_index) const {
  if (face_index < 0 || face_index >= face_count()) throw std::out_of_range("no such face");
  FaceGraph fg = *this;
  fg.outer_ = face_index;
  return fg;
}

namespace {

// Faces incident to each edge; every edge of a closed surface has exactly
// two incident face slots (possibly the same face twice for a bridge).
std::map<Edge, std::vector<int>> edge_face_incidence(const FaceGraph& fg) {
  std::map<Edge, std::vector<int>> inc;
  for (int i = 0; i < fg.face_count(); ++i) {
    const auto& w = fg.face(i);
    const int n = static_cast<int>(w.size());
    for (int k = 0; k < n; ++k) inc[Edge(w[k], w[(k + 1) % n])].push_back(i);
  }
  return inc;
}

}  // namespace

EdgeType classify_edge(const FaceGraph& fg, const Edge& e) {
  if (!fg.embedding().has_edge(e.u, e.v))
    throw std::invalid_argument("classify_edge: no edge " + to_string(e));
  auto inc = edge_face_incidence(fg);
  const auto& fs = inc.at(e);

  int b = 0, h = 0;
  for (int f : fs) {
    auto l = fg.label(f);
    if (l == FaceLabel::B) ++b;
    if (l == FaceLabel::H) ++h;
  }
  if (b == 2) return EdgeType::BB;
  if (b == 1 && h == 1) return EdgeType::BH;
  if (h == 2) return EdgeType::HH;
  if (b == 1) return EdgeType::BT;
  if (h == 1) return EdgeType::HT;
  return EdgeType::TT;
}

CycleSides cycle_sides(const FaceGraph& fg, const ProperCycle& cycle) {
  if (!is_proper_walk(cycle) || cycle.size() < 3)
    throw std::invalid_argument("cycle_sides: not a proper cycle");
  const int n = static_cast<int>(cycle.size());
  std::set<Edge> on_cycle;
  for (int k = 0; k < n; ++k) {
    Edge e(cycle[k], cycle[(k + 1) % n]);
    if (!fg.embedding().has_edge(e.u, e.v))
      throw std::invalid_argument("cycle_sides: " + to_string(e) + " is not an edge");
    on_cycle.insert(e);
  }

  auto inc = edge_face_incidence(fg);

  // Flood the dual graph without crossing the cycle; the side holding the
  // outer face is the outside.
  std::vector<int> region(fg.face_count(), -1);
  auto flood = [&](int start, int id) {
    std::queue<int> q;
    q.push(start);
    region[start] = id;
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      const auto& w = fg.face(f);
      const int m = static_cast<int>(w.size());
      for (int k = 0; k < m; ++k) {
        Edge e(w[k], w[(k + 1) % m]);
        if (on_cycle.count(e)) continue;
        for (int g2 : inc.at(e))
          if (region[g2] == -1) {
            region[g2] = id;
            q.push(g2);
          }
      }
    }
  };
  flood(fg.outer_face(), 0);
  int inside_seed = -1;
  for (int f = 0; f < fg.face_count(); ++f)
    if (region[f] == -1) {
      inside_seed = f;
      break;
    }
  if (inside_seed < 0)
    throw std::invalid_argument("cycle_sides: cycle does not separate the sphere");
  flood(inside_seed, 1);
  for (int f = 0; f < fg.face_count(); ++f)
    if (region[f] == -1)
      throw std::invalid_argument("cycle_sides: cycle does not separate the sphere into two discs");

  CycleSides sides;
  std::set<int> cyc_verts(cycle.begin(), cycle.end());
  for (int f : fg.labelled_faces())
    (region[f] == 1 ? sides.inside_faces : sides.outside_faces).push_back(f);
  for (int f = 0; f < fg.face_count(); ++f) {
    if (region[f] != 1) continue;
    const auto& w = fg.face(f);
    const int m = static_cast<int>(w.size());
    for (int k = 0; k < m; ++k) {
      if (!cyc_verts.count(w[k])) sides.inside_vertices.insert(w[k]);
      Edge e(w[k], w[(k + 1) % m]);
      if (!on_cycle.count(e)) sides.inside_edges.insert(e);
    }
  }
  return sides;
}

}  // namespace rigidlab
