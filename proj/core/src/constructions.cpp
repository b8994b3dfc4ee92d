#include "rigidlab/constructions.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <random>
#include <sstream>

#include "rigidlab/rigidity.hpp"
#include "rigidlab/sparsity.hpp"

namespace rigidlab {

SimplicialDisc SimplicialDisc::from_faces(const EmbeddedGraph& sphere,
                                          const std::set<int>& region) {
  const auto faces = sphere.trace_faces();
  if (region.empty() || region.size() >= faces.size())
    throw std::invalid_argument("disc region must be a proper nonempty face subset");
  for (int f : region)
    if (f < 0 || f >= static_cast<int>(faces.size()))
      throw std::out_of_range("disc region: bad face index");

  // Count region faces incident to every edge.
  std::map<Edge, int> inside_count;
  std::map<Edge, std::vector<int>> incident;
  for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
    const auto& w = faces[i];
    const int n = static_cast<int>(w.size());
    for (int k = 0; k < n; ++k) {
      Edge e(w[k], w[(k + 1) % n]);
      incident[e].push_back(i);
      if (region.count(i)) inside_count[e]++;
    }
  }

  // Region must be face-connected.
  {
    std::set<int> seen{*region.begin()};
    std::queue<int> q;
    q.push(*region.begin());
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      const auto& w = faces[f];
      const int n = static_cast<int>(w.size());
      for (int k = 0; k < n; ++k) {
        for (int g2 : incident[Edge(w[k], w[(k + 1) % n])]) {
          if (region.count(g2) && !seen.count(g2)) {
            seen.insert(g2);
            q.push(g2);
          }
        }
      }
    }
    if (seen.size() != region.size())
      throw std::invalid_argument("disc region is not face-connected");
  }

  SimplicialDisc disc;
  disc.face_indices = region;

  std::map<int, std::vector<int>> boundary_adj;  // vertex -> boundary neighbors
  for (const auto& [e, cnt] : inside_count) {
    if (cnt == 1) {
      boundary_adj[e.u].push_back(e.v);
      boundary_adj[e.v].push_back(e.u);
    } else if (cnt == 2) {
      disc.interior_edges.insert(e);
    }
  }
  for (const auto& [v, nbrs] : boundary_adj)
    if (nbrs.size() != 2) throw std::invalid_argument("disc region has a pinched boundary");
  if (boundary_adj.empty()) throw std::invalid_argument("disc region has no boundary");

  // Walk the boundary cycle.
  int start = boundary_adj.begin()->first;
  FaceWalk walk{start};
  int prev = -1, cur = start;
  while (true) {
    const auto& nb = boundary_adj[cur];
    int next = (nb[0] == prev) ? nb[1] : nb[0];
    if (next == start) break;
    walk.push_back(next);
    prev = cur;
    cur = next;
  }
  if (walk.size() != boundary_adj.size() || !is_proper_walk(walk))
    throw std::invalid_argument("disc region boundary is not a single proper cycle");
  if (walk.size() < 4)
    throw std::invalid_argument("disc boundary must have length at least 4");
  disc.boundary = walk;

  std::set<int> boundary_set(walk.begin(), walk.end());
  for (int f : region)
    for (int v : faces[f])
      if (!boundary_set.count(v)) disc.interior_vertices.insert(v);

  return disc;
}

bool is_triangulated_sphere(const EmbeddedGraph& g) {
  if (g.vertex_count() < 3) return false;
  std::vector<FaceWalk> faces;
  try {
    faces = g.trace_faces();
  } catch (const GenusError&) {
    return false;
  }
  for (const auto& f : faces)
    if (f.size() != 3) return false;
  if (g.vertex_count() == 3) return true;
  return is_3_connected(g.abstract()).three_connected;
}

EmbeddedGraph random_triangulated_sphere(int n, std::uint64_t seed, SphereMoves moves) {
  if (n < 4) throw std::invalid_argument("triangulated sphere needs n >= 4");
  std::mt19937_64 rng(seed);

  EmbeddedGraph g = tetrahedron();
  int next_id = 4;
  while (g.vertex_count() < n) {
    const bool stellate =
        moves == SphereMoves::StellationsOnly || (rng() % 100) < 30;
    if (stellate) {
      auto faces = g.trace_faces();
      const auto& f = faces[rng() % faces.size()];
      // New vertex inside the face, joined to its three corners.
      auto rot = g.rotation_map();
      const int a = f[0], b = f[1], c = f[2];
      rot[next_id] = {b, a, c};
      auto insert_between = [&](int at, int after, int who) {
        auto& r = rot[at];
        auto it = std::find(r.begin(), r.end(), after);
        r.insert(it + 1, who);
      };
      // Face darts a->b, b->c, c->a; the new vertex replaces the face
      // corner-by-corner: at b the successor of a becomes the new vertex.
      insert_between(b, a, next_id);
      insert_between(c, b, next_id);
      insert_between(a, c, next_id);
      g = EmbeddedGraph::from_rotation(std::move(rot));
    } else {
      auto verts = g.vertices();
      const int v = verts[rng() % verts.size()];
      const auto& r = g.rotation(v);
      const int d = static_cast<int>(r.size());
      int i = static_cast<int>(rng() % d);
      int j = static_cast<int>(rng() % d);
      if (i == j) continue;
      g = g.split_vertex(v, r[i], r[j], next_id);
    }
    ++next_id;
  }
  return g;
}

FaceGraph carve_face_graph(const EmbeddedGraph& sphere, const std::vector<SimplicialDisc>& discs,
                           const std::vector<FaceLabel>& labels) {
  if (discs.size() != labels.size())
    throw std::invalid_argument("carve_face_graph: one label per disc");
  if (!is_triangulated_sphere(sphere))
    throw std::invalid_argument("carve_face_graph: host is not a triangulated sphere");

  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      for (const Edge& e : discs[i].interior_edges)
        if (discs[j].interior_edges.count(e))
          throw std::invalid_argument("discs share interior edge " + to_string(e));
      for (int v : discs[j].boundary)
        if (discs[i].interior_vertices.count(v))
          throw std::invalid_argument("disc boundary passes through another disc interior");
      for (int v : discs[i].boundary)
        if (discs[j].interior_vertices.count(v))
          throw std::invalid_argument("disc boundary passes through another disc interior");
    }
  }

  std::set<int> gone_vertices;
  std::set<Edge> gone_edges;
  for (const auto& d : discs) {
    gone_vertices.insert(d.interior_vertices.begin(), d.interior_vertices.end());
    gone_edges.insert(d.interior_edges.begin(), d.interior_edges.end());
  }

  std::map<int, std::vector<int>> rot;
  for (const auto& [v, r] : sphere.rotation_map()) {
    if (gone_vertices.count(v)) continue;
    std::vector<int> nr;
    for (int w : r) {
      if (gone_vertices.count(w) || gone_edges.count(Edge(v, w))) continue;
      nr.push_back(w);
    }
    rot[v] = std::move(nr);
  }

  std::vector<LabelledFace> labelled;
  for (std::size_t i = 0; i < discs.size(); ++i)
    labelled.push_back({discs[i].boundary, labels[i]});

  auto emb = EmbeddedGraph::from_rotation(std::move(rot));
  auto faces = emb.trace_faces();

  // Default outer face: the unique B face when there is exactly one,
  // otherwise the first traced face.
  FaceWalk outer = faces.front();
  int b_count = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == FaceLabel::B) {
      ++b_count;
      outer = discs[i].boundary;
    }
  if (b_count != 1) outer = faces.front();

  return FaceGraph::make(std::move(emb), labelled, outer);
}

AssemblyOutcome BlockHoleGraph::try_assemble(FaceGraph base, std::vector<Block> blocks) {
  Graph u = base.embedding().abstract();
  const auto base_vertex_list = u.vertices();
  std::set<int> base_vertices(base_vertex_list.begin(), base_vertex_list.end());
  std::map<Edge, int> owner;  // first owner of each added edge; -1 = base
  for (const Edge& e : u.edges()) owner[e] = -1;
  std::set<int> used_interior;

  std::vector<ParallelEdgeWitness> parallels;

  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& blk = blocks[bi];
    if (blk.face < 0 || blk.face >= base.face_count() ||
        base.label(blk.face) != FaceLabel::B)
      throw std::invalid_argument("block " + std::to_string(bi) + " not attached to a B face");

    const auto& boundary = base.face(blk.face);
    const int r = static_cast<int>(boundary.size());
    std::set<int> bverts(boundary.begin(), boundary.end());
    std::set<Edge> bedges;
    for (int k = 0; k < r; ++k) bedges.insert(Edge(boundary[k], boundary[(k + 1) % r]));

    for (int v : bverts)
      if (!blk.graph.has_vertex(v))
        throw std::invalid_argument("block misses boundary vertex " + std::to_string(v));
    for (const Edge& e : bedges)
      if (!blk.graph.has_edge(e))
        throw std::invalid_argument("block misses boundary edge " + to_string(e));

    for (int v : blk.graph.vertices()) {
      if (bverts.count(v)) continue;
      if (base_vertices.count(v))
        throw std::invalid_argument("block interior vertex " + std::to_string(v) +
                                    " collides with the face graph");
      if (!used_interior.insert(v).second)
        throw std::invalid_argument("block interiors overlap at vertex " + std::to_string(v));
    }

    for (const Edge& e : blk.graph.edges()) {
      if (bedges.count(e)) continue;  // shared attachment boundary
      auto it = owner.find(e);
      if (it != owner.end()) {
        parallels.push_back({e, it->second, static_cast<int>(bi)});
        continue;
      }
      u.add_edge(e.u, e.v);
      owner[e] = static_cast<int>(bi);
    }
    for (int v : blk.graph.vertices()) u.add_vertex(v);
  }

  AssemblyOutcome out;
  out.parallel_edges = std::move(parallels);
  if (out.parallel_edges.empty()) {
    BlockHoleGraph bh;
    bh.base_ = std::move(base);
    bh.blocks_ = std::move(blocks);
    bh.union_ = std::move(u);
    out.graph = std::move(bh);
  }
  return out;
}

BlockHoleGraph BlockHoleGraph::assemble(FaceGraph base, std::vector<Block> blocks) {
  auto out = try_assemble(std::move(base), std::move(blocks));
  if (!out.ok()) {
    std::ostringstream msg;
    msg << "block and hole graph is not simple:";
    for (const auto& w : out.parallel_edges)
      msg << " " << to_string(w.edge) << " (blocks " << w.first_block << "," << w.second_block
          << ")";
    throw std::invalid_argument(msg.str());
  }
  return std::move(*out.graph);
}

std::vector<int> BlockHoleGraph::block_interior_vertices(int i) const {
  const Block& blk = blocks_.at(i);
  const auto& boundary = base_.face(blk.face);
  std::set<int> bv(boundary.begin(), boundary.end());
  std::vector<int> out;
  for (int v : blk.graph.vertices())
    if (!bv.count(v)) out.push_back(v);
  return out;
}

BlockHoleGraph discus_and_hole(const FaceGraph& fg) {
  std::vector<Block> blocks;
  const int base_max = fg.embedding().max_vertex_id();
  int k = 0;
  for (int i : fg.labelled_faces()) {
    if (fg.label(i) != FaceLabel::B) continue;
    const auto& w = fg.face(i);
    const int r = static_cast<int>(w.size());
    const int p1 = base_max + 1 + 2 * k, p2 = base_max + 2 + 2 * k;
    Block blk;
    blk.face = i;
    blk.certified = true;  // the discus is a bipyramid over the boundary
    for (int t = 0; t < r; ++t) {
      blk.graph.add_edge(w[t], w[(t + 1) % r]);
      blk.graph.add_edge(w[t], p1);
      blk.graph.add_edge(w[t], p2);
    }
    blocks.push_back(std::move(blk));
    ++k;
  }
  return BlockHoleGraph::assemble(fg, std::move(blocks));
}

namespace {

// Chords of a random triangulation of the polygon w; the side w[0]-w[last]
// is treated as an edge of the polygon.
std::vector<Edge> polygon_triangulation(const FaceWalk& w, std::mt19937_64& rng) {
  std::vector<Edge> chords;
  std::function<void(int, int)> rec = [&](int lo, int hi) {
    if (hi - lo < 2) return;
    int k = lo + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo - 1));
    if (k - lo >= 2) chords.emplace_back(w[lo], w[k]);
    if (hi - k >= 2) chords.emplace_back(w[k], w[hi]);
    rec(lo, k);
    rec(k, hi);
  };
  rec(0, static_cast<int>(w.size()) - 1);
  return chords;
}

std::vector<Edge> polygon_fan(const FaceWalk& w, int apex_index) {
  std::vector<Edge> chords;
  const int r = static_cast<int>(w.size());
  for (int k = 2; k <= r - 2; ++k) chords.emplace_back(w[apex_index], w[(apex_index + k) % r]);
  return chords;
}

}  // namespace

AssemblyOutcome double_disc_blocks(const FaceGraph& fg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Block> blocks;
  for (int i : fg.labelled_faces()) {
    if (fg.label(i) != FaceLabel::B) continue;
    const auto& w = fg.face(i);
    const int r = static_cast<int>(w.size());

    std::vector<Edge> t1 = polygon_triangulation(w, rng);
    std::vector<Edge> t2;
    bool disjoint = false;
    for (int attempt = 0; attempt < 64 && !disjoint; ++attempt) {
      t2 = polygon_triangulation(w, rng);
      disjoint = true;
      for (const Edge& e : t2)
        if (std::find(t1.begin(), t1.end(), e) != t1.end()) {
          disjoint = false;
          break;
        }
    }
    if (!disjoint) {
      // Fans from two adjacent boundary vertices never share a chord.
      t1 = polygon_fan(w, 0);
      t2 = polygon_fan(w, 1);
    }

    Block blk;
    blk.face = i;
    blk.certified = true;  // two discs over a common boundary: a triangulated sphere
    for (int t = 0; t < r; ++t) blk.graph.add_edge(w[t], w[(t + 1) % r]);
    for (const Edge& e : t1) blk.graph.add_edge(e.u, e.v);
    for (const Edge& e : t2) blk.graph.add_edge(e.u, e.v);
    blocks.push_back(std::move(blk));
  }
  return BlockHoleGraph::try_assemble(fg, std::move(blocks));
}

BlockHoleGraph substitute_block(const BlockHoleGraph& bh, int block_index, const Block& k_new) {
  if (block_index < 0 || block_index >= static_cast<int>(bh.blocks().size()))
    throw std::out_of_range("substitute_block: no such block");
  const Block& old = bh.blocks()[block_index];

  const auto& boundary = bh.base().face(old.face);
  std::set<int> bverts(boundary.begin(), boundary.end());

  // Substitution keeps the attachment boundary and forbids new
  // chords between boundary vertices.
  for (const Edge& e : k_new.graph.edges()) {
    if (bverts.count(e.u) && bverts.count(e.v) && !bh.base().embedding().has_edge(e.u, e.v))
      throw std::invalid_argument("substitute_block: chord " + to_string(e) +
                                  " between boundary vertices");
  }
  if (!is_36_tight(k_new.graph))
    throw std::invalid_argument("substitute_block: replacement block is not (3,6)-tight");
  if (!k_new.certified) {
    auto rep = is_minimally_3_rigid(k_new.graph);
    if (rep.verdict != RankVerdict::Isostatic)
      throw std::invalid_argument("substitute_block: replacement block is not isostatic (" +
                                  std::string(to_string(rep.verdict)) + ")");
  }

  std::vector<Block> blocks = bh.blocks();
  blocks[block_index] = k_new;
  blocks[block_index].face = old.face;
  return BlockHoleGraph::assemble(bh.base(), std::move(blocks));
}

FaceGraph transpose_labels(const FaceGraph& fg) {
  std::vector<LabelledFace> labelled;
  for (int i : fg.labelled_faces()) {
    FaceLabel flipped = fg.label(i) == FaceLabel::B ? FaceLabel::H : FaceLabel::B;
    labelled.push_back({fg.face(i), flipped});
  }
  return FaceGraph::make(fg.embedding(), labelled, fg.face(fg.outer_face()));
}

EmbeddedGraph tetrahedron() {
  return EmbeddedGraph::from_rotation({
      {0, {1, 2, 3}},
      {1, {2, 0, 3}},
      {2, {3, 0, 1}},
      {3, {1, 0, 2}},
  });
}

EmbeddedGraph octahedron() {
  // Antiprism drawing: outer triangle 0,1,2 and inner triangle 3,4,5 with
  // spokes 0-4, 0-5, 1-3, 1-4, 2-3, 2-5.
  return EmbeddedGraph::from_rotation({
      {0, {1, 4, 5, 2}},
      {1, {2, 3, 4, 0}},
      {2, {0, 5, 3, 1}},
      {3, {5, 4, 1, 2}},
      {4, {5, 0, 1, 3}},
      {5, {0, 4, 3, 2}},
  });
}

EmbeddedGraph triangle_k3() {
  return EmbeddedGraph::from_rotation({
      {0, {1, 2}},
      {1, {2, 0}},
      {2, {0, 1}},
  });
}

FaceGraph cycle_face_graph(int r) {
  if (r < 4) throw std::invalid_argument("cycle_face_graph: need r >= 4");
  std::map<int, std::vector<int>> rot;
  for (int i = 0; i < r; ++i) rot[i] = {(i + r - 1) % r, (i + 1) % r};
  auto emb = EmbeddedGraph::from_rotation(std::move(rot));
  auto faces = emb.trace_faces();  // the two r-gonal sides

  std::vector<LabelledFace> labelled{{faces[0], FaceLabel::B}, {faces[1], FaceLabel::H}};
  return FaceGraph::make(std::move(emb), labelled, faces[0]);
}

Graph double_banana() {
  Graph g;
  // Banana: K5 minus the edge {0,1}; the two bananas share exactly {0,1}.
  auto add_banana = [&](const std::array<int, 5>& v) {
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) {
        if ((v[i] == 0 && v[j] == 1) || (v[i] == 1 && v[j] == 0)) continue;
        g.add_edge(v[i], v[j]);
      }
  };
  add_banana({0, 1, 2, 3, 4});
  add_banana({0, 1, 5, 6, 7});
  return g;
}

}  // namespace rigidlab
