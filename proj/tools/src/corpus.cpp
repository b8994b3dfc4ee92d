#include "corpus.hpp"

#include <algorithm>
#include <random>

#include "rigidlab/reduction.hpp"
#include "rigidlab/sparsity.hpp"

namespace rigidlab::corpus {

std::optional<FaceGraph> face_graph_split(const FaceGraph& fg, int v, int anchor_x, int anchor_y,
                                          int fresh_id) {
  EmbeddedGraph emb;
  try {
    emb = fg.embedding().split_vertex(v, anchor_x, anchor_y, fresh_id);
  } catch (const std::exception&) {
    return std::nullopt;
  }

  // v keeps the ccw arc from anchor_x to anchor_y; a face at v follows the
  // fresh vertex exactly when its slot (the walk predecessor of v) lies on
  // the complementary arc.
  const auto& rot = fg.embedding().rotation(v);
  const int d = static_cast<int>(rot.size());
  const int ix = static_cast<int>(std::find(rot.begin(), rot.end(), anchor_x) - rot.begin());
  std::set<int> kept_slot_starts{anchor_x};
  for (int k = (ix + 1) % d; rot[k] != anchor_y; k = (k + 1) % d) kept_slot_starts.insert(rot[k]);

  auto relocated = [&](FaceWalk w) {
    auto it = std::find(w.begin(), w.end(), v);
    if (it == w.end()) return w;
    const int n = static_cast<int>(w.size());
    const int pos = static_cast<int>(it - w.begin());
    const int pred = w[(pos + n - 1) % n];
    if (!kept_slot_starts.count(pred)) w[pos] = fresh_id;
    return w;
  };

  std::vector<LabelledFace> labelled;
  for (int i : fg.labelled_faces()) labelled.push_back({relocated(fg.face(i)), *fg.label(i)});

  try {
    return FaceGraph::make(std::move(emb), labelled, relocated(fg.face(fg.outer_face())));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

namespace {

// Fan of neighbors at u strictly between the two boundary neighbors,
// running away from the face slot occupied by `face_walk`.
std::vector<int> fan_outside_face(const EmbeddedGraph& g, const FaceWalk& walk, int pos) {
  const int r = static_cast<int>(walk.size());
  const int u = walk[pos];
  const int prev = walk[(pos + r - 1) % r];
  const int next = walk[(pos + 1) % r];
  // Face slot convention: for the traced walk, the successor of prev at u
  // is next. The fan outside the face runs from next around to prev.
  const auto& rot = g.rotation(u);
  const int d = static_cast<int>(rot.size());
  int start = static_cast<int>(std::find(rot.begin(), rot.end(), next) - rot.begin());
  std::vector<int> fan;
  for (int k = 1; k < d; ++k) {
    int w = rot[(start + k) % d];
    if (w == prev) break;
    fan.push_back(w);
  }
  return fan;
}

}  // namespace

std::optional<FaceGraph> paste_into_hole(const FaceGraph& host, int hole_face,
                                         const FaceGraph& guest) {
  if (host.label(hole_face) != FaceLabel::H) return std::nullopt;
  const auto [gm, gn] = guest.type();
  if (gm != 1) return std::nullopt;
  int guest_b = -1;
  for (int i : guest.labelled_faces())
    if (guest.label(i) == FaceLabel::B) guest_b = i;

  const FaceWalk hole = host.face(hole_face);
  const FaceWalk gb = guest.face(guest_b);
  const int r = static_cast<int>(hole.size());
  if (static_cast<int>(gb.size()) != r) return std::nullopt;

  // Fresh ids for the guest's non-boundary vertices.
  std::set<int> gb_set(gb.begin(), gb.end());
  int fresh = host.embedding().max_vertex_id() + 1;
  std::map<int, int> remap;
  for (int v : guest.embedding().vertices())
    if (!gb_set.count(v)) remap[v] = fresh++;

  // Try every alignment of the two boundary cycles, both orientations and
  // both fan orders; validation keeps the first that embeds cleanly.
  for (int orient = 0; orient < 2; ++orient) {
    for (int offset = 0; offset < r; ++offset) {
      for (int flip = 0; flip < 2; ++flip) {
        std::map<int, int> m = remap;
        for (int k = 0; k < r; ++k) {
          int idx = orient == 0 ? (offset + k) % r : (offset - k + 2 * r) % r;
          m[gb[k]] = hole[idx];
        }

        std::map<int, std::vector<int>> rot;
        for (const auto& [v, nbrs] : host.embedding().rotation_map()) rot[v] = nbrs;
        bool bad = false;
        // Interior guest vertices carry their fans over wholesale.
        for (const auto& [v, nbrs] : guest.embedding().rotation_map()) {
          if (gb_set.count(v)) continue;
          std::vector<int> nr;
          for (int w : nbrs) nr.push_back(m.at(w));
          if (flip) std::reverse(nr.begin(), nr.end());
          rot[m.at(v)] = std::move(nr);
        }
        // Boundary vertices splice the guest fan into the hole slot.
        for (int k = 0; k < r && !bad; ++k) {
          const int hv = m.at(gb[k]);
          int hpos = static_cast<int>(std::find(hole.begin(), hole.end(), hv) - hole.begin());
          auto fan = fan_outside_face(guest.embedding(), gb, k);
          if (fan.empty()) continue;
          auto& hr = rot[hv];
          const int hprev = hole[(hpos + r - 1) % r];
          auto it = std::find(hr.begin(), hr.end(), hprev);
          if (it == hr.end()) {
            bad = true;
            break;
          }
          std::vector<int> mapped;
          for (int w : fan) mapped.push_back(m.at(w));
          if (flip) std::reverse(mapped.begin(), mapped.end());
          for (int w : mapped)
            if (std::find(hr.begin(), hr.end(), w) != hr.end()) bad = true;
          if (bad) break;
          hr.insert(it + 1, mapped.begin(), mapped.end());
        }
        if (bad) continue;

        EmbeddedGraph emb;
        try {
          emb = EmbeddedGraph::from_rotation(std::move(rot));
        } catch (const std::exception&) {
          continue;
        }

        std::vector<LabelledFace> labelled;
        for (int i : host.labelled_faces()) {
          if (i == hole_face) continue;
          labelled.push_back({host.face(i), *host.label(i)});
        }
        for (int i : guest.labelled_faces()) {
          if (i == guest_b) continue;
          FaceWalk w;
          for (int v : guest.face(i)) w.push_back(m.at(v));
          labelled.push_back({w, *guest.label(i)});
        }
        try {
          FaceGraph out =
              FaceGraph::make(std::move(emb), labelled, host.face(host.outer_face()));
          if (in_tight_class(out)) return out;
        } catch (const std::exception&) {
          continue;
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

// Grows a face graph by random planar splits, keeping only tight results.
FaceGraph grow_by_splits(FaceGraph fg, std::mt19937_64& rng, int target_vertices) {
  int guard = 0;
  while (fg.embedding().vertex_count() < target_vertices && guard++ < 300) {
    auto verts = fg.embedding().vertices();
    const int v = verts[rng() % verts.size()];
    const auto& rot = fg.embedding().rotation(v);
    const int d = static_cast<int>(rot.size());
    const int i = static_cast<int>(rng() % d);
    const int j = static_cast<int>(rng() % d);
    if (i == j) continue;
    const int fresh = fg.embedding().max_vertex_id() + 1;
    auto split = face_graph_split(fg, v, rot[i], rot[j], fresh);
    if (!split) continue;
    if (!in_tight_class(*split)) continue;
    fg = std::move(*split);
  }
  return fg;
}

}  // namespace

FaceGraph hexagonal_drum_fixture() {
  std::map<int, std::vector<int>> rot;
  for (int i = 0; i < 6; ++i) {
    rot[i] = {(i + 1) % 6, i + 6, (i + 5) % 6};
    rot[i + 6] = {i, (i + 1) % 6 + 6, (i + 5) % 6 + 6};
  }
  auto emb = EmbeddedGraph::from_rotation(std::move(rot));
  auto faces = emb.trace_faces();
  std::vector<LabelledFace> labelled;
  FaceWalk outer;
  for (const auto& f : faces) {
    labelled.push_back({f, f.size() == 6 ? FaceLabel::B : FaceLabel::H});
    if (f.size() == 6) outer = f;
  }
  return FaceGraph::make(std::move(emb), labelled, outer);
}

FaceGraph pentagon_two_holes() {
  std::map<int, std::vector<int>> rot;
  for (int i = 0; i < 5; ++i) rot[i] = {6, (i + 1) % 5, 5, (i + 4) % 5};
  rot[5] = {0, 1, 2, 3, 4};
  rot[6] = {0, 4, 3, 2, 1};
  auto sphere = EmbeddedGraph::from_rotation(std::move(rot));
  auto faces = sphere.trace_faces();

  auto region = [&](int apex, std::set<int> equator) {
    std::set<int> out;
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
      std::set<int> fv(faces[i].begin(), faces[i].end());
      if (!fv.count(apex)) continue;
      int hits = 0;
      for (int v : equator)
        if (fv.count(v)) ++hits;
      if (hits == 2) out.insert(i);
    }
    return out;
  };

  auto block = SimplicialDisc::from_faces(sphere, region(5, {0, 1, 2, 3, 4}));
  auto hole1 = SimplicialDisc::from_faces(sphere, region(6, {0, 1, 2}));
  auto hole2 = SimplicialDisc::from_faces(sphere, region(6, {2, 3, 4}));
  return carve_face_graph(sphere, {block, hole1, hole2},
                          {FaceLabel::B, FaceLabel::H, FaceLabel::H});
}

FaceGraph tight_instance(std::uint64_t seed, int target_vertices) {
  std::mt19937_64 rng(seed);
  FaceGraph fg = (rng() % 4 == 0) ? pentagon_two_holes()
                                  : cycle_face_graph(4 + static_cast<int>(rng() % 3));
  fg = grow_by_splits(std::move(fg), rng,
                      std::max(4, target_vertices / 2 + static_cast<int>(rng() % 3)));

  // Occasionally fill a hole with an independently grown single-block
  // instance of the matching boundary length (the inverse of a separating
  // cycle division); then keep splitting to the target size.
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (fg.embedding().vertex_count() >= target_vertices || rng() % 2) break;
    std::vector<int> holes;
    for (int i : fg.labelled_faces())
      if (fg.label(i) == FaceLabel::H) holes.push_back(i);
    if (holes.empty()) break;
    const int hole = holes[rng() % holes.size()];
    const int hl = fg.face_length(hole);
    if (hl < 4 || hl > 6) continue;
    std::mt19937_64 guest_rng(rng());
    FaceGraph guest = (hl == 5 && rng() % 2) ? pentagon_two_holes() : cycle_face_graph(hl);
    guest = grow_by_splits(std::move(guest), guest_rng, 4 + static_cast<int>(rng() % 4));
    if (auto pasted = paste_into_hole(fg, hole, guest)) fg = std::move(*pasted);
  }
  return grow_by_splits(std::move(fg), rng, target_vertices);
}

std::optional<FaceGraph> random_carved_face_graph(std::uint64_t seed, int sphere_vertices,
                                                  int num_blocks, int num_holes) {
  std::mt19937_64 rng(seed);
  auto sphere = random_triangulated_sphere(sphere_vertices, rng());
  auto faces = sphere.trace_faces();
  const int total = num_blocks + num_holes;

  for (int attempt = 0; attempt < 40; ++attempt) {
    std::set<int> used;
    std::vector<SimplicialDisc> discs;
    bool ok = true;
    for (int d = 0; d < total && ok; ++d) {
      // Grow a small random face-connected region disjoint from the others.
      std::set<int> region;
      int start = static_cast<int>(rng() % faces.size());
      if (used.count(start)) {
        ok = false;
        break;
      }
      region.insert(start);
      const int grow = 1 + static_cast<int>(rng() % 3);
      for (int g = 0; g < grow; ++g) {
        std::vector<int> frontier;
        for (int f : region) {
          const auto& w = faces[f];
          for (std::size_t k = 0; k < w.size(); ++k) {
            Edge e(w[k], w[(k + 1) % w.size()]);
            for (int f2 = 0; f2 < static_cast<int>(faces.size()); ++f2) {
              if (region.count(f2) || used.count(f2)) continue;
              const auto& w2 = faces[f2];
              for (std::size_t k2 = 0; k2 < w2.size(); ++k2)
                if (Edge(w2[k2], w2[(k2 + 1) % w2.size()]) == e) frontier.push_back(f2);
            }
          }
        }
        if (frontier.empty()) break;
        region.insert(frontier[rng() % frontier.size()]);
      }
      try {
        discs.push_back(SimplicialDisc::from_faces(sphere, region));
        for (int f : region) used.insert(f);
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) continue;

    std::vector<FaceLabel> labels;
    for (int b = 0; b < num_blocks; ++b) labels.push_back(FaceLabel::B);
    for (int h = 0; h < num_holes; ++h) labels.push_back(FaceLabel::H);
    try {
      return carve_face_graph(sphere, discs, labels);
    } catch (const std::exception&) {
      continue;
    }
  }
  return std::nullopt;
}

std::vector<FaceGraph> single_block_corpus(std::uint64_t seed, int count, int max_vertices) {
  std::vector<FaceGraph> out;
  std::mt19937_64 rng(seed);
  int sub = 0;
  while (static_cast<int>(out.size()) < count) {
    ++sub;
    const bool make_tight = (out.size() % 2) == 0;
    if (make_tight) {
      const int target = 6 + static_cast<int>(rng() % (max_vertices - 5));
      out.push_back(tight_instance(seed * 1000003ull + sub, target));
      continue;
    }
    const int sn = 8 + static_cast<int>(rng() % 9);
    const int holes = 1 + static_cast<int>(rng() % 3);
    auto fg = random_carved_face_graph(seed * 7777ull + sub, sn, 1, holes);
    if (fg && fg->embedding().vertex_count() <= max_vertices) out.push_back(std::move(*fg));
  }
  return out;
}

FaceGraph k24_fixture() {
  // Hubs 4 and 5, spokes 0..3 stacked between them; four quadrilateral
  // faces and no triangles.
  auto emb = EmbeddedGraph::from_rotation({
      {0, {4, 5}},
      {1, {4, 5}},
      {2, {5, 4}},
      {3, {5, 4}},
      {4, {1, 0, 3, 2}},
      {5, {0, 1, 2, 3}},
  });
  auto faces = emb.trace_faces();
  // Opposite quadrilaterals share only the two hub vertices; label one
  // opposite pair B and the other H.
  std::vector<LabelledFace> labelled;
  std::set<int> first_pair;
  const auto& f0 = faces[0];
  std::set<int> f0v(f0.begin(), f0.end());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    std::set<int> fv(faces[i].begin(), faces[i].end());
    std::vector<int> shared;
    std::set_intersection(f0v.begin(), f0v.end(), fv.begin(), fv.end(),
                          std::back_inserter(shared));
    const bool opposite_or_self = i == 0 || shared.size() == 2;
    labelled.push_back({faces[i], opposite_or_self ? FaceLabel::B : FaceLabel::H});
  }
  return FaceGraph::make(std::move(emb), labelled, faces[0]);
}

}  // namespace rigidlab::corpus
