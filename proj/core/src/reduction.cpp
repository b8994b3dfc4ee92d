#include "rigidlab/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rigidlab/rigidity.hpp"

namespace rigidlab {

bool in_tight_class(const FaceGraph& fg) {
  return is_36_tight(discus_and_hole(fg).graph());
}

namespace {

std::map<Edge, std::vector<int>> edge_faces(const FaceGraph& fg) {
  std::map<Edge, std::vector<int>> inc;
  for (int i = 0; i < fg.face_count(); ++i) {
    const auto& w = fg.face(i);
    const int n = static_cast<int>(w.size());
    for (int k = 0; k < n; ++k) inc[Edge(w[k], w[(k + 1) % n])].push_back(i);
  }
  return inc;
}

std::vector<int> common_neighbors(const EmbeddedGraph& g, int u, int v) {
  std::vector<int> out;
  for (int w : g.rotation(u))
    if (w != v && g.has_edge(v, w)) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::set<Edge> walk_edges(const FaceWalk& w) {
  std::set<Edge> out;
  const int n = static_cast<int>(w.size());
  for (int k = 0; k < n; ++k) out.insert(Edge(w[k], w[(k + 1) % n]));
  return out;
}

// Collapse v into u along a closed walk: rename and drop the resulting
// adjacent duplicate. Returns nullopt when the result repeats a vertex.
std::optional<FaceWalk> collapse_walk(const FaceWalk& w, int u, int v) {
  FaceWalk out;
  for (int x : w) {
    int t = (x == v) ? u : x;
    if (!out.empty() && out.back() == t) continue;
    out.push_back(t);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  if (!is_proper_walk(out)) return std::nullopt;
  return out;
}

}  // namespace

std::vector<Edge> contractible_tt_edges(const FaceGraph& fg) {
  // K4 contracts straight to K3; that transition is the gluck base move.
  if (fg.embedding().vertex_count() <= 4) return {};

  std::vector<Edge> out;
  auto inc = edge_faces(fg);
  for (const Edge& e : fg.embedding().edges()) {
    const auto& fs = inc.at(e);
    if (fs.size() != 2) continue;
    if (fg.face_length(fs[0]) != 3 || fg.face_length(fs[1]) != 3) continue;
    if (fg.label(fs[0]) || fg.label(fs[1])) continue;  // transient labelled triangles
    auto common = common_neighbors(fg.embedding(), e.u, e.v);
    if (common.size() != 2) continue;  // a third common neighbor is a non-facial 3-cycle
    out.push_back(e);
  }
  return out;
}

std::vector<Edge> contractible_bh_edges(const FaceGraph& fg) {
  const auto [m, n] = fg.type();
  std::vector<Edge> out;
  auto inc = edge_faces(fg);
  for (const Edge& e : fg.embedding().edges()) {
    const auto& fs = inc.at(e);
    if (fs.size() != 2) continue;
    auto la = fg.label(fs[0]), lb = fg.label(fs[1]);
    bool bh = (la == FaceLabel::B && lb == FaceLabel::H) ||
              (la == FaceLabel::H && lb == FaceLabel::B);
    if (!bh) continue;
    if (!common_neighbors(fg.embedding(), e.u, e.v).empty()) continue;  // lies in a 3-cycle

    if (m >= 2) {
      // Multi-block admissibility: e must sit on a shared boundary path of
      // length >= 3 between its B and H faces.
      auto shared = walk_edges(fg.face(fs[0]));
      auto other = walk_edges(fg.face(fs[1]));
      std::set<Edge> both;
      for (const Edge& se : shared)
        if (other.count(se)) both.insert(se);
      // Component of e in the shared edge set (a sub-path of both cycles).
      std::set<Edge> comp{e};
      bool grew = true;
      while (grew) {
        grew = false;
        for (const Edge& se : both) {
          if (comp.count(se)) continue;
          for (const Edge& ce : comp)
            if (se.u == ce.u || se.u == ce.v || se.v == ce.u || se.v == ce.v) {
              comp.insert(se);
              grew = true;
              break;
            }
        }
      }
      if (comp.size() < 3) continue;
    }
    out.push_back(e);
  }
  return out;
}

namespace {

FaceGraph contract_face_graph(const FaceGraph& fg, const Edge& e, bool renormalize) {
  const int u = e.u, v = e.v;
  EmbeddedGraph emb = fg.embedding().contract_edge(e);

  std::vector<LabelledFace> labelled;
  for (int i : fg.labelled_faces()) {
    auto walk = collapse_walk(fg.face(i), u, v);
    if (!walk)
      throw std::invalid_argument("contraction makes labelled boundary improper at face " +
                                  std::to_string(i));
    if (renormalize && walk->size() == 3) continue;  // relabel to T
    labelled.push_back({*walk, *fg.label(i)});
  }

  FaceWalk outer;
  const auto& old_outer = fg.face(fg.outer_face());
  if (walk_edges(old_outer).count(e)) {
    // The outer face collapsed (it was one of the edge's triangles).
    outer = emb.trace_faces().front();
  } else {
    auto walk = collapse_walk(old_outer, u, v);
    if (!walk) throw std::invalid_argument("contraction makes outer face improper");
    outer = *walk;
  }

  return FaceGraph::make(std::move(emb), labelled, outer);
}

}  // namespace

FaceGraph tt_contract(const FaceGraph& fg, const Edge& e) {
  auto admissible = contractible_tt_edges(fg);
  if (std::find(admissible.begin(), admissible.end(), e) == admissible.end())
    throw std::invalid_argument("tt_contract: " + to_string(e) + " is not a contractible TT edge");
  return contract_face_graph(fg, e, /*renormalize=*/false);
}

FaceGraph bh_contract(const FaceGraph& fg, const Edge& e) {
  auto admissible = contractible_bh_edges(fg);
  if (std::find(admissible.begin(), admissible.end(), e) == admissible.end())
    throw std::invalid_argument("bh_contract: " + to_string(e) + " is not a contractible BH edge");
  return contract_face_graph(fg, e, /*renormalize=*/true);
}

namespace {

// Pole scheme shared by a face graph and its cycle completions: the k-th B
// face (in labelled order) gets poles base+1+2k, base+2+2k keyed by its
// canonical boundary.
std::map<std::vector<int>, std::pair<int, int>> pole_scheme(const FaceGraph& fg) {
  std::map<std::vector<int>, std::pair<int, int>> out;
  const int base = fg.embedding().max_vertex_id();
  int k = 0;
  for (int i : fg.labelled_faces()) {
    if (fg.label(i) != FaceLabel::B) continue;
    out[canonical_cycle(fg.face(i))] = {base + 1 + 2 * k, base + 2 + 2 * k};
    ++k;
  }
  return out;
}

Block discus_block(const FaceWalk& w, int face_index, std::pair<int, int> poles) {
  Block blk;
  blk.face = face_index;
  blk.certified = true;
  const int r = static_cast<int>(w.size());
  for (int t = 0; t < r; ++t) {
    blk.graph.add_edge(w[t], w[(t + 1) % r]);
    blk.graph.add_edge(w[t], poles.first);
    blk.graph.add_edge(w[t], poles.second);
  }
  return blk;
}

BlockHoleGraph discus_with_scheme(const FaceGraph& part,
                                  const std::map<std::vector<int>, std::pair<int, int>>& scheme) {
  std::vector<Block> blocks;
  for (int i : part.labelled_faces()) {
    if (part.label(i) != FaceLabel::B) continue;
    auto it = scheme.find(canonical_cycle(part.face(i)));
    if (it == scheme.end())
      throw std::logic_error("discus_with_scheme: B face missing from the pole scheme");
    blocks.push_back(discus_block(part.face(i), i, it->second));
  }
  return BlockHoleGraph::assemble(part, std::move(blocks));
}

struct SplitParts {
  FaceGraph outside_part;  // labelled faces outside + cycle face
  FaceGraph inside_part;   // labelled faces inside + cycle face
};

// Builds the two face graphs determined by a non-facial proper cycle.
// cycle_label_* selects the label assigned to the cycle face on each side
// (nullopt = unlabelled, for |c| = 3).
SplitParts split_at_cycle(const FaceGraph& fg, const ProperCycle& cycle,
                          std::optional<FaceLabel> label_outside,
                          std::optional<FaceLabel> label_inside) {
  auto sides = cycle_sides(fg, cycle);
  std::set<Edge> cyc_edges = walk_edges(cycle);
  std::set<int> cyc_verts(cycle.begin(), cycle.end());

  auto build = [&](bool keep_outside, std::optional<FaceLabel> cycle_label) {
    std::map<int, std::vector<int>> rot;
    for (const auto& [v, r] : fg.embedding().rotation_map()) {
      const bool v_inside = sides.inside_vertices.count(v) != 0;
      const bool v_on_cycle = cyc_verts.count(v) != 0;
      if (!v_on_cycle && (v_inside != !keep_outside)) continue;
      std::vector<int> nr;
      for (int w : r) {
        Edge ew(v, w);
        if (cyc_edges.count(ew)) {
          nr.push_back(w);
          continue;
        }
        const bool e_inside = sides.inside_edges.count(ew) != 0;
        if (e_inside == keep_outside) continue;
        nr.push_back(w);
      }
      rot[v] = std::move(nr);
    }
    auto emb = EmbeddedGraph::from_rotation(std::move(rot));

    std::vector<LabelledFace> labelled;
    const auto& face_list = keep_outside ? sides.outside_faces : sides.inside_faces;
    for (int i : face_list) labelled.push_back({fg.face(i), *fg.label(i)});
    if (cycle_label) labelled.push_back({cycle, *cycle_label});

    FaceWalk outer;
    if (keep_outside) {
      outer = fg.face(fg.outer_face());  // the outer face lies outside the cycle
    } else {
      outer = cycle;  // the removed side is a single face bounded by the cycle
    }
    return FaceGraph::make(std::move(emb), labelled, outer);
  };

  SplitParts parts{build(true, label_outside), build(false, label_inside)};
  return parts;
}

bool is_facial(const FaceGraph& fg, const ProperCycle& cycle) {
  auto key = canonical_cycle(cycle);
  for (int i = 0; i < fg.face_count(); ++i)
    if (canonical_cycle(fg.face(i)) == key) return true;
  return false;
}

// Re-roots a single-block face graph at its B face.
FaceGraph with_block_outer(const FaceGraph& fg) {
  for (int i : fg.labelled_faces())
    if (fg.label(i) == FaceLabel::B) return fg.with_outer(i);
  return fg;
}

}  // namespace

ExtIntPair ext_int(const FaceGraph& fg, const ProperCycle& cycle) {
  if (is_facial(fg, cycle))
    throw std::invalid_argument("ext_int: cycle is a face boundary");
  std::optional<FaceLabel> h =
      cycle.size() >= 4 ? std::optional<FaceLabel>(FaceLabel::H) : std::nullopt;
  auto parts = split_at_cycle(fg, cycle, h, h);
  auto scheme = pole_scheme(fg);
  return {discus_with_scheme(parts.outside_part, scheme),
          discus_with_scheme(parts.inside_part, scheme)};
}

CriticalSeparatingCycles critical_separating_cycles(const FaceGraph& fg) {
  const auto [m, n] = fg.type();
  FaceGraph rooted = (m == 1) ? with_block_outer(fg) : fg;

  // f(G°) by counting: the sphere blocks add 2(|bd B| - 3) edges per B face.
  int f_circ = freedom(rooted.embedding().abstract());
  for (int i : rooted.labelled_faces())
    if (rooted.label(i) == FaceLabel::B) f_circ -= 2 * (rooted.face_length(i) - 3);

  const int cap = std::max(3, 9 - f_circ + max_abs_index(rooted));

  CriticalSeparatingCycles out;
  enumerate_proper_cycles(rooted.embedding().abstract(), cap, [&](const ProperCycle& c) {
    if (is_facial(rooted, c)) return true;
    auto pair = ext_int(rooted, c);
    bool critical = is_36_tight(pair.exterior.graph());
    if (!critical && m != 1) critical = is_36_tight(pair.interior.graph());
    if (critical) out.non_facial.push_back(c);
    return true;
  });

  std::sort(out.non_facial.begin(), out.non_facial.end(),
            [](const ProperCycle& a, const ProperCycle& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (int i = 0; i < rooted.face_count(); ++i)
    out.facial.push_back(canonical_cycle(rooted.face(i)));
  return out;
}

std::pair<FaceGraph, FaceGraph> divide(const FaceGraph& fg, const ProperCycle& cycle) {
  const auto [m, n] = fg.type();
  if (m != 1) throw std::invalid_argument("divide: face graph must have a single block");
  FaceGraph rooted = with_block_outer(fg);
  if (is_facial(rooted, cycle)) throw std::invalid_argument("divide: cycle is a face boundary");

  auto pair = ext_int(rooted, cycle);
  if (!is_36_tight(pair.exterior.graph()))
    throw std::invalid_argument("divide: cycle is not a critical separating cycle");

  const bool long_cycle = cycle.size() >= 4;
  auto parts = split_at_cycle(
      rooted, cycle, long_cycle ? std::optional<FaceLabel>(FaceLabel::H) : std::nullopt,
      long_cycle ? std::optional<FaceLabel>(FaceLabel::B) : std::nullopt);
  FaceGraph g1 = parts.outside_part;
  FaceGraph g2 = long_cycle
                     ? parts.inside_part.with_outer(*parts.inside_part.find_face(cycle))
                     : parts.inside_part;

  // Class law: |c| = 3 gives a triangulated-sphere inside; otherwise the
  // interior holes move to g2 and g1 keeps the rest plus the new hole.
  int l = 0;
  for (int i : cycle_sides(rooted, cycle).inside_faces)
    if (rooted.label(i) == FaceLabel::H) ++l;

  auto expect = [](const FaceGraph& g, int em, int en) {
    auto t = g.type();
    return t.first == em && t.second == en;
  };
  if (long_cycle) {
    if (!expect(g1, 1, n - l + 1) || !expect(g2, 1, l) || !in_tight_class(g1) ||
        !in_tight_class(g2))
      throw std::logic_error("divide: class law violated (internal guard)");
  } else {
    if (!expect(g1, 1, n) || !expect(g2, 0, 0) ||
        !is_triangulated_sphere(g2.embedding()) || !in_tight_class(g1) ||
        !is_36_tight(g2.embedding().abstract()))
      throw std::logic_error("divide: class law violated (internal guard)");
  }
  return {g1, g2};
}

StatusFlags status(const FaceGraph& fg) {
  if (!in_tight_class(fg))
    throw std::invalid_argument("status: face graph is not in the tight class G(m,n)");
  const auto t = fg.type();

  StatusFlags flags;
  flags.terminal = true;
  for (const Edge& e : contractible_tt_edges(fg)) {
    try {
      FaceGraph g2 = tt_contract(fg, e);
      if (g2.type() == t && in_tight_class(g2)) {
        flags.terminal = false;
        break;
      }
    } catch (const std::exception&) {
      // contraction leaves the class of valid face graphs
    }
  }
  flags.indivisible = critical_separating_cycles(fg).non_facial.empty();
  flags.bh_reduced = contractible_bh_edges(fg).empty();
  return flags;
}

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::TT: return "tt";
    case StepKind::BH: return "bh";
    case StepKind::Division: return "division";
    case StepKind::Leaf: return "leaf";
  }
  return "?";
}

std::vector<GluckStep> gluck_sequence(const EmbeddedGraph& sphere) {
  if (!is_triangulated_sphere(sphere))
    throw std::invalid_argument("gluck_sequence: input is not a triangulated sphere");

  std::vector<GluckStep> steps;
  EmbeddedGraph g = sphere;
  while (g.vertex_count() > 4) {
    std::optional<Edge> pick;
    for (const Edge& e : g.edges()) {
      if (common_neighbors(g, e.u, e.v).size() == 2) {
        pick = e;
        break;
      }
    }
    if (!pick)
      throw std::logic_error("gluck_sequence: no contractible edge on a sphere with > 4 vertices");
    g = g.contract_edge(*pick);
    steps.push_back({*pick, false});
  }
  if (g.vertex_count() == 4) {
    Edge e = g.edges().front();
    g = g.contract_edge(e);
    steps.push_back({e, true});
  }
  if (g.vertex_count() != 3) throw std::logic_error("gluck_sequence: did not end at K3");
  return steps;
}

namespace {

struct TreeBuilder {
  ReductionTree tree;
  int next_pole = 0;

  int add_node(FaceGraph fg, int pa, int pb) {
    ReductionNode node;
    node.graph = std::move(fg);
    node.pole_a = pa;
    node.pole_b = pb;
    tree.nodes.push_back(std::move(node));
    return static_cast<int>(tree.nodes.size()) - 1;
  }

  void build(int idx) {
    const FaceGraph fg = tree.nodes[idx].graph;  // copy: vector may reallocate
    const auto [m, n] = fg.type();

    if (m == 0 && n == 0) {
      tree.nodes[idx].kind = StepKind::Leaf;
      tree.nodes[idx].gluck = gluck_sequence(fg.embedding());
      return;
    }

    // 1) a TT contraction that stays in the class
    for (const Edge& e : contractible_tt_edges(fg)) {
      std::optional<FaceGraph> g2;
      try {
        g2 = tt_contract(fg, e);
      } catch (const std::exception&) {
        continue;
      }
      if (g2->type() != std::make_pair(m, n) || !in_tight_class(*g2)) continue;
      tree.nodes[idx].kind = StepKind::TT;
      tree.nodes[idx].edge = e;
      int child = add_node(std::move(*g2), tree.nodes[idx].pole_a, tree.nodes[idx].pole_b);
      tree.nodes[idx].children = {child};
      build(child);
      return;
    }

    // 2) a BH contraction (always class-preserving for a single block)
    {
      auto bh = contractible_bh_edges(fg);
      if (!bh.empty()) {
        const Edge e = bh.front();
        FaceGraph g2 = bh_contract(fg, e);
        if (!in_tight_class(g2))
          throw std::logic_error("reduce_to_tree: BH contraction left the tight class");
        tree.nodes[idx].kind = StepKind::BH;
        tree.nodes[idx].edge = e;
        int child = add_node(std::move(g2), tree.nodes[idx].pole_a, tree.nodes[idx].pole_b);
        if (tree.nodes[child].graph.type() == std::make_pair(0, 0)) {
          // The block boundary collapsed to a triangle; replay re-attaches
          // its discus over this walk.
          tree.nodes[child].residual_block = collapsed_block_boundary(fg, e);
          if (!tree.nodes[child].residual_block)
            throw std::logic_error("reduce_to_tree: lost track of the collapsed block boundary");
        }
        tree.nodes[idx].children = {child};
        build(child);
        return;
      }
    }

    // 3) division at the smallest non-facial critical separating cycle
    auto ccs = critical_separating_cycles(fg);
    if (ccs.non_facial.empty())
      throw std::logic_error(
          "reduce_to_tree: no admissible move on a tight face graph (dead end)");
    const ProperCycle c = ccs.non_facial.front();
    auto [g1, g2] = divide(fg, c);
    tree.nodes[idx].kind = StepKind::Division;
    tree.nodes[idx].cycle = c;
    int c1 = add_node(std::move(g1), tree.nodes[idx].pole_a, tree.nodes[idx].pole_b);
    int c2;
    if (c.size() >= 4) {
      c2 = add_node(std::move(g2), next_pole, next_pole + 1);
      next_pole += 2;
    } else {
      c2 = add_node(std::move(g2), -1, -1);
    }
    tree.nodes[idx].children = {c1, c2};
    build(c1);
    build(c2);
  }
};

}  // namespace

ReduceOutcome reduce_to_tree(const FaceGraph& fg) {
  auto [m, n] = fg.type();
  FaceGraph work = fg;
  bool transposed = false;
  if (m >= 2 && n == 1) {
    work = transpose_labels(fg);
    std::tie(m, n) = work.type();
    transposed = true;
  }
  // m == 0 with holes can never be tight; it falls through to the refusal.
  if (m >= 2)
    throw std::invalid_argument("reduce_to_tree: need a single block or a single hole, got (" +
                                std::to_string(m) + "," + std::to_string(n) + ")");

  auto report = is_36_sparse(discus_and_hole(work).graph());
  if (report.verdict != SparsityVerdict::Tight) {
    ReduceOutcome out;
    out.refusal = report;
    return out;
  }

  if (m == 1) work = with_block_outer(work);

  TreeBuilder builder;
  builder.tree.transposed = transposed;
  const int max_id = work.embedding().max_vertex_id();
  builder.next_pole = max_id + 3;
  int root =
      builder.add_node(std::move(work), (m == 1) ? max_id + 1 : -1, (m == 1) ? max_id + 2 : -1);
  builder.build(root);

  ReduceOutcome out;
  out.tree = std::move(builder.tree);
  return out;
}

namespace {

struct ReplayEngine {
  const ReductionTree& tree;
  const ReplayOptions& opts;
  ReplayReport& report;
  std::uint64_t seed_counter;

  bool check_isostatic(const Graph& g, const std::string& where) {
    ++report.rank_checks;
    auto rep = is_minimally_3_rigid(g, opts.trials, seed_counter++);
    if (rep.verdict != RankVerdict::Isostatic) {
      report.error = where + ": intermediate graph is not isostatic (" +
                     std::string(to_string(rep.verdict)) + ")";
      return false;
    }
    return true;
  }

  // Expected block-and-hole graph of a node: the face graph plus a discus
  // over its block lineage boundary (live B face or collapsed residual).
  Graph node_bh(const ReductionNode& node) const {
    Graph g = node.graph.embedding().abstract();
    if (node.pole_a < 0) return g;
    FaceWalk w;
    if (node.residual_block) {
      w = *node.residual_block;
    } else {
      for (int i : node.graph.labelled_faces())
        if (node.graph.label(i) == FaceLabel::B) w = node.graph.face(i);
    }
    if (w.empty()) return g;
    for (int x : w) {
      g.add_edge(x, node.pole_a);
      g.add_edge(x, node.pole_b);
    }
    return g;
  }

  std::optional<Graph> build(int idx) {
    const ReductionNode& node = tree.nodes[idx];
    const std::string where = "node " + std::to_string(idx);
    switch (node.kind) {
      case StepKind::Leaf: return build_leaf(node, where);
      case StepKind::TT:
      case StepKind::BH: return build_contraction(node, where);
      case StepKind::Division: return build_division(node, where);
    }
    report.error = where + ": unknown step kind";
    return std::nullopt;
  }

  std::optional<Graph> build_leaf(const ReductionNode& node, const std::string& where) {
    // Forward-contract the recorded chain, then grow it back from K3 by
    // vertex splitting, checking isostaticity at every stage.
    std::vector<EmbeddedGraph> chain{node.graph.embedding()};
    for (const GluckStep& step : node.gluck) {
      try {
        chain.push_back(chain.back().contract_edge(step.edge));
      } catch (const std::exception& ex) {
        report.error = where + ": gluck step " + to_string(step.edge) + " invalid: " + ex.what();
        return std::nullopt;
      }
    }
    if (chain.back().vertex_count() != 3) {
      report.error = where + ": gluck chain does not end at K3";
      return std::nullopt;
    }

    Graph acc = chain.back().abstract();
    if (!check_isostatic(acc, where)) return std::nullopt;
    for (int i = static_cast<int>(node.gluck.size()) - 1; i >= 0; --i) {
      const EmbeddedGraph& target = chain[i];
      const Edge e = node.gluck[i].edge;
      auto anchors = common_neighbors(target, e.u, e.v);
      if (anchors.size() != 2) {
        report.error = where + ": gluck step " + to_string(e) + " has no triangle pair";
        return std::nullopt;
      }
      std::set<int> moved;
      for (int w : target.rotation(e.v))
        if (w != e.u && w != anchors[0] && w != anchors[1]) moved.insert(w);
      acc = vertex_split(acc, e.u, anchors[0], anchors[1], moved, e.v);
      if (acc != target.abstract()) {
        report.error = where + ": vertex split does not reproduce the chain at " + to_string(e);
        return std::nullopt;
      }
      if (!check_isostatic(acc, where)) return std::nullopt;
    }

    if (node.residual_block) {
      const auto& t = *node.residual_block;
      for (int pole : {node.pole_a, node.pole_b}) {
        acc = vertex_split(acc, t[0], t[1], t[2], {}, pole);
        if (!check_isostatic(acc, where)) return std::nullopt;
      }
    }
    if (acc != node_bh(node)) {
      report.error = where + ": leaf reconstruction mismatch";
      return std::nullopt;
    }
    return acc;
  }

  std::optional<Graph> build_contraction(const ReductionNode& node, const std::string& where) {
    auto child = build(node.children.at(0));
    if (!child) return std::nullopt;

    const Graph expected = node_bh(node);
    const Edge e = node.edge;
    int a1, a2;
    if (node.kind == StepKind::TT) {
      auto anchors = common_neighbors(node.graph.embedding(), e.u, e.v);
      if (anchors.size() != 2) {
        report.error = where + ": TT edge " + to_string(e) + " has no facial triangle pair";
        return std::nullopt;
      }
      a1 = anchors[0];
      a2 = anchors[1];
    } else {
      a1 = node.pole_a;
      a2 = node.pole_b;
    }

    std::set<int> moved;
    for (int w : expected.neighbors(e.v))
      if (w != e.u && w != a1 && w != a2) moved.insert(w);

    Graph acc;
    try {
      acc = vertex_split(*child, e.u, a1, a2, moved, e.v);
    } catch (const std::exception& ex) {
      report.error = where + ": vertex split failed: " + ex.what();
      return std::nullopt;
    }
    if (acc != expected) {
      report.error = where + ": reconstruction does not match the recorded face graph";
      return std::nullopt;
    }
    if (!check_isostatic(acc, where)) return std::nullopt;
    return acc;
  }

  std::optional<Graph> build_division(const ReductionNode& node, const std::string& where) {
    auto g1 = build(node.children.at(0));
    if (!g1) return std::nullopt;
    auto g2 = build(node.children.at(1));
    if (!g2) return std::nullopt;

    // Substitute the reconstructed exterior for the interior's discus
    // block: strip the interior poles, then glue along the cycle.
    Graph inner = *g2;
    const ReductionNode& child2 = tree.nodes[node.children[1]];
    if (child2.pole_a >= 0) {
      inner.remove_vertex(child2.pole_a);
      inner.remove_vertex(child2.pole_b);
    }
    Graph acc = Graph::merge(*g1, inner);
    if (acc != node_bh(node)) {
      report.error = where + ": division reassembly mismatch";
      return std::nullopt;
    }
    if (!check_isostatic(acc, where)) return std::nullopt;
    return acc;
  }
};

}  // namespace

ReplayReport replay(const ReductionTree& tree, const std::optional<Block>& root_block,
                    const ReplayOptions& opts) {
  ReplayReport report;
  if (tree.nodes.empty()) {
    report.error = "empty certificate";
    return report;
  }
  ReplayEngine engine{tree, opts, report, opts.seed};
  auto g = engine.build(0);
  if (!g) return report;

  if (root_block) {
    const ReductionNode& root = tree.nodes[0];
    if (root.pole_a < 0) {
      report.error = "root has no block to substitute";
      return report;
    }
    std::vector<Block> blocks;
    for (int i : root.graph.labelled_faces())
      if (root.graph.label(i) == FaceLabel::B)
        blocks.push_back(discus_block(root.graph.face(i), i, {root.pole_a, root.pole_b}));
    try {
      auto bh = BlockHoleGraph::assemble(root.graph, std::move(blocks));
      g = substitute_block(bh, 0, *root_block).graph();
    } catch (const std::exception& ex) {
      report.error = std::string("root block substitution rejected: ") + ex.what();
      return report;
    }
    if (!engine.check_isostatic(*g, "root substitution")) return report;
  }

  report.ok = true;
  report.reconstructed = std::move(*g);
  report.log.push_back("replayed " + std::to_string(tree.nodes.size()) + " nodes with " +
                       std::to_string(report.rank_checks) + " rank checks");
  return report;
}

std::optional<FaceWalk> collapsed_block_boundary(const FaceGraph& parent, const Edge& e) {
  for (int i : parent.labelled_faces()) {
    if (parent.label(i) != FaceLabel::B) continue;
    auto walk = collapse_walk(parent.face(i), e.u, e.v);
    if (walk && walk->size() == 3) return walk;
  }
  return std::nullopt;
}

HennebergReduction inverse_henneberg_reduce(const Graph& g) {
  HennebergReduction out;
  out.residue = g;
  bool again = true;
  while (again) {
    again = false;
    for (int v : out.residue.vertices()) {
      if (out.residue.degree(v) == 3) {
        out.residue.remove_vertex(v);
        out.removed.push_back(v);
        again = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace rigidlab
