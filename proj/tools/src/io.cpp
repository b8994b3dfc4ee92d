#include "io.hpp"

#include <fstream>

namespace rigidlab::io {

json face_graph_to_json(const FaceGraph& fg) {
  json j;
  j["format"] = kGraphFormat;
  j["vertices"] = fg.embedding().vertices();
  json rot = json::object();
  for (const auto& [v, r] : fg.embedding().rotation_map()) rot[std::to_string(v)] = r;
  j["rotation"] = std::move(rot);
  j["outer_face"] = fg.face(fg.outer_face());
  json faces = json::array();
  for (int i : fg.labelled_faces()) {
    faces.push_back({{"boundary", fg.face(i)},
                     {"label", fg.label(i) == FaceLabel::B ? "B" : "H"}});
  }
  j["faces"] = std::move(faces);
  return j;
}

json block_hole_to_json(const BlockHoleGraph& bh) {
  json j = face_graph_to_json(bh.base());
  json blocks = json::array();
  for (const auto& blk : bh.blocks()) {
    json b;
    b["face"] = bh.base().face(blk.face);
    b["vertices"] = blk.graph.vertices();
    json edges = json::array();
    for (const Edge& e : blk.graph.edges()) edges.push_back({e.u, e.v});
    b["edges"] = std::move(edges);
    json attach = json::array();
    for (int v : bh.base().face(blk.face)) attach.push_back({v, v});
    b["attachment"] = std::move(attach);
    b["certified"] = blk.certified;
    blocks.push_back(std::move(b));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

FaceGraph face_graph_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kGraphFormat)
      throw ParseError("unsupported format field");

    std::map<int, std::vector<int>> rot;
    for (const auto& [key, value] : j.at("rotation").items())
      rot[std::stoi(key)] = value.get<std::vector<int>>();
    for (int v : j.at("vertices").get<std::vector<int>>())
      if (!rot.count(v)) throw ParseError("vertex " + std::to_string(v) + " has no rotation");

    auto emb = EmbeddedGraph::from_rotation(std::move(rot));

    std::vector<LabelledFace> labelled;
    if (j.contains("faces")) {
      for (const auto& f : j.at("faces")) {
        std::string label = f.at("label").get<std::string>();
        if (label != "B" && label != "H") throw ParseError("face label must be B or H");
        labelled.push_back({f.at("boundary").get<std::vector<int>>(),
                            label == "B" ? FaceLabel::B : FaceLabel::H});
      }
    }
    FaceWalk outer = j.at("outer_face").get<std::vector<int>>();
    return FaceGraph::make(std::move(emb), labelled, outer);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("malformed graph file: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("invalid graph: ") + ex.what());
  }
}

LoadedInput input_from_json(const json& j) {
  LoadedInput in{face_graph_from_json(j), std::nullopt};
  if (!j.contains("blocks") || j.at("blocks").empty()) return in;

  try {
    std::vector<Block> blocks;
    int fresh = in.face_graph.embedding().max_vertex_id() + 1;
    for (const auto& bj : j.at("blocks")) {
      Block blk;
      FaceWalk face_walk = bj.at("face").get<std::vector<int>>();
      auto idx = in.face_graph.find_face(face_walk);
      if (!idx || in.face_graph.label(*idx) != FaceLabel::B)
        throw ParseError("block attached to a non-B face");
      blk.face = *idx;
      blk.certified = bj.value("certified", false);

      // Remap block-local ids: attachment pins boundary vertices, interior
      // vertices get fresh union ids.
      std::map<int, int> remap;
      if (bj.contains("attachment")) {
        for (const auto& pair : bj.at("attachment"))
          remap[pair.at(1).get<int>()] = pair.at(0).get<int>();
      }
      for (int v : bj.at("vertices").get<std::vector<int>>())
        if (!remap.count(v)) remap[v] = fresh++;
      for (const auto& e : bj.at("edges")) {
        int a = remap.at(e.at(0).get<int>());
        int b = remap.at(e.at(1).get<int>());
        blk.graph.add_edge(a, b);
      }
      blocks.push_back(std::move(blk));
    }
    in.block_hole = BlockHoleGraph::assemble(in.face_graph, std::move(blocks));
  } catch (const json::exception& ex) {
    throw ParseError(std::string("malformed blocks: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("invalid blocks: ") + ex.what());
  }
  return in;
}

std::string digest(const FaceGraph& fg) {
  const std::string dump = face_graph_to_json(fg).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json tree_to_json(const ReductionTree& tree) {
  json steps = json::array();
  json leaves = json::array();
  for (const auto& node : tree.nodes) {
    if (node.kind == StepKind::Leaf) {
      json edges = json::array();
      for (const auto& s : node.gluck) edges.push_back({s.edge.u, s.edge.v});
      leaves.push_back({{"node", digest(node.graph)}, {"gluck", std::move(edges)}});
      continue;
    }
    json step;
    step["node"] = digest(node.graph);
    step["kind"] = to_string(node.kind);
    if (node.kind == StepKind::Division) {
      step["cycle"] = node.cycle;
    } else {
      step["edge"] = {node.edge.u, node.edge.v};
    }
    json children = json::array();
    for (int c : node.children) children.push_back(digest(tree.nodes[c].graph));
    step["children"] = std::move(children);
    steps.push_back(std::move(step));
  }

  json j;
  j["format"] = kCertFormat;
  j["root"] = digest(tree.nodes.at(0).graph);
  j["transposed"] = tree.transposed;
  j["steps"] = std::move(steps);
  j["leaves"] = std::move(leaves);
  return j;
}

FaceGraph normalize_for_reduction(const FaceGraph& fg, bool transposed) {
  FaceGraph work = transposed ? transpose_labels(fg) : fg;
  const auto [m, n] = work.type();
  if (m == 1) {
    for (int i : work.labelled_faces())
      if (work.label(i) == FaceLabel::B) return work.with_outer(i);
  }
  return work;
}

namespace {

struct Rebuilder {
  const json& steps;
  const json& leaves;
  ReductionTree tree;
  std::size_t next_step = 0;
  std::size_t next_leaf = 0;
  int next_pole = 0;
  std::string error;
  int failed_step = -1;

  bool fail(const std::string& msg, int step_index) {
    error = msg;
    failed_step = step_index;
    return false;
  }

  bool build(int idx) {
    const FaceGraph fg = tree.nodes[idx].graph;
    const std::string dg = digest(fg);
    const auto [m, n] = fg.type();

    if (m == 0 && n == 0) {
      if (next_leaf >= leaves.size()) return fail("certificate is missing a leaf record", -1);
      const json& leaf = leaves[next_leaf++];
      if (leaf.at("node").get<std::string>() != dg)
        return fail("leaf digest mismatch at " + dg, static_cast<int>(next_leaf) - 1);
      tree.nodes[idx].kind = StepKind::Leaf;
      for (const auto& e : leaf.at("gluck")) {
        tree.nodes[idx].gluck.push_back(
            {Edge(e.at(0).get<int>(), e.at(1).get<int>()), false});
      }
      if (!tree.nodes[idx].gluck.empty()) tree.nodes[idx].gluck.back().k4_base = true;
      return true;
    }

    if (next_step >= steps.size()) return fail("certificate is missing a step record", -1);
    const int step_index = static_cast<int>(next_step);
    const json& step = steps[next_step++];
    if (step.at("node").get<std::string>() != dg)
      return fail("step digest mismatch at node " + dg, step_index);

    const std::string kind = step.at("kind").get<std::string>();
    try {
      if (kind == "tt" || kind == "bh") {
        Edge e(step.at("edge").at(0).get<int>(), step.at("edge").at(1).get<int>());
        FaceGraph child = (kind == "tt") ? tt_contract(fg, e) : bh_contract(fg, e);
        if (step.at("children").size() != 1 ||
            step.at("children").at(0).get<std::string>() != digest(child))
          return fail("child digest mismatch after " + kind + " " + to_string(e), step_index);
        tree.nodes[idx].kind = kind == "tt" ? StepKind::TT : StepKind::BH;
        tree.nodes[idx].edge = e;
        ReductionNode cn;
        cn.graph = child;
        cn.pole_a = tree.nodes[idx].pole_a;
        cn.pole_b = tree.nodes[idx].pole_b;
        if (kind == "bh" && child.type() == std::make_pair(0, 0)) {
          cn.residual_block = collapsed_block_boundary(fg, e);
          if (!cn.residual_block)
            return fail("cannot recover the collapsed block boundary", step_index);
        }
        tree.nodes.push_back(std::move(cn));
        int ci = static_cast<int>(tree.nodes.size()) - 1;
        tree.nodes[idx].children = {ci};
        return build(ci);
      }
      if (kind == "division") {
        ProperCycle c = step.at("cycle").get<std::vector<int>>();
        auto [g1, g2] = divide(fg, c);
        if (step.at("children").size() != 2 ||
            step.at("children").at(0).get<std::string>() != digest(g1) ||
            step.at("children").at(1).get<std::string>() != digest(g2))
          return fail("child digest mismatch after division", step_index);
        tree.nodes[idx].kind = StepKind::Division;
        tree.nodes[idx].cycle = c;
        ReductionNode n1;
        n1.graph = g1;
        n1.pole_a = tree.nodes[idx].pole_a;
        n1.pole_b = tree.nodes[idx].pole_b;
        tree.nodes.push_back(std::move(n1));
        int c1 = static_cast<int>(tree.nodes.size()) - 1;
        ReductionNode n2;
        n2.graph = g2;
        if (c.size() >= 4) {
          n2.pole_a = next_pole;
          n2.pole_b = next_pole + 1;
          next_pole += 2;
        }
        tree.nodes.push_back(std::move(n2));
        int c2 = static_cast<int>(tree.nodes.size()) - 1;
        tree.nodes[idx].children = {c1, c2};
        return build(c1) && build(c2);
      }
    } catch (const std::exception& ex) {
      return fail(std::string("step rejected: ") + ex.what(), step_index);
    }
    return fail("unknown step kind '" + kind + "'", step_index);
  }
};

}  // namespace

RebuildOutcome rebuild_tree(const FaceGraph& input, const json& cert) {
  RebuildOutcome out;
  try {
    if (cert.at("format").get<std::string>() != kCertFormat) {
      out.error = "unsupported certificate format";
      return out;
    }
    const bool transposed = cert.at("transposed").get<bool>();
    FaceGraph root = normalize_for_reduction(input, transposed);
    if (digest(root) != cert.at("root").get<std::string>()) {
      out.error = "certificate root digest does not match the input graph";
      return out;
    }

    Rebuilder rb{cert.at("steps"), cert.at("leaves")};
    rb.tree.transposed = transposed;
    const int max_id = root.embedding().max_vertex_id();
    rb.next_pole = max_id + 3;
    ReductionNode rn;
    const bool has_block = root.type().first == 1;
    rn.graph = std::move(root);
    rn.pole_a = has_block ? max_id + 1 : -1;
    rn.pole_b = has_block ? max_id + 2 : -1;
    rb.tree.nodes.push_back(std::move(rn));

    if (!rb.build(0)) {
      out.error = rb.error;
      out.failed_step = rb.failed_step;
      return out;
    }
    out.tree = std::move(rb.tree);
    return out;
  } catch (const json::exception& ex) {
    out.error = std::string("malformed certificate: ") + ex.what();
    return out;
  }
}

LoadedInput load_input(const std::string& path) { return input_from_json(load_json(path)); }

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ParseError("cannot parse " + path + ": " + ex.what());
  }
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace rigidlab::io
