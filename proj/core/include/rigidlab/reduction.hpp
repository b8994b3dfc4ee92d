#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidlab/constructions.hpp"
#include "rigidlab/girth.hpp"
#include "rigidlab/sparsity.hpp"

namespace rigidlab {

/// Membership in the tight class: the discus-and-hole graph is (3,6)-tight.
bool in_tight_class(const FaceGraph& fg);

/// TT edges lying in two triangular faces and in no other 3-cycle. K4 is
/// excluded: its contraction to K3 is handled as the dedicated base move
/// of gluck_sequence.
std::vector<Edge> contractible_tt_edges(const FaceGraph& fg);

/// BH edges in no 3-cycle. With two or more blocks an edge additionally
/// needs a shared boundary path of length >= 3 between its B and H faces.
std::vector<Edge> contractible_bh_edges(const FaceGraph& fg);

/// Contracts a contractible TT edge; labelled boundaries are preserved
/// (up to renaming the merged vertex).
FaceGraph tt_contract(const FaceGraph& fg, const Edge& e);

/// Contracts a contractible BH edge; the adjacent B and H boundaries each
/// shorten by one, and labels are dropped from boundaries that reach
/// length 3.
FaceGraph bh_contract(const FaceGraph& fg, const Edge& e);

/// The two discus-and-hole completions determined by a non-facial proper
/// cycle: both sides keep their labelled faces and view c as an H face
/// (when |c| >= 4). Shared pole ids, so exterior() + interior() equals the
/// discus-and-hole graph of fg.
struct ExtIntPair {
  BlockHoleGraph exterior;
  BlockHoleGraph interior;
};
ExtIntPair ext_int(const FaceGraph& fg, const ProperCycle& cycle);

struct CriticalSeparatingCycles {
  std::vector<ProperCycle> non_facial;  // sorted by length, then lexicographic
  std::vector<ProperCycle> facial;      // face boundaries, always critical in the tight class
};

/// Proper cycles whose exterior or interior completion is (3,6)-tight.
/// For a single block with the B face outer only the exterior needs
/// testing. Enumeration is capped by a counting bound: a critical cycle
/// satisfies |c| = 9 - f(G°) - ind(inside), so |c| <= 9 - f(G°) + max|ind|.
CriticalSeparatingCycles critical_separating_cycles(const FaceGraph& fg);

/// Separating cycle division at a non-facial critical cycle: the outside
/// keeps the cycle as an H face, the inside takes it as a B face (for
/// |c| = 3 both sides keep it as an unlabelled triangle). Class membership
/// of both parts is verified before returning.
std::pair<FaceGraph, FaceGraph> divide(const FaceGraph& fg, const ProperCycle& cycle);

struct StatusFlags {
  bool terminal = false;     // no TT contraction stays in the class
  bool indivisible = false;  // every critical separating cycle is facial
  bool bh_reduced = false;   // no contractible BH edges
};

/// Requires fg in the tight class.
StatusFlags status(const FaceGraph& fg);

struct GluckStep {
  Edge edge{0, 1};
  bool k4_base = false;
};

/// Contraction chain from a triangulated sphere down to K3; |V| - 3 steps,
/// the last of which contracts K4 as the dedicated base move.
std::vector<GluckStep> gluck_sequence(const EmbeddedGraph& sphere);

enum class StepKind { TT, BH, Division, Leaf };

const char* to_string(StepKind k);

struct ReductionNode {
  FaceGraph graph;
  StepKind kind = StepKind::Leaf;
  Edge edge{0, 1};                         // TT / BH
  ProperCycle cycle;                       // Division
  std::vector<int> children;               // indices into the tree
  std::vector<GluckStep> gluck;            // Leaf
  int pole_a = -1, pole_b = -1;            // discus pole ids of the node's block lineage
  std::optional<FaceWalk> residual_block;  // collapsed B boundary for G(0,0)-via-BH leaves
};

struct ReductionTree {
  std::vector<ReductionNode> nodes;  // preorder; root at index 0
  bool transposed = false;
};

struct ReduceOutcome {
  std::optional<ReductionTree> tree;
  std::optional<SparsityReport> refusal;  // sparsity witness when the input is not tight
  bool ok() const { return tree.has_value(); }
};

/// Builds the reduction certificate for a face graph with a single block
/// (a single hole is transposed first). Step priority: tight-preserving TT
/// contraction, then BH contraction, then division at the smallest
/// non-facial critical separating cycle.
ReduceOutcome reduce_to_tree(const FaceGraph& fg);

struct ReplayOptions {
  int trials = 2;
  std::uint64_t seed = 2026;
};

struct ReplayReport {
  bool ok = false;
  std::string error;    // first failing step
  Graph reconstructed;  // the root block-and-hole graph
  int rank_checks = 0;
  std::vector<std::string> log;
};

/// Rebuilds the root's discus-and-hole graph bottom-up: leaves grow from
/// K3 by vertex splitting, contractions are undone by vertex splitting,
/// divisions by substituting the reconstructed exterior for the interior's
/// discus block. Every intermediate graph must pass the Monte Carlo
/// isostaticity check. An optional root block is substituted at the end.
ReplayReport replay(const ReductionTree& tree, const std::optional<Block>& root_block = {},
                    const ReplayOptions& opts = {});

/// Boundary of the parent's B face after contracting e, when it collapses
/// to a triangle. Certificate rebuilding re-derives leaf residuals with it.
std::optional<FaceWalk> collapsed_block_boundary(const FaceGraph& parent, const Edge& e);

struct HennebergReduction {
  Graph residue;
  std::vector<int> removed;  // removal order
};

/// Strips degree-3 vertices until none remain.
HennebergReduction inverse_henneberg_reduce(const Graph& g);

}  // namespace rigidlab
