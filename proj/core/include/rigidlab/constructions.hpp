#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidlab/face_graph.hpp"

namespace rigidlab {

/// Region of a triangulated sphere bounded by a proper cycle of length
/// >= 4, with all interior faces triangular.
struct SimplicialDisc {
  FaceWalk boundary;
  std::set<int> interior_vertices;
  std::set<Edge> interior_edges;
  std::set<int> face_indices;  // indices into the host's traced faces

  /// Builds a disc from a face-connected region of the host sphere;
  /// throws when the region is not a disc or its boundary is too short.
  static SimplicialDisc from_faces(const EmbeddedGraph& sphere, const std::set<int>& region);
};

struct Block {
  int face = -1;    // index of the B face in the base face graph
  Graph graph;      // block graph in union id space; contains the boundary cycle
  bool certified = false;  // minimal 3-rigidity certified by construction
};

struct ParallelEdgeWitness {
  Edge edge;
  int first_block;   // -1 means the base face graph
  int second_block;
};

struct AssemblyOutcome;

/// Abstract block and hole graph: a face graph together with one block per
/// B-labelled face and the union graph. Construction enforces that each
/// block meets the face graph exactly in its boundary cycle and that the
/// union is simple.
class BlockHoleGraph {
 public:
  /// Throws when the union would not be simple.
  static BlockHoleGraph assemble(FaceGraph base, std::vector<Block> blocks);

  /// Non-throwing variant carrying parallel-edge witnesses.
  static AssemblyOutcome try_assemble(FaceGraph base, std::vector<Block> blocks);

  const FaceGraph& base() const { return base_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Graph& graph() const { return union_; }

  /// Vertices of block i that are not on its attachment boundary.
  std::vector<int> block_interior_vertices(int i) const;

 private:
  FaceGraph base_;
  std::vector<Block> blocks_;
  Graph union_;
};

/// Union-not-simple outcome for block assemblies that may legitimately
/// produce parallel edges.
struct AssemblyOutcome {
  std::optional<BlockHoleGraph> graph;
  std::vector<ParallelEdgeWitness> parallel_edges;
  bool ok() const { return graph.has_value(); }
};

enum class SphereMoves { SplitsAndStellations, StellationsOnly };

/// Seeded random triangulated sphere on n >= 4 vertices, grown from K4 by
/// planar vertex splits and face stellations. Vertex ids are 0..n-1.
EmbeddedGraph random_triangulated_sphere(int n, std::uint64_t seed,
                                         SphereMoves moves = SphereMoves::SplitsAndStellations);

bool is_triangulated_sphere(const EmbeddedGraph& g);

/// Removes the interior of each disc from the sphere and labels the
/// resulting faces. Discs must be internally disjoint.
FaceGraph carve_face_graph(const EmbeddedGraph& sphere, const std::vector<SimplicialDisc>& discs,
                           const std::vector<FaceLabel>& labels);

/// Fills every B face with a simplicial discus: two fresh poles joined to
/// each boundary vertex. Always simple.
BlockHoleGraph discus_and_hole(const FaceGraph& fg);

/// Fills every B face with a triangulated sphere on the boundary vertex
/// set (two internally disjoint polygon triangulations, seeded). May be
/// rejected when the union is not simple.
AssemblyOutcome double_disc_blocks(const FaceGraph& fg, std::uint64_t seed);

/// Replaces block i, preserving the attachment boundary. The new block
/// must be (3,6)-tight, certified minimally 3-rigid, and may not add an
/// edge between boundary vertices that the base graph lacks.
BlockHoleGraph substitute_block(const BlockHoleGraph& bh, int block_index, const Block& k_new);

/// Swaps B and H labels.
FaceGraph transpose_labels(const FaceGraph& fg);

// Canonical small fixtures.
EmbeddedGraph tetrahedron();
EmbeddedGraph octahedron();
EmbeddedGraph triangle_k3();

/// Face graph of type (1,1): a single cycle of length r >= 4, exterior
/// face labelled B, interior labelled H.
FaceGraph cycle_face_graph(int r);

/// Two 5-vertex isostatic pieces (K5 minus an edge) sharing exactly the
/// two nonadjacent endpoints: 8 vertices, 18 edges, flexible.
Graph double_banana();

}  // namespace rigidlab
