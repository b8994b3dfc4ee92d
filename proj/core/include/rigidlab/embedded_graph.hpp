#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidlab/graph.hpp"

namespace rigidlab {

/// Closed face walk, stored as the cyclic vertex sequence.
using FaceWalk = std::vector<int>;

/// Thrown when a rotation system fails the genus-0 Euler check.
struct GenusError : std::runtime_error {
  int euler_characteristic;
  GenusError(int chi, const std::string& msg) : std::runtime_error(msg), euler_characteristic(chi) {}
};

/// Thrown when an embedded edge contraction would create a parallel edge
/// that does not come from collapsing a facial triangle.
struct ContractionError : std::runtime_error {
  int offending_neighbor;
  ContractionError(int z, const std::string& msg) : std::runtime_error(msg), offending_neighbor(z) {}
};

/// Planar embedded simple graph: a rotation system giving the
/// counterclockwise neighbor order at every vertex. Immutable after
/// construction; all operations return new values.
class EmbeddedGraph {
 public:
  EmbeddedGraph() = default;

  /// Validates symmetry, simplicity and (via face tracing) genus 0.
  static EmbeddedGraph from_rotation(std::map<int, std::vector<int>> rotation);

  const std::vector<int>& rotation(int v) const;
  bool has_vertex(int v) const { return rot_.count(v) != 0; }
  bool has_edge(int u, int v) const;

  std::vector<int> vertices() const;
  std::vector<Edge> edges() const;
  int vertex_count() const { return static_cast<int>(rot_.size()); }
  int edge_count() const;
  int max_vertex_id() const { return rot_.empty() ? -1 : rot_.rbegin()->first; }

  /// Forgets the embedding.
  Graph abstract() const;

  /// Walks every face of the embedding. Each directed edge is used exactly
  /// once across all walks; throws GenusError if the walk count is not
  /// consistent with |V| - |E| + |F| = 2.
  std::vector<FaceWalk> trace_faces() const;

  /// Contracts edge uv, splicing v's rotation into u's. Parallel edges that
  /// arise from collapsing a facial triangle are merged; any other shared
  /// neighbor aborts the contraction. The merged vertex keeps id u.
  EmbeddedGraph contract_edge(const Edge& e) const;

  /// Splits vertex v into v and a fresh vertex w. The rotation fan of v is
  /// cut at the two anchor neighbors x and y: v keeps the arc from x to y
  /// (exclusive) plus x, y and w; w takes the complementary arc plus x, y
  /// and v. Inverse of contract_edge on a triangle-collapsing edge.
  EmbeddedGraph split_vertex(int v, int x, int y, int fresh_id) const;

  const std::map<int, std::vector<int>>& rotation_map() const { return rot_; }

  bool operator==(const EmbeddedGraph&) const = default;

 private:
  std::map<int, std::vector<int>> rot_;
};

/// Canonical form of a closed walk: rotated so the smallest vertex comes
/// first, direction chosen so the second entry is the smaller of the two
/// neighbors of the first. Identifies walks up to rotation and reflection.
std::vector<int> canonical_cycle(const std::vector<int>& walk);

/// True if the walk visits pairwise distinct vertices (a proper cycle).
bool is_proper_walk(const std::vector<int>& walk);

}  // namespace rigidlab
