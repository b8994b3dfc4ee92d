#pragma once

#include <optional>
#include <set>
#include <vector>

#include "rigidlab/cycles.hpp"
#include "rigidlab/embedded_graph.hpp"

namespace rigidlab {

enum class FaceLabel { B, H };

enum class EdgeType { BB, BH, HH, BT, HT, TT };

const char* to_string(EdgeType t);
inline char to_char(FaceLabel l) { return l == FaceLabel::B ? 'B' : 'H'; }

struct LabelledFace {
  FaceWalk boundary;
  FaceLabel label;
};

/// Embedded planar graph whose non-triangular faces carry a B or H label,
/// together with a distinguished outer face fixing the planar realisation.
/// Immutable; construction validates every invariant:
///   - labelled boundaries are faces of the embedding and proper cycles,
///   - every non-triangular face carries exactly one label,
///   - triangular faces are unlabelled.
class FaceGraph {
 public:
  static FaceGraph make(EmbeddedGraph emb, const std::vector<LabelledFace>& labelled,
                        const FaceWalk& outer);

  /// A triangulated sphere viewed as the face graph with no labels.
  static FaceGraph sphere(EmbeddedGraph emb);

  const EmbeddedGraph& embedding() const { return emb_; }

  int face_count() const { return static_cast<int>(faces_.size()); }
  const FaceWalk& face(int i) const { return faces_[i]; }
  std::optional<FaceLabel> label(int i) const { return labels_[i]; }
  int face_length(int i) const { return static_cast<int>(faces_[i].size()); }
  int outer_face() const { return outer_; }

  /// Indices of labelled faces, in traced order.
  const std::vector<int>& labelled_faces() const { return labelled_; }

  /// (number of B faces, number of H faces).
  std::pair<int, int> type() const;

  /// Index of the unique face with this boundary, if any.
  std::optional<int> find_face(const FaceWalk& boundary) const;

  /// Same graph re-rooted at another face.
  FaceGraph with_outer(int face_index) const;

  bool operator==(const FaceGraph&) const = default;

 private:
  EmbeddedGraph emb_;
  std::vector<FaceWalk> faces_;
  std::vector<std::optional<FaceLabel>> labels_;
  std::vector<int> labelled_;
  int outer_ = 0;
};

/// Type of an edge according to the labels of its two adjacent faces.
EdgeType classify_edge(const FaceGraph& fg, const Edge& e);

/// Partition of the labelled faces (and of the strict interior content)
/// induced by a proper cycle, relative to the fixed outer face: the
/// outside is the side containing the outer face.
struct CycleSides {
  std::vector<int> inside_faces;
  std::vector<int> outside_faces;
  std::set<int> inside_vertices;
  std::set<Edge> inside_edges;
};

CycleSides cycle_sides(const FaceGraph& fg, const ProperCycle& cycle);

}  // namespace rigidlab
