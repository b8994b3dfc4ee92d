#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidlab/face_graph.hpp"

namespace rigidlab {

/// Signed index of a collection of labelled faces: blocks count their
/// boundary excess over 3 positively, holes negatively.
int collection_index(const FaceGraph& fg, const std::vector<int>& faces);

/// Largest possible |index| over any face collection: max of the total B
/// excess and the total H excess. Bounds the length of any cycle that can
/// violate a girth inequality or achieve equality.
int max_abs_index(const FaceGraph& fg);

struct GirthViolation {
  ProperCycle cycle;
  std::vector<int> inside_faces;  // collection on the violating side
  int index = 0;
};

struct CriticalGirthCycle {
  ProperCycle cycle;
  std::vector<int> side_faces;  // collection achieving |c| = |ind| + 3
  int index = 0;
};

struct GirthReport {
  bool pass = false;
  std::optional<GirthViolation> violation;  // shortest, then lexicographic
  std::vector<CriticalGirthCycle> critical;  // non-facial equality cases
};

/// Checks |c| >= |ind(C)| + 3 for every proper cycle c, testing the face
/// collections on both sides of c (which covers every planar realisation).
/// Cycle enumeration is capped at max_abs_index + 3: longer cycles satisfy
/// the inequality outright and cannot achieve equality.
GirthReport girth_check(const FaceGraph& fg);

/// Girth inequalities imply a zero total index, hence the Maxwell count
/// for the sphere-block graphs; throws when girth_check fails.
bool maxwell_from_girth(const FaceGraph& fg);

/// Non-facial proper cycles achieving |c| = |ind(C)| + 3 on either side.
/// Face boundaries always achieve equality and are reported separately.
struct CriticalGirthCycles {
  std::vector<CriticalGirthCycle> non_facial;
  std::vector<ProperCycle> facial;
};
CriticalGirthCycles critical_girth_cycles(const FaceGraph& fg);

struct SeparationReport {
  bool pass = true;
  /// Chord between nonadjacent vertices of a labelled face boundary.
  std::optional<Edge> chord;
  std::optional<int> chord_face;
  /// Pair of H faces sharing too many or nonadjacent vertices.
  std::optional<std::pair<int, int>> bad_hole_pair;
  std::vector<int> shared_vertices;
};

/// Necessary conditions for minimal 3-rigidity: no labelled-boundary
/// chords, and H faces pairwise share at most two vertices, adjacent when
/// two.
SeparationReport separation_check(const FaceGraph& fg);

}  // namespace rigidlab
