#include "rigidlab/girth.hpp"

#include <algorithm>
#include <set>

namespace rigidlab {

int collection_index(const FaceGraph& fg, const std::vector<int>& faces) {
  int ind = 0;
  for (int f : faces) {
    if (f < 0 || f >= fg.face_count())
      throw std::invalid_argument("collection_index: no face " + std::to_string(f));
    auto l = fg.label(f);
    if (!l) throw std::invalid_argument("collection_index: face " + std::to_string(f) +
                                        " is not labelled");
    int excess = fg.face_length(f) - 3;
    ind += (*l == FaceLabel::B) ? excess : -excess;
  }
  return ind;
}

int max_abs_index(const FaceGraph& fg) {
  int b = 0, h = 0;
  for (int f : fg.labelled_faces()) {
    int excess = fg.face_length(f) - 3;
    (fg.label(f) == FaceLabel::B ? b : h) += excess;
  }
  return std::max(b, h);
}

namespace {

std::set<std::vector<int>> facial_canon_set(const FaceGraph& fg) {
  std::set<std::vector<int>> out;
  for (int i = 0; i < fg.face_count(); ++i) out.insert(canonical_cycle(fg.face(i)));
  return out;
}

}  // namespace

GirthReport girth_check(const FaceGraph& fg) {
  GirthReport report;
  const int cap = max_abs_index(fg) + 2;  // a violating cycle has |c| <= |ind| + 2

  std::optional<GirthViolation> best;
  enumerate_proper_cycles(fg.embedding().abstract(), cap, [&](const ProperCycle& c) {
    auto sides = cycle_sides(fg, c);
    const int len = static_cast<int>(c.size());
    for (int side = 0; side < 2; ++side) {
      const auto& coll = side == 0 ? sides.inside_faces : sides.outside_faces;
      const int ind = collection_index(fg, coll);
      if (len < std::abs(ind) + 3) {
        GirthViolation v{c, coll, ind};
        if (!best || c.size() < best->cycle.size() ||
            (c.size() == best->cycle.size() && c < best->cycle))
          best = std::move(v);
      }
    }
    return true;
  });

  report.pass = !best.has_value();
  report.violation = std::move(best);
  if (report.pass) report.critical = critical_girth_cycles(fg).non_facial;
  return report;
}

bool maxwell_from_girth(const FaceGraph& fg) {
  auto report = girth_check(fg);
  if (!report.pass) throw std::invalid_argument("maxwell_from_girth: girth inequalities fail");
  std::vector<int> all(fg.labelled_faces().begin(), fg.labelled_faces().end());
  return collection_index(fg, all) == 0;
}

CriticalGirthCycles critical_girth_cycles(const FaceGraph& fg) {
  CriticalGirthCycles out;
  const auto facial = facial_canon_set(fg);
  const int cap = max_abs_index(fg) + 3;

  enumerate_proper_cycles(fg.embedding().abstract(), cap, [&](const ProperCycle& c) {
    if (facial.count(canonical_cycle(c))) return true;
    auto sides = cycle_sides(fg, c);
    const int len = static_cast<int>(c.size());
    const int ind_in = collection_index(fg, sides.inside_faces);
    if (len == std::abs(ind_in) + 3) {
      out.non_facial.push_back({c, sides.inside_faces, ind_in});
      return true;
    }
    const int ind_out = collection_index(fg, sides.outside_faces);
    if (len == std::abs(ind_out) + 3) out.non_facial.push_back({c, sides.outside_faces, ind_out});
    return true;
  });

  std::sort(out.non_facial.begin(), out.non_facial.end(),
            [](const CriticalGirthCycle& a, const CriticalGirthCycle& b) {
              if (a.cycle.size() != b.cycle.size()) return a.cycle.size() < b.cycle.size();
              return a.cycle < b.cycle;
            });
  for (int i = 0; i < fg.face_count(); ++i) out.facial.push_back(canonical_cycle(fg.face(i)));
  return out;
}

SeparationReport separation_check(const FaceGraph& fg) {
  SeparationReport rep;
  const auto& g = fg.embedding();

  // (i) no chords across labelled boundaries
  for (int f : fg.labelled_faces()) {
    const auto& w = fg.face(f);
    const int r = static_cast<int>(w.size());
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        const bool consecutive = (j == i + 1) || (i == 0 && j == r - 1);
        if (consecutive) continue;
        if (g.has_edge(w[i], w[j])) {
          rep.pass = false;
          rep.chord = Edge(w[i], w[j]);
          rep.chord_face = f;
          return rep;
        }
      }
    }
  }

  // (ii) H faces pairwise share at most two vertices, adjacent when two
  std::vector<int> holes;
  for (int f : fg.labelled_faces())
    if (fg.label(f) == FaceLabel::H) holes.push_back(f);
  for (std::size_t a = 0; a < holes.size(); ++a) {
    const auto& wa = fg.face(holes[a]);
    std::set<int> va(wa.begin(), wa.end());
    for (std::size_t b = a + 1; b < holes.size(); ++b) {
      std::vector<int> shared;
      for (int v : fg.face(holes[b]))
        if (va.count(v)) shared.push_back(v);
      if (shared.size() > 2 ||
          (shared.size() == 2 && !g.has_edge(shared[0], shared[1]))) {
        rep.pass = false;
        rep.bad_hole_pair = {holes[a], holes[b]};
        std::sort(shared.begin(), shared.end());
        rep.shared_vertices = std::move(shared);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace rigidlab
