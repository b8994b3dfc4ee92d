#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rigidlab/constructions.hpp"

namespace rigidlab::corpus {

/// Planar vertex split lifted to face graphs: labelled boundaries follow
/// the split vertex. Returns nullopt when a labelled face cannot be
/// re-matched (should not happen for valid inputs).
std::optional<FaceGraph> face_graph_split(const FaceGraph& fg, int v, int anchor_x, int anchor_y,
                                          int fresh_id);

/// Glues a single-block guest into an H face of the host whose boundary
/// has the same length (the inverse of a separating cycle division). Tries
/// all boundary alignments; nullopt when none embeds cleanly.
std::optional<FaceGraph> paste_into_hole(const FaceGraph& host, int hole_face,
                                         const FaceGraph& guest);

/// Tight single-block instance grown from a small cycle face graph by
/// seeded planar splits and hole pastes; every accepted move keeps the
/// discus-and-hole graph (3,6)-tight.
FaceGraph tight_instance(std::uint64_t seed, int target_vertices);

/// Random face graph carved from a random sphere; nullopt when the carving
/// attempts fail.
std::optional<FaceGraph> random_carved_face_graph(std::uint64_t seed, int sphere_vertices,
                                                  int num_blocks, int num_holes);

/// Deterministic mixed corpus of single-block face graphs (roughly half
/// grown tight, half randomly carved).
std::vector<FaceGraph> single_block_corpus(std::uint64_t seed, int count, int max_vertices);

/// The 6-vertex type (2,2) face graph with four quadrilateral faces
/// (complete bipartite K_{2,4}): terminal, indivisible, BH-reduced, and
/// its sphere-block completion is never simple.
FaceGraph k24_fixture();

/// Type (1,2) seed: a pentagonal block and two quadrilateral holes carved
/// from the pentagonal bipyramid (total index zero).
FaceGraph pentagon_two_holes();

/// The hexagonal drum: both hexagonal faces of the hexagonal prism are
/// blocks, the six square sides are holes. The only prism whose index
/// balances; a (2,6) face graph in the tight class that is terminal,
/// indivisible and BH-reduced even though its block-and-hole graphs are
/// rigid.
FaceGraph hexagonal_drum_fixture();

}  // namespace rigidlab::corpus
