#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "rigidlab/constructions.hpp"
#include "rigidlab/reduction.hpp"

namespace rigidlab::io {

using json = nlohmann::json;

inline constexpr const char* kGraphFormat = "rigidlab/1";
inline constexpr const char* kCertFormat = "rigidlab-cert/1";

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A parsed input file: the face graph and, when the file carries explicit
/// blocks, the assembled block-and-hole graph.
struct LoadedInput {
  FaceGraph face_graph;
  std::optional<BlockHoleGraph> block_hole;
};

json face_graph_to_json(const FaceGraph& fg);
json block_hole_to_json(const BlockHoleGraph& bh);

FaceGraph face_graph_from_json(const json& j);
LoadedInput input_from_json(const json& j);

/// FNV-1a 64 over the canonical serialization; hex string.
std::string digest(const FaceGraph& fg);

json tree_to_json(const ReductionTree& tree);

struct RebuildOutcome {
  std::optional<ReductionTree> tree;
  std::string error;   // mentions the first failing step
  int failed_step = -1;
};

/// Reconstructs a reduction tree by applying the certificate's recorded
/// moves to the input graph, verifying every node digest along the way.
RebuildOutcome rebuild_tree(const FaceGraph& input, const json& cert);

/// Normalization applied by reduce_to_tree before the root node is stored:
/// transpose a single-hole input, then put the block face outside.
FaceGraph normalize_for_reduction(const FaceGraph& fg, bool transposed);

LoadedInput load_input(const std::string& path);
json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace rigidlab::io
