#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rigidlab/graph.hpp"

namespace rigidlab {

/// Proper cycle: pairwise distinct vertices, stored in canonical form
/// (see canonical_cycle). Length in edges equals the vertex count.
using ProperCycle = std::vector<int>;

/// Enumerates every proper cycle of length >= 3 (and <= max_len when given)
/// exactly once up to rotation and reflection. Depth-first over darts with
/// canonical-form anchoring: a cycle is emitted from its smallest vertex,
/// walking toward the smaller of that vertex's two cycle neighbors.
/// The visitor may return false to stop the enumeration early.
void enumerate_proper_cycles(const Graph& g, std::optional<int> max_len,
                             const std::function<bool(const ProperCycle&)>& visit);

/// Convenience wrapper collecting all cycles, sorted by length then
/// lexicographically.
std::vector<ProperCycle> all_proper_cycles(const Graph& g,
                                           std::optional<int> max_len = std::nullopt);

}  // namespace rigidlab
