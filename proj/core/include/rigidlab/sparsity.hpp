#pragma once

#include <set>

#include "rigidlab/graph.hpp"

namespace rigidlab {

/// Freedom number 3|V| - |E|.
int freedom(const Graph& g);

/// True when |E| = 3|V| - 6.
bool satisfies_maxwell_count(const Graph& g);

struct ExcessResult {
  int value = 0;                // max over S >= forced of |E(G[S])| - 3|S|
  std::set<int> witness;        // a set S achieving the max
};

/// Maximum induced-edge excess over vertex sets containing `forced`,
/// computed as a minimum s-t cut in a project-selection network: every
/// edge is a profit-1 project requiring both endpoints, every unforced
/// vertex costs 3.
ExcessResult max_subgraph_excess(const Graph& g, const std::set<int>& forced);

enum class SparsityVerdict { Sparse, Tight, Violation };

struct SparsityReport {
  SparsityVerdict verdict = SparsityVerdict::Sparse;
  std::set<int> witness;        // violating vertex set, when verdict == Violation
  int witness_edges = 0;        // induced edge count of the witness
  int freedom_of_whole = 0;
};

/// Decides (3,6)-sparsity: f(J) >= 6 for every subgraph J with at least two
/// edges. Equivalently, for every pair of distinct edges the excess over
/// sets containing their endpoints is <= -6; it suffices to test pairs of
/// edges sharing a vertex, since a minimal violating set has minimum
/// induced degree 3. Verdict is Tight when additionally f(G) = 6.
SparsityReport is_36_sparse(const Graph& g);

bool is_36_tight(const Graph& g);

/// Exhaustive check over all induced vertex subsets with >= 2 induced
/// edges. Independent of the min-cut path; throws when |V| > max_vertices.
bool brute_force_sparse_oracle(const Graph& g, int max_vertices = 12);

}  // namespace rigidlab
