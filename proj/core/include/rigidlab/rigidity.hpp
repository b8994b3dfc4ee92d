#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rigidlab/graph.hpp"

namespace rigidlab {

/// Prime modulus for randomized rank computation (2^61 - 1, Mersenne).
inline constexpr std::uint64_t kRankPrime = (1ull << 61) - 1;

/// Map vertex -> point. Field placements carry residues mod kRankPrime;
/// real placements carry doubles.
template <typename Scalar>
struct Placement {
  std::map<int, std::array<Scalar, 3>> points;
};

using FieldPlacement = Placement<std::uint64_t>;
using RealPlacement = Placement<double>;

/// Uniformly random placement with distinct endpoints on every edge.
FieldPlacement random_field_placement(const Graph& g, std::uint64_t seed);
RealPlacement random_real_placement(const Graph& g, std::uint64_t seed);

/// Rigidity matrix over the prime field: one row per edge, columns in
/// blocks of three per vertex (vertex order = sorted ids). Row for edge vw
/// holds p(v)-p(w) in v's block and p(w)-p(v) in w's block.
std::vector<std::vector<std::uint64_t>> rigidity_matrix(const Graph& g, const FieldPlacement& p);

Eigen::MatrixXd rigidity_matrix_real(const Graph& g, const RealPlacement& p);

int field_matrix_rank(std::vector<std::vector<std::uint64_t>> m);

/// Rank of a real matrix by singular-value thresholding (relative 1e-9).
int real_matrix_rank(const Eigen::MatrixXd& m);

/// Maximum finite-field rigidity-matrix rank over `trials` random
/// placements. Never exceeds the generic rank; equals it with
/// overwhelming probability per trial (Schwartz-Zippel over a 61-bit
/// prime).
int generic_rank(const Graph& g, int trials = 3, std::uint64_t seed = 1);

enum class RankVerdict { Isostatic, RigidWithRedundancy, FlexibleOrUnlucky };

const char* to_string(RankVerdict v);

struct RankReport {
  int vertices = 0;
  int edges = 0;
  int trials = 0;
  std::uint64_t modulus = kRankPrime;
  int max_rank = 0;
  int target = 0;  // 3|V| - 6
  RankVerdict verdict = RankVerdict::FlexibleOrUnlucky;
  /// Nontrivial real flex witness (3|V| coordinates, vertex-sorted), present
  /// when the graph fails to be infinitesimally rigid at a random placement.
  std::vector<double> flex_witness;
};

/// Monte Carlo minimal-3-rigidity verdict: isostatic iff the Maxwell count
/// holds and the generic rank reaches 3|V| - 6. "FlexibleOrUnlucky" is
/// falsification-only and never upgraded to a proof.
RankReport is_minimally_3_rigid(const Graph& g, int trials = 3, std::uint64_t seed = 1);

/// Basis of the nontrivial infinitesimal flexes at a real placement: the
/// orthogonal complement of the 6-dimensional trivial flex space inside
/// the kernel of the rigidity matrix. Throws when the placement is
/// degenerate (trivial space dimension below 6).
std::vector<Eigen::VectorXd> flex_basis(const Graph& g, const RealPlacement& p);

/// Vertex splitting: v is replaced by w1 = v and a fresh vertex w2; both
/// keep the anchor neighbors v1, v2 and gain the edge w1w2; every other
/// neighbor of v goes to w1 or w2 according to `moved` (the set that w2
/// takes). Returns the new graph.
Graph vertex_split(const Graph& g, int v, int v1, int v2, const std::set<int>& moved,
                   int fresh_id);

}  // namespace rigidlab
