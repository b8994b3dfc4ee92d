#include "rigidlab/rigidity.hpp"

#include <algorithm>
#include <random>

#include <Eigen/SVD>

namespace rigidlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 P = kRankPrime;

u64 add_mod(u64 a, u64 b) {
  u64 s = a + b;
  return s >= P ? s - P : s;
}
u64 sub_mod(u64 a, u64 b) { return a >= b ? a - b : a + P - b; }
u64 mul_mod(u64 a, u64 b) { return static_cast<u64>(u128(a) * b % P); }

u64 pow_mod(u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a) { return pow_mod(a, P - 2); }

}  // namespace

FieldPlacement random_field_placement(const Graph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dist(0, P - 1);
  FieldPlacement p;
  for (int attempt = 0; attempt < 64; ++attempt) {
    p.points.clear();
    for (int v : g.vertices()) p.points[v] = {dist(rng), dist(rng), dist(rng)};
    bool ok = true;
    for (const Edge& e : g.edges())
      if (p.points[e.u] == p.points[e.v]) ok = false;
    if (ok) return p;
  }
  throw std::runtime_error("random_field_placement: could not avoid coincidences");
}

RealPlacement random_real_placement(const Graph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RealPlacement p;
  for (int v : g.vertices()) p.points[v] = {dist(rng), dist(rng), dist(rng)};
  return p;
}

std::vector<std::vector<u64>> rigidity_matrix(const Graph& g, const FieldPlacement& p) {
  const auto verts = g.vertices();
  std::map<int, int> col;
  for (std::size_t i = 0; i < verts.size(); ++i) col[verts[i]] = static_cast<int>(i);

  const auto edges = g.edges();
  std::vector<std::vector<u64>> m(edges.size(), std::vector<u64>(3 * verts.size(), 0));
  for (std::size_t r = 0; r < edges.size(); ++r) {
    const auto& pu = p.points.at(edges[r].u);
    const auto& pv = p.points.at(edges[r].v);
    if (pu == pv) throw std::invalid_argument("rigidity_matrix: coincident edge endpoints");
    for (int k = 0; k < 3; ++k) {
      u64 d = sub_mod(pu[k], pv[k]);
      m[r][3 * col[edges[r].u] + k] = d;
      m[r][3 * col[edges[r].v] + k] = sub_mod(0, d);
    }
  }
  return m;
}

Eigen::MatrixXd rigidity_matrix_real(const Graph& g, const RealPlacement& p) {
  const auto verts = g.vertices();
  std::map<int, int> col;
  for (std::size_t i = 0; i < verts.size(); ++i) col[verts[i]] = static_cast<int>(i);

  const auto edges = g.edges();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<int>(edges.size()),
                                            3 * static_cast<int>(verts.size()));
  for (std::size_t r = 0; r < edges.size(); ++r) {
    const auto& pu = p.points.at(edges[r].u);
    const auto& pv = p.points.at(edges[r].v);
    for (int k = 0; k < 3; ++k) {
      double d = pu[k] - pv[k];
      m(static_cast<int>(r), 3 * col[edges[r].u] + k) = d;
      m(static_cast<int>(r), 3 * col[edges[r].v] + k) = -d;
    }
  }
  return m;
}

int field_matrix_rank(std::vector<std::vector<u64>> m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    const u64 inv = inv_mod(m[rank][c]);
    for (int k = c; k < cols; ++k) m[rank][k] = mul_mod(m[rank][k], inv);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const u64 f = m[r][c];
      for (int k = c; k < cols; ++k) m[r][k] = sub_mod(m[r][k], mul_mod(f, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

int real_matrix_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double tol = sv(0) * 1e-9;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  return rank;
}

int generic_rank(const Graph& g, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("generic_rank: trials must be >= 1");
  if (g.edge_count() == 0) return 0;
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    auto p = random_field_placement(g, seed + static_cast<std::uint64_t>(t) * 0x9e3779b97f4a7c15ull);
    best = std::max(best, field_matrix_rank(rigidity_matrix(g, p)));
  }
  return best;
}

const char* to_string(RankVerdict v) {
  switch (v) {
    case RankVerdict::Isostatic: return "isostatic";
    case RankVerdict::RigidWithRedundancy: return "rigid-with-redundancy";
    case RankVerdict::FlexibleOrUnlucky: return "flexible-or-unlucky";
  }
  return "?";
}

namespace {

// Translations and rotations about the coordinate axes at a placement;
// columns span the trivial flex space (dimension 6 when the points are
// not collinear).
Eigen::MatrixXd trivial_flex_columns(const Graph& g, const RealPlacement& p) {
  const auto verts = g.vertices();
  const int n = static_cast<int>(verts.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(3 * n, 6);
  for (int i = 0; i < n; ++i) {
    const auto& q = p.points.at(verts[i]);
    for (int k = 0; k < 3; ++k) t(3 * i + k, k) = 1.0;
    // omega x q for omega = e_x, e_y, e_z
    t(3 * i + 1, 3) = -q[2];
    t(3 * i + 2, 3) = q[1];
    t(3 * i + 0, 4) = q[2];
    t(3 * i + 2, 4) = -q[0];
    t(3 * i + 0, 5) = -q[1];
    t(3 * i + 1, 5) = q[0];
  }
  return t;
}

}  // namespace

std::vector<Eigen::VectorXd> flex_basis(const Graph& g, const RealPlacement& p) {
  const int n = g.vertex_count();
  if (n < 3) throw std::invalid_argument("flex_basis: need at least 3 vertices");

  Eigen::MatrixXd trivial = trivial_flex_columns(g, p);
  if (real_matrix_rank(trivial) < 6)
    throw std::invalid_argument("flex_basis: degenerate placement (collinear points)");

  // Kernel vectors of [R; T^t] are infinitesimal flexes orthogonal to the
  // trivial space.
  Eigen::MatrixXd r = rigidity_matrix_real(g, p);
  Eigen::MatrixXd stacked(r.rows() + 6, 3 * n);
  stacked.topRows(r.rows()) = r;
  stacked.bottomRows(6) = trivial.transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = (sv.size() ? sv(0) : 0.0) * 1e-9;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;

  std::vector<Eigen::VectorXd> basis;
  for (int i = rank; i < 3 * n; ++i) basis.push_back(svd.matrixV().col(i));
  return basis;
}

RankReport is_minimally_3_rigid(const Graph& g, int trials, std::uint64_t seed) {
  if (g.vertex_count() < 3) throw std::invalid_argument("is_minimally_3_rigid: need >= 3 vertices");

  RankReport rep;
  rep.vertices = g.vertex_count();
  rep.edges = g.edge_count();
  rep.trials = trials;
  rep.target = 3 * rep.vertices - 6;
  rep.max_rank = generic_rank(g, trials, seed);

  if (rep.max_rank == rep.target) {
    rep.verdict = rep.edges == rep.target ? RankVerdict::Isostatic : RankVerdict::RigidWithRedundancy;
  } else {
    rep.verdict = RankVerdict::FlexibleOrUnlucky;
    // A real-arithmetic flex witness; any nontrivial kernel vector will do.
    auto p = random_real_placement(g, seed);
    auto basis = flex_basis(g, p);
    if (!basis.empty()) {
      rep.flex_witness.assign(basis.front().data(), basis.front().data() + basis.front().size());
    }
  }
  return rep;
}

Graph vertex_split(const Graph& g, int v, int v1, int v2, const std::set<int>& moved,
                   int fresh_id) {
  if (!g.has_edge(v, v1) || !g.has_edge(v, v2) || v1 == v2)
    throw std::invalid_argument("vertex_split: anchors must be distinct neighbors of v");
  if (g.has_vertex(fresh_id)) throw std::invalid_argument("vertex_split: fresh id in use");
  for (int w : moved) {
    if (w == v1 || w == v2 || !g.has_edge(v, w))
      throw std::invalid_argument("vertex_split: moved set must be non-anchor neighbors of v");
  }

  Graph out = g;
  for (int w : moved) out.remove_edge(v, w);
  out.add_vertex(fresh_id);
  for (int w : moved) out.add_edge(fresh_id, w);
  out.add_edge(fresh_id, v1);
  out.add_edge(fresh_id, v2);
  out.add_edge(fresh_id, v);
  return out;
}

}  // namespace rigidlab
