#include "commands.hpp"

#include <chrono>
#include <future>
#include <random>

#include "corpus.hpp"
#include "rigidlab/girth.hpp"
#include "rigidlab/reduction.hpp"
#include "rigidlab/rigidity.hpp"

namespace rigidlab::cli {

namespace {

using io::json;

class Timer {
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

 public:
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }
};

json base_report(const RunConfig& cfg, const char* command) {
  json j;
  j["tool"] = kToolVersion;
  j["command"] = command;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  if (!cfg.input_path.empty()) j["input"] = cfg.input_path;
  return j;
}

bool selected(const RunConfig& cfg, const std::string& name) {
  return cfg.checks.empty() || cfg.checks.count(name) != 0;
}

json sparsity_json(const SparsityReport& rep) {
  json j;
  switch (rep.verdict) {
    case SparsityVerdict::Tight: j["verdict"] = "tight"; break;
    case SparsityVerdict::Sparse: j["verdict"] = "sparse"; break;
    case SparsityVerdict::Violation: j["verdict"] = "violation"; break;
  }
  j["freedom"] = rep.freedom_of_whole;
  if (rep.verdict == SparsityVerdict::Violation) {
    j["witness"] = std::vector<int>(rep.witness.begin(), rep.witness.end());
    j["witness_edges"] = rep.witness_edges;
  }
  return j;
}

json rank_json(const RankReport& rep) {
  json j;
  j["verdict"] = to_string(rep.verdict);
  j["max_rank"] = rep.max_rank;
  j["target"] = rep.target;
  j["edges"] = rep.edges;
  j["vertices"] = rep.vertices;
  j["trials"] = rep.trials;
  j["modulus"] = std::to_string(rep.modulus);
  j["has_flex_witness"] = !rep.flex_witness.empty();
  return j;
}

}  // namespace

CommandResult cmd_check(const RunConfig& cfg) {
  Timer timer;
  CommandResult result;
  result.report = base_report(cfg, "check");

  io::LoadedInput input{FaceGraph::sphere(tetrahedron()), std::nullopt};
  try {
    input = io::load_input(cfg.input_path);
  } catch (const std::exception& ex) {
    result.report["error"] = ex.what();
    result.exit_code = kExitBadInput;
    return result;
  }

  const FaceGraph& fg = input.face_graph;
  result.report["input_digest"] = io::digest(fg);
  const auto [m, n] = fg.type();
  result.report["type"] = {m, n};
  const bool in_scope = (m <= 1 || n <= 1);
  result.report["theorem_scope"] =
      in_scope ? "single-block-or-single-hole"
               : std::string("outside theorem scope (m,n)=(") + std::to_string(m) + "," +
                     std::to_string(n) + ")";

  const Graph bh_graph =
      input.block_hole ? input.block_hole->graph() : discus_and_hole(fg).graph();
  result.report["block_hole_vertices"] = bh_graph.vertex_count();
  result.report["block_hole_edges"] = bh_graph.edge_count();

  json checks = json::object();
  bool all_pass = true;
  bool fault = false;

  std::optional<bool> tight_b, girth_b, reduce_b, rank_b;

  if (selected(cfg, "maxwell")) {
    const bool ok = satisfies_maxwell_count(bh_graph);
    checks["maxwell"] = {{"pass", ok}, {"freedom", freedom(bh_graph)}};
    all_pass &= ok;
  }
  if (selected(cfg, "sparsity")) {
    auto rep = is_36_sparse(bh_graph);
    auto j = sparsity_json(rep);
    const bool ok = rep.verdict == SparsityVerdict::Tight;
    j["pass"] = ok;
    tight_b = ok;
    if (cfg.force_oracle && bh_graph.vertex_count() <= cfg.max_vertices) {
      const bool oracle = brute_force_sparse_oracle(bh_graph, cfg.max_vertices);
      const bool mine = rep.verdict != SparsityVerdict::Violation;
      j["oracle_crosscheck"] = {{"oracle_sparse", oracle}, {"agrees", oracle == mine}};
      if (oracle != mine) fault = true;
    }
    checks["sparsity"] = std::move(j);
    all_pass &= ok;
  }
  if (selected(cfg, "girth")) {
    auto rep = girth_check(fg);
    json j;
    j["pass"] = rep.pass;
    if (rep.violation) {
      j["violating_cycle"] = rep.violation->cycle;
      j["violation_index"] = rep.violation->index;
    }
    bool maxwell_ok = false;
    if (rep.pass) {
      maxwell_ok = maxwell_from_girth(fg);
      j["maxwell_from_girth"] = maxwell_ok;
      json crit = json::array();
      for (const auto& c : rep.critical) crit.push_back(c.cycle);
      j["critical_cycles"] = std::move(crit);
    }
    const bool ok = rep.pass && maxwell_ok;
    j["pass"] = ok;
    girth_b = ok;
    checks["girth"] = std::move(j);
    all_pass &= ok;
  }
  if (selected(cfg, "separation")) {
    auto rep = separation_check(fg);
    json j;
    j["pass"] = rep.pass;
    if (rep.chord) j["chord"] = {rep.chord->u, rep.chord->v};
    if (rep.bad_hole_pair) {
      j["hole_pair"] = {rep.bad_hole_pair->first, rep.bad_hole_pair->second};
      j["shared_vertices"] = rep.shared_vertices;
    }
    checks["separation"] = std::move(j);
    all_pass &= rep.pass;
  }
  if (selected(cfg, "connectivity")) {
    json j;
    if (bh_graph.vertex_count() >= 4) {
      auto rep = is_3_connected(bh_graph);
      j["pass"] = rep.three_connected;
      if (rep.witness) j["separation_pair"] = {rep.witness->pair.first, rep.witness->pair.second};
      all_pass &= rep.three_connected;
    } else {
      j["pass"] = true;
      j["note"] = "fewer than 4 vertices";
    }
    checks["connectivity"] = std::move(j);
  }
  if (selected(cfg, "reduction") && in_scope) {
    json j;
    try {
      auto outcome = reduce_to_tree(fg);
      j["pass"] = outcome.ok();
      if (outcome.ok()) {
        j["nodes"] = outcome.tree->nodes.size();
        j["transposed"] = outcome.tree->transposed;
      } else {
        j["refusal"] = sparsity_json(*outcome.refusal);
      }
      reduce_b = outcome.ok();
    } catch (const std::invalid_argument& ex) {
      j["pass"] = false;
      j["note"] = ex.what();
      reduce_b = false;
    } catch (const std::logic_error& ex) {
      j["pass"] = false;
      j["fault"] = ex.what();
      fault = true;
      reduce_b = false;
    }
    checks["reduction"] = std::move(j);
    all_pass &= reduce_b.value_or(false);
  }
  if (selected(cfg, "rank")) {
    auto rep = is_minimally_3_rigid(bh_graph, cfg.trials, cfg.seed);
    auto j = rank_json(rep);
    const bool ok = rep.verdict == RankVerdict::Isostatic;
    j["pass"] = ok;
    rank_b = ok;
    checks["rank"] = std::move(j);
    all_pass &= ok;
  }
  result.report["checks"] = std::move(checks);

  // Theorem-level cross-check: the four predicates must agree pairwise on
  // single-block / single-hole inputs. Disagreement is a FAULT.
  if (in_scope && tight_b && girth_b && reduce_b && rank_b && !input.block_hole) {
    const bool consistent =
        (*tight_b == *girth_b) && (*tight_b == *reduce_b) && (*tight_b == *rank_b);
    result.report["equivalence"] = {{"checked", true},
                                    {"consistent", consistent},
                                    {"tight", *tight_b},
                                    {"girth", *girth_b},
                                    {"constructible", *reduce_b},
                                    {"isostatic", *rank_b}};
    if (!consistent) fault = true;
  } else {
    result.report["equivalence"] = {{"checked", false}};
  }

  result.report["timing_ms"] = timer.ms();
  result.exit_code = fault ? kExitFault : (all_pass ? kExitPass : kExitCheckFailed);
  return result;
}

CommandResult cmd_reduce(const RunConfig& cfg) {
  Timer timer;
  CommandResult result;
  result.report = base_report(cfg, "reduce");
  try {
    auto input = io::load_input(cfg.input_path);
    result.report["input_digest"] = io::digest(input.face_graph);
    auto outcome = reduce_to_tree(input.face_graph);
    if (!outcome.ok()) {
      result.report["pass"] = false;
      result.report["refusal"] = sparsity_json(*outcome.refusal);
      result.exit_code = kExitCheckFailed;
      return result;
    }
    json cert = io::tree_to_json(*outcome.tree);
    if (!cfg.out_path.empty()) io::save_json(cfg.out_path, cert);
    result.report["pass"] = true;
    result.report["nodes"] = outcome.tree->nodes.size();
    result.report["transposed"] = outcome.tree->transposed;
    result.report["certificate"] =
        cfg.out_path.empty() ? cert : json(cfg.out_path);
    result.report["timing_ms"] = timer.ms();
    return result;
  } catch (const io::ParseError& ex) {
    result.report["error"] = ex.what();
    result.exit_code = kExitBadInput;
    return result;
  } catch (const std::invalid_argument& ex) {
    result.report["error"] = ex.what();
    result.exit_code = kExitBadInput;
    return result;
  } catch (const std::logic_error& ex) {
    result.report["fault"] = ex.what();
    result.exit_code = kExitFault;
    return result;
  }
}

namespace {

// Shared by certify and replay: run the bottom-up reconstruction and
// compare against the input's discus-and-hole graph.
void verify_tree(const io::LoadedInput& input, const ReductionTree& tree, const RunConfig& cfg,
                 CommandResult& result) {
  ReplayOptions opts;
  opts.trials = cfg.trials;
  opts.seed = cfg.seed;
  auto rep = replay(tree, std::nullopt, opts);
  json j;
  j["pass"] = rep.ok;
  j["rank_checks"] = rep.rank_checks;
  if (!rep.ok) {
    j["error"] = rep.error;
    result.report["replay"] = std::move(j);
    result.exit_code = kExitCheckFailed;
    return;
  }

  FaceGraph target_fg = io::normalize_for_reduction(input.face_graph, tree.transposed);
  const Graph expected = discus_and_hole(target_fg).graph();
  const bool exact = rep.reconstructed == expected;
  const bool isomorphic = exact || are_isomorphic(rep.reconstructed, expected);
  j["matches_input_discus_exactly"] = exact;
  j["isomorphic_to_input_discus"] = isomorphic;
  j["transposed"] = tree.transposed;
  result.report["replay"] = std::move(j);
  if (!isomorphic) result.exit_code = kExitCheckFailed;
}

}  // namespace

CommandResult cmd_certify(const RunConfig& cfg) {
  Timer timer;
  CommandResult result = cmd_reduce(cfg);
  result.report["command"] = "certify";
  if (result.exit_code != kExitPass) return result;
  try {
    auto input = io::load_input(cfg.input_path);
    auto outcome = reduce_to_tree(input.face_graph);
    verify_tree(input, *outcome.tree, cfg, result);
    result.report["timing_ms"] = timer.ms();
    return result;
  } catch (const std::exception& ex) {
    result.report["fault"] = ex.what();
    result.exit_code = kExitFault;
    return result;
  }
}

CommandResult cmd_replay(const RunConfig& cfg) {
  Timer timer;
  CommandResult result;
  result.report = base_report(cfg, "replay");
  try {
    auto input = io::load_input(cfg.input_path);
    result.report["input_digest"] = io::digest(input.face_graph);
    json cert = io::load_json(cfg.cert_path);
    auto rebuilt = io::rebuild_tree(input.face_graph, cert);
    if (!rebuilt.tree) {
      result.report["pass"] = false;
      result.report["error"] = rebuilt.error;
      result.report["failed_step"] = rebuilt.failed_step;
      result.exit_code = kExitCheckFailed;
      result.report["timing_ms"] = timer.ms();
      return result;
    }
    verify_tree(input, *rebuilt.tree, cfg, result);
    result.report["timing_ms"] = timer.ms();
    return result;
  } catch (const io::ParseError& ex) {
    result.report["error"] = ex.what();
    result.exit_code = kExitBadInput;
    return result;
  }
}

CommandResult cmd_gen(const RunConfig& cfg) {
  Timer timer;
  CommandResult result;
  result.report = base_report(cfg, "gen");
  result.report["kind"] = cfg.gen_kind;

  try {
    json out;
    if (cfg.gen_kind == "sphere") {
      auto emb = random_triangulated_sphere(cfg.vertices, cfg.seed);
      out = io::face_graph_to_json(FaceGraph::sphere(emb));
    } else if (cfg.gen_kind == "facegraph" || cfg.gen_kind == "blockhole") {
      std::optional<FaceGraph> fg;
      if (cfg.tight && cfg.blocks == 1) {
        fg = corpus::tight_instance(cfg.seed, cfg.vertices);
      } else {
        for (int attempt = 0; attempt < 200 && !fg; ++attempt)
          fg = corpus::random_carved_face_graph(cfg.seed + 7919ull * attempt, cfg.vertices,
                                                cfg.blocks, cfg.holes);
      }
      if (!fg) throw std::runtime_error("could not carve a face graph with these parameters");
      if (cfg.gen_kind == "facegraph") {
        out = io::face_graph_to_json(*fg);
      } else if (cfg.block_kind == "discus") {
        out = io::block_hole_to_json(discus_and_hole(*fg));
      } else {
        auto outcome = double_disc_blocks(*fg, cfg.seed);
        if (!outcome.ok()) {
          json parallels = json::array();
          for (const auto& w : outcome.parallel_edges)
            parallels.push_back({{"edge", {w.edge.u, w.edge.v}},
                                 {"blocks", {w.first_block, w.second_block}}});
          result.report["pass"] = false;
          result.report["multigraph_rejection"] = std::move(parallels);
          result.exit_code = kExitCheckFailed;
          return result;
        }
        out = io::block_hole_to_json(*outcome.graph);
      }
    } else {
      throw std::invalid_argument("unknown gen kind '" + cfg.gen_kind + "'");
    }

    if (!cfg.out_path.empty()) io::save_json(cfg.out_path, out);
    result.report["pass"] = true;
    result.report["graph"] = cfg.out_path.empty() ? out : json(cfg.out_path);
    result.report["digest"] = io::digest(io::face_graph_from_json(out));
    result.report["timing_ms"] = timer.ms();
    return result;
  } catch (const std::exception& ex) {
    result.report["error"] = ex.what();
    result.exit_code = kExitBadInput;
    return result;
  }
}

namespace {

struct MineHit {
  long candidate = 0;
  json fixture;
  json diagnostics;
};

// One mining probe; returns the fixture when the candidate qualifies.
std::optional<MineHit> probe_candidate(const RunConfig& cfg, long index) {
  const std::uint64_t cand_seed = cfg.seed * 1000000007ull + static_cast<std::uint64_t>(index);
  std::mt19937_64 rng(cand_seed);
  std::optional<FaceGraph> fg;
  if (cfg.mine_class == "tif" && cfg.mine_m == 2 && cfg.mine_n == 6 && index % 1024 == 0) {
    // Salt the stream with the structured drum family; random carving
    // essentially never tiles eight disjoint disc regions.
    fg = corpus::hexagonal_drum_fixture();
  } else {
    const int sphere_n = 6 + static_cast<int>(rng() % 9);
    fg = corpus::random_carved_face_graph(cand_seed, sphere_n, cfg.mine_m, cfg.mine_n);
  }
  if (!fg) return std::nullopt;
  if (fg->type() != std::make_pair(cfg.mine_m, cfg.mine_n)) return std::nullopt;

  if (cfg.mine_class == "tif") {
    if (!in_tight_class(*fg)) return std::nullopt;
    auto flags = status(*fg);
    if (!(flags.terminal && flags.indivisible && flags.bh_reduced)) return std::nullopt;
    MineHit hit;
    hit.candidate = index;
    hit.fixture = io::face_graph_to_json(*fg);
    hit.diagnostics = {{"class", "tif"},
                       {"terminal", true},
                       {"indivisible", true},
                       {"bh_reduced", true}};
    return hit;
  }

  if (cfg.mine_class == "db-terminal") {
    auto outcome = double_disc_blocks(*fg, cand_seed);
    if (outcome.ok()) return std::nullopt;  // want a non-simple sphere-block union
    if (!in_tight_class(*fg)) return std::nullopt;
    if (!status(*fg).terminal) return std::nullopt;
    const Graph dagger = discus_and_hole(*fg).graph();
    const int target = 3 * dagger.vertex_count() - 6;
    if (generic_rank(dagger, cfg.trials, cand_seed) >= target) return std::nullopt;
    MineHit hit;
    hit.candidate = index;
    hit.fixture = io::face_graph_to_json(*fg);
    json parallels = json::array();
    for (const auto& w : outcome.parallel_edges) parallels.push_back({w.edge.u, w.edge.v});
    hit.diagnostics = {{"class", "db-terminal"},
                       {"discus_rank_deficient", true},
                       {"double_disc_parallel_edges", std::move(parallels)}};
    return hit;
  }

  // counterexample: simple (3,6)-tight sphere-block graph passing girth and
  // separation whose generic rank falls short.
  auto outcome = double_disc_blocks(*fg, cand_seed);
  if (!outcome.ok()) return std::nullopt;
  const Graph& g = outcome.graph->graph();
  if (!satisfies_maxwell_count(g)) return std::nullopt;
  if (!separation_check(*fg).pass) return std::nullopt;
  auto girth = girth_check(*fg);
  if (!girth.pass) return std::nullopt;
  if (!is_36_tight(g)) return std::nullopt;
  auto rank = is_minimally_3_rigid(g, cfg.trials, cand_seed);
  if (rank.verdict == RankVerdict::Isostatic) return std::nullopt;

  auto henneberg = inverse_henneberg_reduce(g);
  json residue;
  residue["vertices"] = henneberg.residue.vertex_count();
  residue["edges"] = henneberg.residue.edge_count();
  residue["removed"] = henneberg.removed;
  if (henneberg.residue.vertex_count() >= 4)
    residue["three_connected"] = is_3_connected(henneberg.residue).three_connected;

  MineHit hit;
  hit.candidate = index;
  hit.fixture = io::block_hole_to_json(*outcome.graph);
  hit.diagnostics = {{"class", "counterexample"},
                     {"rank", rank_json(rank)},
                     {"henneberg_residue", std::move(residue)}};
  return hit;
}

}  // namespace

CommandResult cmd_mine(const RunConfig& cfg) {
  Timer timer;
  CommandResult result;
  result.report = base_report(cfg, "mine");
  result.report["target_type"] = {cfg.mine_m, cfg.mine_n};
  result.report["class"] = cfg.mine_class;
  result.report["budget"] = cfg.budget;

  std::vector<MineHit> hits;
  const int jobs = std::max(1, cfg.jobs);
  const long chunk = 512;
  for (long base = 0; base < cfg.budget && hits.empty(); base += chunk * jobs) {
    std::vector<std::future<std::vector<MineHit>>> futures;
    for (int t = 0; t < jobs; ++t) {
      const long lo = base + t * chunk;
      const long hi = std::min(cfg.budget, lo + chunk);
      if (lo >= hi) break;
      futures.push_back(std::async(std::launch::async, [&cfg, lo, hi] {
        std::vector<MineHit> local;
        for (long i = lo; i < hi; ++i)
          if (auto hit = probe_candidate(cfg, i)) local.push_back(std::move(*hit));
        return local;
      }));
    }
    for (auto& f : futures)
      for (auto& h : f.get()) hits.push_back(std::move(h));
    std::sort(hits.begin(), hits.end(),
              [](const MineHit& a, const MineHit& b) { return a.candidate < b.candidate; });
  }

  json found = json::array();
  int file_idx = 0;
  for (const auto& hit : hits) {
    // Re-verify from the serialized form before writing.
    auto reloaded = io::input_from_json(hit.fixture);
    json entry;
    entry["candidate"] = hit.candidate;
    entry["diagnostics"] = hit.diagnostics;
    entry["digest"] = io::digest(reloaded.face_graph);
    if (!cfg.out_dir.empty()) {
      const std::string path = cfg.out_dir + "/mined_" + cfg.mine_class + "_" +
                               std::to_string(cfg.mine_m) + "_" + std::to_string(cfg.mine_n) +
                               "_" + std::to_string(file_idx++) + ".json";
      io::save_json(path, hit.fixture);
      entry["file"] = path;
    }
    found.push_back(std::move(entry));
  }
  result.report["found"] = std::move(found);
  result.report["budget_exhausted"] = hits.empty();
  result.report["timing_ms"] = timer.ms();
  return result;
}

}  // namespace rigidlab::cli
