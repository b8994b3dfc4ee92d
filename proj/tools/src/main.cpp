#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

using rigidlab::cli::CommandResult;
using rigidlab::cli::RunConfig;

namespace {

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--seed", cfg.seed, "RNG seed echoed into the report");
  app->add_option("--trials", cfg.trials, "random placements per rank query");
  app->add_option("--max-vertices", cfg.max_vertices, "brute-force oracle bound");
  app->add_option("--jobs", cfg.jobs, "worker threads for corpus commands");
  app->add_option("--out", cfg.out_path, "write the main artifact to this path");
}

int emit(const CommandResult& result, const std::string& report_path) {
  if (report_path.empty()) {
    std::cout << result.report.dump(2) << std::endl;
  } else {
    rigidlab::io::save_json(report_path, result.report);
    std::cerr << "report written to " << report_path << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigidlab: minimal 3-rigidity workbench for block-and-hole graphs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string checks_csv;
  std::string report_path;
  app.add_option("--report", report_path, "write the JSON report here instead of stdout");

  auto* check = app.add_subcommand("check", "run checks and the theorem cross-check");
  check->add_option("input", cfg.input_path, "graph file (rigidlab/1)")->required();
  check->add_option("--checks", checks_csv,
                    "comma list: maxwell,sparsity,girth,separation,connectivity,reduction,rank");
  check->add_flag("--oracle", cfg.force_oracle, "cross-check sparsity with the exhaustive oracle");
  add_common(check, cfg);

  auto* reduce = app.add_subcommand("reduce", "emit a reduction certificate");
  reduce->add_option("input", cfg.input_path)->required();
  add_common(reduce, cfg);

  auto* certify = app.add_subcommand("certify", "reduce, then verify by replay");
  certify->add_option("input", cfg.input_path)->required();
  add_common(certify, cfg);

  auto* replay = app.add_subcommand("replay", "verify a certificate against a graph");
  replay->add_option("input", cfg.input_path)->required();
  replay->add_option("cert", cfg.cert_path, "certificate file (rigidlab-cert/1)")->required();
  add_common(replay, cfg);

  auto* gen = app.add_subcommand("gen", "generate spheres, face graphs and block-hole graphs");
  gen->add_option("kind", cfg.gen_kind, "sphere | facegraph | blockhole")->required();
  gen->add_option("--vertices", cfg.vertices);
  gen->add_option("--blocks", cfg.blocks);
  gen->add_option("--holes", cfg.holes);
  gen->add_flag("--tight", cfg.tight, "grow a tight single-block instance");
  gen->add_option("--block-kind", cfg.block_kind, "discus | doubledisc");
  add_common(gen, cfg);

  auto* mine = app.add_subcommand("mine", "search for counterexample-class fixtures");
  mine->add_option("--type-blocks", cfg.mine_m);
  mine->add_option("--type-holes", cfg.mine_n);
  mine->add_option("--budget", cfg.budget);
  mine->add_option("--class", cfg.mine_class, "counterexample | tif | db-terminal");
  mine->add_option("--out-dir", cfg.out_dir, "where mined fixtures are written");
  add_common(mine, cfg);

  CLI11_PARSE(app, argc, argv);

  if (!checks_csv.empty()) {
    std::stringstream ss(checks_csv);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.checks.insert(item);
  }

  try {
    if (check->parsed()) return emit(rigidlab::cli::cmd_check(cfg), report_path);
    if (reduce->parsed()) return emit(rigidlab::cli::cmd_reduce(cfg), report_path);
    if (certify->parsed()) return emit(rigidlab::cli::cmd_certify(cfg), report_path);
    if (replay->parsed()) return emit(rigidlab::cli::cmd_replay(cfg), report_path);
    if (gen->parsed()) return emit(rigidlab::cli::cmd_gen(cfg), report_path);
    if (mine->parsed()) return emit(rigidlab::cli::cmd_mine(cfg), report_path);
  } catch (const std::exception& ex) {
    std::cerr << "fatal: " << ex.what() << "\n";
    return rigidlab::cli::kExitFault;
  }
  return 0;
}
