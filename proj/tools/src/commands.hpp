#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "io.hpp"

namespace rigidlab::cli {

inline constexpr const char* kToolVersion = "rigidlab 1.0.0";

// Exit codes: 0 all selected checks pass, 2 a check fails, 3 invalid
// input, 4 internal fault (equivalence breach or oracle mismatch).
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitBadInput = 3;
inline constexpr int kExitFault = 4;

struct RunConfig {
  std::string input_path;
  std::string cert_path;
  std::string out_path;
  std::string out_dir = ".";

  std::uint64_t seed = 1;
  int trials = 3;
  int max_vertices = 12;            // brute-force oracle bound
  std::set<std::string> checks;     // empty = all
  bool force_oracle = false;
  int jobs = 1;

  // gen
  std::string gen_kind = "sphere";  // sphere | facegraph | blockhole
  int vertices = 12;
  int blocks = 1;
  int holes = 1;
  bool tight = false;
  std::string block_kind = "discus";  // discus | doubledisc

  // mine
  int mine_m = 2;
  int mine_n = 2;
  long budget = 100000;
  std::string mine_class = "counterexample";  // counterexample | tif | db-terminal
};

struct CommandResult {
  int exit_code = kExitPass;
  io::json report;
};

CommandResult cmd_check(const RunConfig& cfg);
CommandResult cmd_reduce(const RunConfig& cfg);
CommandResult cmd_certify(const RunConfig& cfg);
CommandResult cmd_replay(const RunConfig& cfg);
CommandResult cmd_gen(const RunConfig& cfg);
CommandResult cmd_mine(const RunConfig& cfg);

}  // namespace rigidlab::cli
