#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pbands::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kInconclusive = 3,
};

struct RunConfig {
  std::string command;
  std::vector<int> q;
  std::string potential = "zero";  // builtin name or JSON file path
  double delta = 0.1;
  bool force_delta = false;
  std::vector<int> grid;           // empty: default for the dimension
  std::size_t budget = 0;          // 0: library default
  std::optional<double> merge_tol;
  std::optional<double> energy;
  std::vector<double> theta;       // full-circle phases in [0,1)
  std::vector<double> beta;
  double t = 1e-3;
  std::uint64_t seed = 0;
  std::string out;
  bool json = false;
  unsigned threads = 0;            // execution detail, not part of reports
};

// Parses argv-style arguments (without the program name) and runs one
// subcommand. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbands::cli
