#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fuhp/field.hpp"

namespace fuhp {

enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitInvalidInput = 2 };

enum class OutputFormat { Json, Csv };

/// Resolved command-line configuration, echoed into every output document.
struct RunConfig {
  std::string command;
  std::vector<std::int64_t> q_list;
  std::optional<Residue> delta;        // nullopt: "auto"
  std::optional<Residue> r_s;          // nullopt: every regular radius
  std::vector<double> t_grid;
  OutputFormat format = OutputFormat::Json;
  std::string out_path;                // empty: standard output
  std::string mode = "both";
  bool include_lift = false;
};

/// Parses argv and runs one subcommand. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Upper bound on q from FUHP_MAX_Q, default 101.
std::int64_t max_q_from_env();

}  // namespace fuhp
