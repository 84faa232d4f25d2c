#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "spmdbench/harness/plan.hpp"

namespace spmdbench::harness {

enum class Command { run, verify, phi, list, help };

struct PhiArgs {
  std::string candidate;
  std::string baseline;
  bool cap = false;
};

struct CliCommand {
  Command command = Command::help;
  RunPlan plan;
  PhiArgs phi;
  std::string help_text;  // set for Command::help
};

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitVerification = 2, kExitIo = 3 };

/// Parses argv (argv[0] is the program name). Throws UsageError on unknown
/// flags, workloads or malformed values.
CliCommand parse_cli(const std::vector<std::string>& argv);

/// Full tool behaviour: parse, dispatch, print, map errors to exit codes.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace spmdbench::harness
