#pragma once

#include <string>
#include <vector>

namespace freecat {

// ---------------------------------------------------------------------------
// Batch command-line driver.
//
// Subcommands:
//   check <sig>
//   eq <sig> --lhs <term> --rhs <term> [--strategy nf|search|model|full]
//            [--fuel N] [--model F]... [--seed S] [--random-models N]
//   normalize <sig> --term <t> [--fuel N]
//   eval <sig> --model <F> --term <t>
//   coherence --mode <m> [--sig F] [--model F] --samples N --seed S
//   mill check <proof-file> [--sig <sig>]
//   mill compile <proof-file> [--sig <sig>] [--proof NAME]
//   lam run <file> [--fuel N] | lam ski <file> | lam church <n>
//   lin cpvp <file> --term <lterm>
//   lin eq <file> --lhs <lterm> --rhs <lterm> [--fuel N] [--seed S]
//   diagram <sig> --term <t> --format json|dot|svg -o <path>
//
// Exit codes: 0 ok/equal; 1 not-equal/refuted/invalid; 2 unknown;
// 3 parse-or-type error; 4 I/O error.
// ---------------------------------------------------------------------------

struct RunReport {
  std::string command;            // echo of the invocation
  std::vector<std::string> lines; // verdicts, witnesses, rendered output
  int exit_code = 0;
  double seconds = 0.0;
};

RunReport run_command(const std::vector<std::string>& args);

} // namespace freecat
