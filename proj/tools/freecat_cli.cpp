#include <cstdio>
#include <string>
#include <vector>

#include "freecat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  freecat::RunReport report = freecat::run_command(args);
  for (const auto& line : report.lines) std::printf("%s\n", line.c_str());
  std::fprintf(stderr, "# %s -> exit %d (%.3fs)\n", report.command.c_str(),
               report.exit_code, report.seconds);
  return report.exit_code;
}
