#include <cstdio>
#include <string>
#include <vector>

#include "famfib/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  famfib::CliResult r = famfib::run_cli(std::move(args));
  std::fputs(r.report.c_str(), stdout);
  return r.exit_code;
}
