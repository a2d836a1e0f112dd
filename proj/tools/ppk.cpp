#include <cstdio>
#include <string>
#include <vector>

#include "ppk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  ppk::RunReport report = ppk::run_command(args);
  std::fputs(report.render().c_str(), stdout);
  return report.exit_code;
}
