#include <iostream>
#include <string>
#include <vector>

#include "fthresh/cli/execute.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string out, err;
  int code = fthresh::cli::run(args, out, err);
  std::cout << out;
  std::cerr << err;
  return code;
}
