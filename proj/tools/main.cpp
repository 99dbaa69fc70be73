#include <string>
#include <vector>

#include "ergmbayes/cli.hpp"

int main(int argc, char** argv) {
  return ergmbayes::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
