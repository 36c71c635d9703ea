#include <string>
#include <vector>

#include "slepsense/cli.hpp"

int main(int argc, char** argv) {
  return slepsense::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
