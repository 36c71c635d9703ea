#include "slepsense/cli.hpp"

namespace slepsense::cli {

int run(const std::vector<std::string>& args) {
  (void)args;
  return kExitConfig;  // TODO: filled in with the subcommands
}

}  // namespace slepsense::cli
