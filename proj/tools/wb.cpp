#include "wb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wb::cli::dispatch(std::move(args), std::cout, std::cerr);
}
