#include <iostream>

#include "chistar/cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = chistar::cli::parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  return chistar::cli::run(*parsed.config);
}
