#include <iostream>

#include "birkhoff/cli.hpp"

int main(int argc, char** argv) {
  birkhoff::RunConfig cfg;
  if (auto code = birkhoff::parse_command_line(argc, argv, cfg, std::cout, std::cerr)) return *code;
  return birkhoff::run(cfg, std::cout, std::cerr);
}
