#include <csignal>
#include <iostream>

#include "ellsum_cli.hpp"

namespace {

extern "C" void on_interrupt(int) { ellsum::cli::request_stop(); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_interrupt);
  std::signal(SIGTERM, on_interrupt);
  return ellsum::cli::main_entry(argc, argv, std::cout, std::cerr);
}
