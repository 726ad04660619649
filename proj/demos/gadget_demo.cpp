// Builds the first few connecting paths in Z wr K2 and prints them.
#include <iostream>

#include "wreath/experiments.hpp"

int main() {
  wreath::GadgetConfig cfg;
  cfg.steps = 4;
  wreath::GadgetRun run = wreath::run_gadget(cfg);
  for (const auto& p : run.paths) {
    std::cout << "P_" << p.i << " (length " << p.length() << "):\n";
    for (const auto& v : p.assembled) std::cout << "  " << v.encode() << "\n";
  }
  std::cout << (run.ok() ? "all checks passed\n" : "check failed\n");
  return run.ok() ? 0 : 1;
}
