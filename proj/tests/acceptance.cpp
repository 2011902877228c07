// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments
// restrict the run to the named criteria (e.g. "C1 C4").
#include <iostream>
#include <set>
#include <string>

#include "suite.hpp"

int main(int argc, char** argv) {
  const std::set<std::string> only(argv + 1, argv + argc);
  const cstar::suite::SuiteOptions opts{cstar::suite::seed_from_env()};
  std::cout << "seed " << opts.seed << std::endl;
  int failed = 0;
  for (const auto& [id, criterion] : cstar::suite::criteria()) {
    if (!only.empty() && !only.contains(id)) continue;
    const auto r = criterion(opts);
    if (!r.passed) ++failed;
    std::cout << cstar::suite::format_line(r) << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
