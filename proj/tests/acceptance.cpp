// One line per acceptance criterion; exit status 1 if any fails.
#include <iostream>

#include "suites.hpp"

int main() {
  const auto checks = graphonlab::suites::acceptance();
  int failed = 0;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << std::endl;
    failed += !c.passed;
  }
  std::cout << checks.size() - failed << "/" << checks.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
