// Runs every reproduction criterion and prints one verdict line each.

#include <iostream>

#include "bent/verify.hpp"

int main() {
  const auto results = bent::verify::run_acceptance();
  bool ok = true;
  for (const auto& r : results) {
    std::cout << bent::verify::format_line(r) << '\n';
    ok = ok && r.passed;
  }
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
  return ok ? 0 : 1;
}
