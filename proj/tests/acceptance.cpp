#include <iostream>

#include "hk/verify.hpp"

// Runs every acceptance check and prints one PASS/FAIL line per check.
int main() {
  const auto results = hk::run_suite("all");
  const int failures = hk::print_report(std::cout, results);
  std::cout << "acceptance: " << (results.size() - failures) << '/' << results.size()
            << " checks passed\n";
  return failures == 0 ? 0 : 1;
}
