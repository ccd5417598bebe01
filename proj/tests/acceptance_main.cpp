// Acceptance suite: runs every verification criterion at the pinned default
// grid and prints one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria (0 when everything holds).

#include <iostream>

#include "dsl/acceptance.hpp"

int main() {
  const auto results = dsl::run_acceptance(std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  return failures;
}
