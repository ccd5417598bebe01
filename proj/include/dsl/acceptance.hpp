#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dsl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  int grid_n = 1024;  // default resolution pinned by the criteria
};

/// Runs the twelve verification criteria end to end, printing one PASS/FAIL
/// line per criterion. Returns the per-criterion results.
std::vector<CriterionResult> run_acceptance(std::ostream& out,
                                            const AcceptanceOptions& opts = {});

}  // namespace dsl
