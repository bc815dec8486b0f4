#pragma once

#include <string>
#include <vector>

namespace dunkl {

/// Outcome of one identity check. `tag` is a stable identifier for the
/// identity being exercised (machine-readable, stays fixed across releases).
struct CheckReport {
  std::string name;
  std::string tag;
  bool pass = true;
  double worst_error = 0.0;
  double tolerance = 0.0;
  std::string detail;  // witness / offending case when failing
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckReport> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

}  // namespace dunkl
