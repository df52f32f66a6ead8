#pragma once

#include <string>
#include <vector>

namespace sl4branch {

/// One verified assertion: a named clause with expected/actual rendering.
struct ClauseResult {
  std::string name;
  bool pass;
  std::string expected;
  std::string actual;
};

struct VerificationReport {
  std::string target;
  std::vector<ClauseResult> clauses;

  bool pass() const {
    for (const ClauseResult& c : clauses)
      if (!c.pass) return false;
    return true;
  }

  /// Name of the first failed clause, empty when all pass.
  std::string first_failure() const {
    for (const ClauseResult& c : clauses)
      if (!c.pass) return c.name;
    return "";
  }
};

}  // namespace sl4branch
