#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace vacforce {

struct AcceptanceOutcome {
  bool passed = true;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& line) {
    passed = passed && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
  }
};

struct AcceptanceCheck {
  std::string name;
  std::string title;
  std::function<AcceptanceOutcome()> run;
};

// The executable acceptance criteria, with every tolerance pinned.
const std::vector<AcceptanceCheck>& acceptance_suite();

// Runs the named checks (all when names is empty), printing one PASS/FAIL
// line per check plus indented details. Returns 0 iff all selected checks
// passed. Unknown names raise ConfigError listing the available checks.
int run_acceptance(const std::vector<std::string>& names, std::ostream& out);

}  // namespace vacforce
