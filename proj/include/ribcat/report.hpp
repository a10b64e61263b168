#ifndef RIBCAT_REPORT_HPP
#define RIBCAT_REPORT_HPP

#include <string>
#include <vector>

#include "ribcat/numerics.hpp"

namespace ribcat {

struct CheckLine {
  std::string name;
  bool passed = false;
  double residual = 0;
  std::string witness;
};

struct RunReport {
  std::string command;
  std::vector<CheckLine> checks;
  bool all_passed() const {
    for (auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  void add(const std::string& name, bool ok, double residual = 0, const std::string& witness = "") {
    checks.push_back({name, ok, residual, witness});
  }
};

std::string report_to_json(const RunReport& rep);
void print_report(const RunReport& rep);

/// Acceptance suite: every criterion at its pinned tolerance, one line each.
RunReport run_acceptance(const Tolerance& tol, bool verbose);

}  // namespace ribcat

#endif
