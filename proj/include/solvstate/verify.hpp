#pragma once

#include <string>
#include <vector>

#include "solvstate/measures.hpp"

namespace solvstate::verify {

struct Config {
  double lambda = 4.0;
  std::size_t k = 2;
  double alpha = 0.3;
};

struct Check {
  std::string suite;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Informational findings are listed under errata and never fail a suite.
  bool informational = false;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;
  std::vector<MomentReport> reports;  ///< moment tables behind the measures checks
  std::vector<MomentReport> errata;   ///< moment tables of the unresolved disk moment problem
  double seconds = 0.0;

  bool passed() const;
  std::vector<Check> failures() const;
  std::size_t assertion_count() const;
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("ladder", "gk", "kp", "measures", "pt") or "all".
/// Throws DomainError for an unknown name.
Report run(const std::string& suite, const Config& cfg = {});

}  // namespace solvstate::verify
