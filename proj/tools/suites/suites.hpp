#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphonlab/constructions.hpp"

namespace graphonlab::suites {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Table for halting-roundtrip; the acceptance table otherwise.
  std::optional<HaltingTable> table;
};

const std::vector<std::string>& suite_names();

/// Throws Error(UnknownSuite) for names outside suite_names().
Report run_suite(const std::string& name, const SuiteOptions& options = {});

/// One check per acceptance criterion, in order.
std::vector<Check> acceptance(const SuiteOptions& options = {});

/// "PASS name: detail" per check, then a summary line.
std::string format_report(const Report& report);
std::string format_report_json(const Report& report);

}  // namespace graphonlab::suites
