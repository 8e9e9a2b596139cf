#pragma once

// The acceptance matrix: fifteen numbered criteria, each reduced to one
// pass/fail line. Shared by `casimir_lab verify` and the acceptance test binary.

#include <functional>
#include <string>
#include <vector>

#include "casimir/cli/settings.hpp"

namespace casimir::acceptance {

enum class Status { pass, fail, skip };

struct CriterionResult {
  int id = 0;
  std::string title;
  Status status = Status::fail;
  /// Measured quantities; deterministic text (no timings).
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct Options {
  cli::Profile profile = cli::Profile::standard;
  /// Criteria to run; empty runs all.
  std::vector<int> only;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run(const Options& options = {});

/// "[ 7] FAIL  title: detail"
std::string format_line(const CriterionResult& r);

/// True if no criterion failed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace casimir::acceptance
