#pragma once

#include <functional>
#include <string>
#include <vector>

namespace adia {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string measured;
  std::string tolerance;
  double seconds = 0.0;
  /// Extra values printed under the result line; they do not affect passed.
  std::vector<std::string> diagnostics;
};

struct Criterion {
  std::string name;
  std::string summary;
  std::function<CriterionResult()> run;
};

/// The desk-scale acceptance suite, in report order.
const std::vector<Criterion>& acceptance_criteria();

/// Runs one criterion by name; exceptions become a failed result.
/// Throws std::invalid_argument for unknown names.
CriterionResult run_criterion(const std::string& name);

/// "PASS name | measured ... | tolerance ... | 1.23 s"
std::string format_result(const CriterionResult& result);

}  // namespace adia
