#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace powerdeform::tools {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ScenarioResult {
  std::string id;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool passed() const;
};

struct ReproOptions {
  int threads = 1;
  /// Progress lines; null for silence.
  std::ostream* log = nullptr;
};

/// Scenario ids in acceptance order.
const std::vector<std::string>& scenario_names();
/// One-line description of a scenario.
std::string_view scenario_title(std::string_view name);
ScenarioResult run_scenario(std::string_view name, const ReproOptions& options = {});

/// PASS/FAIL line per check followed by a summary line.
void print_result(const ScenarioResult& result, std::ostream& out);

}  // namespace powerdeform::tools
