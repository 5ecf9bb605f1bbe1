#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sfindex/config.hpp"
#include "sfindex/report.hpp"

namespace sfindex {

/// Parameters shared by the registry checks, resolved from a RunConfig.
struct CheckContext {
  std::uint64_t seed = 1;
  std::vector<int> dims{2, 4, 6};
  std::vector<double> r_values{0.3, 1.0};
  double p = 1.0;
  double s0 = 3.0;
  int nodes = 64;

  static CheckContext from_config(const RunConfig& config);
};

struct CheckSpec {
  std::string name;
  std::string anchor;
  std::vector<std::string> tags;
  std::function<Report(const CheckContext&)> run;
};

/// Registered checks in declared order.
const std::vector<CheckSpec>& check_registry();
std::vector<std::string> check_names();

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one registered check for the configured seed. Throws UsageError for
/// unknown names. Engine exceptions are caught and recorded in the Report.
Report run_check(const std::string& name, const RunConfig& config);

/// Runs every check whose name or tag matches the selector ("all" matches
/// everything) for check.seeds consecutive seeds starting at the run seed.
SuiteResult run_suite(const std::string& selector, const RunConfig& config);

/// Machine and build description for report headers.
nlohmann::json environment_fingerprint(const RunConfig& config);

}  // namespace sfindex
