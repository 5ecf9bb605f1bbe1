#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sfindex {

/// Where an expected value comes from: a published statement, a value forced
/// by the definitions, or an independently computed reference.
enum class Source { Published, Exact, Computed };

std::string source_name(Source s);

struct Metric {
  std::string name;
  double value = 0.0;
  std::optional<double> expected;
  Source source = Source::Computed;
  double abs_err = 0.0;
  double tol = 0.0;  // absolute tolerance actually applied
  bool pass = true;
  std::string note;
};

class Report {
 public:
  Report() = default;
  Report(std::string check, std::string anchor) : check(std::move(check)), anchor(std::move(anchor)) {}

  std::string check;
  std::string anchor;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<Metric> metrics;
  std::vector<std::string> notes;
  nlohmann::json data = nlohmann::json::object();
  double wall_time = 0.0;
  bool aborted = false;  // an engine threw; see notes

  /// |value - expected| <= tol * scale.
  Metric& expect_close(const std::string& name, double value, double expected, double tol, Source src,
                       double scale = 1.0);
  /// value <= ceiling.
  Metric& expect_at_most(const std::string& name, double value, double ceiling, Source src);
  Metric& expect_true(const std::string& name, bool ok, Source src, const std::string& note = {});
  /// Informational entry, never fails.
  Metric& record(const std::string& name, double value);
  void fail(const std::string& why);

  bool passed() const;
  std::string digest() const;
  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
};

struct SuiteResult {
  std::vector<Report> reports;
  std::vector<std::string> warnings;
  bool passed() const;
  int pass_count() const;
};

nlohmann::json suite_to_json(const SuiteResult& s, const nlohmann::json& environment);
std::string suite_to_csv(const SuiteResult& s);
std::string reports_to_csv(const std::vector<Report>& reports);
/// Removes wall-time and timestamp fields, for reproducibility comparisons.
nlohmann::json strip_timing(nlohmann::json j);
std::string fnv1a_hex(const std::string& s);

}  // namespace sfindex
