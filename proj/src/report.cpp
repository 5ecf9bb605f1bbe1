#include "sfindex/report.hpp"

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>

namespace sfindex {

std::string source_name(Source s) {
  switch (s) {
    case Source::Published: return "published";
    case Source::Exact: return "exact";
    case Source::Computed: return "computed";
  }
  return "computed";
}

static Source source_from_name(const std::string& s) {
  if (s == "published") return Source::Published;
  if (s == "exact") return Source::Exact;
  return Source::Computed;
}

Metric& Report::expect_close(const std::string& name, double value, double expected, double tol, Source src,
                             double scale) {
  Metric m;
  m.name = name;
  m.value = value;
  m.expected = expected;
  m.source = src;
  m.abs_err = std::abs(value - expected);
  m.tol = tol * scale;
  m.pass = std::isfinite(value) && m.abs_err <= m.tol;
  metrics.push_back(m);
  return metrics.back();
}

Metric& Report::expect_at_most(const std::string& name, double value, double ceiling, Source src) {
  Metric m;
  m.name = name;
  m.value = value;
  m.expected = ceiling;
  m.source = src;
  m.abs_err = std::max(0.0, value - ceiling);
  m.tol = 0.0;
  m.pass = std::isfinite(value) && value <= ceiling;
  m.note = "upper bound";
  metrics.push_back(m);
  return metrics.back();
}

Metric& Report::expect_true(const std::string& name, bool ok, Source src, const std::string& note) {
  Metric m;
  m.name = name;
  m.value = ok ? 1.0 : 0.0;
  m.expected = 1.0;
  m.source = src;
  m.abs_err = ok ? 0.0 : 1.0;
  m.pass = ok;
  m.note = note;
  metrics.push_back(m);
  return metrics.back();
}

Metric& Report::record(const std::string& name, double value) {
  Metric m;
  m.name = name;
  m.value = value;
  m.pass = true;
  m.note = "info";
  metrics.push_back(m);
  return metrics.back();
}

void Report::fail(const std::string& why) {
  notes.push_back(why);
  aborted = true;
}

bool Report::passed() const {
  if (aborted) return false;
  for (const Metric& m : metrics)
    if (!m.pass) return false;
  return true;
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string Report::digest() const { return fnv1a_hex(check + "|" + inputs.dump()); }

nlohmann::json Report::to_json() const {
  nlohmann::json ms = nlohmann::json::array();
  for (const Metric& m : metrics) {
    nlohmann::json j = {{"name", m.name},       {"value", m.value}, {"abs_err", m.abs_err},
                        {"tol", m.tol},         {"pass", m.pass},   {"provenance", source_name(m.source)}};
    j["expected"] = m.expected ? nlohmann::json(*m.expected) : nlohmann::json(nullptr);
    if (!m.note.empty()) j["note"] = m.note;
    ms.push_back(j);
  }
  return {{"check", check},     {"anchor", anchor}, {"inputs", inputs},   {"inputs_digest", digest()},
          {"metrics", ms},      {"notes", notes},   {"data", data},       {"pass", passed()},
          {"aborted", aborted}, {"wall_time_s", wall_time}};
}

Report Report::from_json(const nlohmann::json& j) {
  Report r(j.at("check").get<std::string>(), j.value("anchor", ""));
  r.inputs = j.value("inputs", nlohmann::json::object());
  r.notes = j.value("notes", std::vector<std::string>{});
  r.data = j.value("data", nlohmann::json::object());
  r.aborted = j.value("aborted", false);
  r.wall_time = j.value("wall_time_s", 0.0);
  for (const auto& mj : j.at("metrics")) {
    Metric m;
    m.name = mj.at("name").get<std::string>();
    m.value = mj.at("value").is_number() ? mj.at("value").get<double>() : NAN;
    if (mj.contains("expected") && mj["expected"].is_number()) m.expected = mj["expected"].get<double>();
    m.source = source_from_name(mj.value("provenance", "computed"));
    m.abs_err = mj.value("abs_err", 0.0);
    m.tol = mj.value("tol", 0.0);
    m.pass = mj.value("pass", false);
    m.note = mj.value("note", "");
    r.metrics.push_back(m);
  }
  return r;
}

bool SuiteResult::passed() const {
  for (const Report& r : reports)
    if (!r.passed()) return false;
  return true;
}

int SuiteResult::pass_count() const {
  int n = 0;
  for (const Report& r : reports) n += r.passed() ? 1 : 0;
  return n;
}

nlohmann::json suite_to_json(const SuiteResult& s, const nlohmann::json& environment) {
  nlohmann::json reps = nlohmann::json::array();
  for (const Report& r : s.reports) reps.push_back(r.to_json());
  return {{"schema", "sfindex-report/1"},
          {"environment", environment},
          {"summary",
           {{"checks", s.reports.size()}, {"passed", s.pass_count()}, {"all_pass", s.passed()}}},
          {"warnings", s.warnings},
          {"reports", reps}};
}

namespace {
std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string reports_to_csv(const std::vector<Report>& reports) {
  std::ostringstream os;
  os << "check,metric,value,expected,provenance,abs_err,tol,pass\n";
  for (const Report& r : reports)
    for (const Metric& m : r.metrics)
      os << csv_field(r.check) << "," << csv_field(m.name) << "," << csv_number(m.value) << ","
         << (m.expected ? csv_number(*m.expected) : std::string()) << "," << source_name(m.source) << ","
         << csv_number(m.abs_err) << "," << csv_number(m.tol) << "," << (m.pass ? "true" : "false") << "\n";
  return os.str();
}

std::string suite_to_csv(const SuiteResult& s) { return reports_to_csv(s.reports); }

nlohmann::json strip_timing(nlohmann::json j) {
  if (j.is_object()) {
    j.erase("wall_time_s");
    j.erase("generated_at");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

}  // namespace sfindex
