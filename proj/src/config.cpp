#include "sfindex/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sfindex {

namespace {

enum class Kind { Int, Real, List, Text };

struct KeyInfo {
  const char* key;
  Kind kind;
};

const std::vector<KeyInfo>& key_table() {
  static const std::vector<KeyInfo> table{
      {"model.N", Kind::Int},          {"model.L", Kind::Real},         {"model.winding", Kind::Int},
      {"model.profile", Kind::Text},   {"model.mu", Kind::Real},        {"model.sigma", Kind::Real},
      {"model.amplitude", Kind::Real}, {"model.seed", Kind::Int},       {"model.window", Kind::Real},
      {"run.seed", Kind::Int},         {"run.threads", Kind::Int},      {"run.format", Kind::Text},
      {"run.output_dir", Kind::Text},  {"check.seeds", Kind::Int},      {"check.dims", Kind::List},
      {"check.r", Kind::List},         {"check.p", Kind::Real},         {"check.s0", Kind::Real},
      {"check.nodes", Kind::Int},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t up = row[j];
      const size_t sub = diag + (std::tolower(a[i - 1]) == std::tolower(b[j - 1]) ? 0 : 1);
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

bool parse_int(const std::string& s, long long& out) {
  char* end = nullptr;
  errno = 0;
  out = std::strtoll(s.c_str(), &end, 10);
  return !s.empty() && end && *end == '\0' && errno == 0;
}

bool parse_real(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return !s.empty() && end && *end == '\0';
}

std::vector<double> parse_list(const std::string& s, bool& ok) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  ok = true;
  while (std::getline(ss, item, ',')) {
    double v;
    if (!parse_real(trim(item), v)) {
      ok = false;
      return {};
    }
    out.push_back(v);
  }
  ok = ok && !out.empty();
  return out;
}

}  // namespace

const std::vector<std::string>& RunConfig::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : key_table()) k.push_back(e.key);
    return k;
  }();
  return keys;
}

std::vector<std::string> RunConfig::suggestions(const std::string& key) {
  std::vector<std::pair<size_t, std::string>> scored;
  for (const auto& k : known_keys()) {
    const size_t d = edit_distance(key, k);
    const auto dot = k.find('.');
    const size_t tail = edit_distance(key, k.substr(dot + 1));
    const size_t best = std::min(d, tail);
    if (best <= std::max<size_t>(2, key.size() / 3)) scored.emplace_back(best, k);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (size_t i = 0; i < scored.size() && i < 3; ++i) out.push_back(scored[i].second);
  return out;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  const auto it = std::find_if(key_table().begin(), key_table().end(),
                               [&](const KeyInfo& e) { return key == e.key; });
  if (it == key_table().end()) {
    std::string msg = "unknown configuration key '" + key + "'";
    const auto sug = suggestions(key);
    if (!sug.empty()) {
      msg += "; did you mean ";
      for (size_t i = 0; i < sug.size(); ++i) msg += (i ? ", " : "") + ("'" + sug[i] + "'");
      msg += "?";
    }
    throw ConfigError(msg);
  }
  bool ok = true;
  switch (it->kind) {
    case Kind::Int: {
      long long v;
      ok = parse_int(value, v);
      break;
    }
    case Kind::Real: {
      double v;
      ok = parse_real(value, v);
      break;
    }
    case Kind::List:
      parse_list(value, ok);
      break;
    case Kind::Text:
      if (key == "model.profile") {
        ok = value == "smoothstep" || value == "fourier";
      } else if (key == "run.format") {
        ok = value == "json" || value == "csv";
      }
      break;
  }
  if (!ok) throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
  entries_[key] = value;
}

void RunConfig::merge_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!section.empty()) key = section + "." + key;
    try {
      set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void RunConfig::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  merge_text(ss.str(), path);
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  double v = fallback;
  parse_real(it->second, v);
  return v;
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  long long v = fallback;
  parse_int(it->second, v);
  return v;
}

std::vector<double> RunConfig::get_list(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  bool ok;
  auto v = parse_list(it->second, ok);
  return ok ? v : fallback;
}

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("SFINDEX_SEED")) {
    long long v;
    if (parse_int(env, v) && v >= 0) return static_cast<std::uint64_t>(v);
  }
  return fallback;
}

std::uint64_t RunConfig::seed() const {
  return has("run.seed") ? static_cast<std::uint64_t>(get_int("run.seed", 1)) : default_seed(1);
}

int RunConfig::threads() const { return static_cast<int>(std::max<long long>(1, get_int("run.threads", 1))); }

ModelParams RunConfig::model() const {
  ModelParams m;
  m.N = static_cast<int>(get_int("model.N", m.N));
  m.L = get_double("model.L", m.L);
  m.winding = static_cast<int>(get_int("model.winding", m.winding));
  m.profile = profile_from_name(get("model.profile", profile_name(m.profile)));
  m.mu = get_double("model.mu", m.mu);
  m.sigma = get_double("model.sigma", m.sigma);
  m.amplitude = get_double("model.amplitude", m.amplitude);
  m.seed = static_cast<std::uint64_t>(get_int("model.seed", static_cast<long long>(m.seed)));
  m.window = get_double("model.window", m.window);
  return m;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : entries_) j[k] = v;
  return j;
}

}  // namespace sfindex
