#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "sfindex/harness.hpp"

namespace sfindex {

Report run_check(const std::string& name, const RunConfig& config) {
  const auto& reg = check_registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const CheckSpec& c) { return c.name == name; });
  if (it == reg.end()) {
    std::string msg = "unknown check '" + name + "'; registered checks:";
    for (const auto& c : reg) msg += " " + c.name;
    throw UsageError(msg);
  }
  const auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    r = it->run(CheckContext::from_config(config));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    r = Report(it->name, it->anchor);
    r.fail(std::string("engine error: ") + e.what());
  }
  r.check = it->name;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SuiteResult run_suite(const std::string& selector, const RunConfig& config) {
  std::vector<const CheckSpec*> selected;
  for (const auto& c : check_registry()) {
    const bool tagged = std::find(c.tags.begin(), c.tags.end(), selector) != c.tags.end();
    if (selector == "all" || selector == c.name || tagged) selected.push_back(&c);
  }
  SuiteResult out;
  if (selected.empty()) {
    out.warnings.push_back("selector '" + selector + "' matched no checks");
    return out;
  }
  const long long seeds = std::max<long long>(1, config.get_int("check.seeds", 1));
  const std::uint64_t base = config.seed();
  struct Task {
    const CheckSpec* spec;
    RunConfig config;
  };
  std::vector<Task> tasks;
  for (const CheckSpec* spec : selected)
    for (long long k = 0; k < seeds; ++k) {
      RunConfig c = config;
      c.set("run.seed", std::to_string(base + static_cast<std::uint64_t>(k)));
      tasks.push_back({spec, c});
    }
  out.reports.resize(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < tasks.size(); i = next++) out.reports[i] = run_check(tasks[i].spec->name, tasks[i].config);
  };
  const int threads = std::min<int>(config.threads(), static_cast<int>(tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

nlohmann::json environment_fingerprint(const RunConfig& config) {
  nlohmann::json env;
  env["library"] = "sfindex 1.0.0";
#if defined(__clang__)
  env["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  env["compiler"] = std::string("gcc ") + __VERSION__;
#else
  env["compiler"] = "unknown";
#endif
  env["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                 std::to_string(EIGEN_MINOR_VERSION);
  env["seed"] = config.seed();
  env["threads"] = config.threads();
  env["config"] = config.to_json();
  return env;
}

}  // namespace sfindex
