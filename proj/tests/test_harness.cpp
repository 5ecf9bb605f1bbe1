#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sfindex/config.hpp"
#include "sfindex/harness.hpp"

namespace sfindex {
namespace {

TEST(Config, UnknownKeySuggestsNearest) {
  RunConfig c;
  try {
    c.set("model.wnding", "2");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("model.winding"), std::string::npos) << e.what();
  }
  const auto s = RunConfig::suggestions("seeds");
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.front(), "check.seeds");
}

TEST(Config, ValidatesTypes) {
  RunConfig c;
  EXPECT_THROW(c.set("model.N", "12.5"), ConfigError);
  EXPECT_THROW(c.set("model.profile", "sawtooth"), ConfigError);
  EXPECT_THROW(c.set("check.dims", "2,x"), ConfigError);
  c.set("check.dims", "2, 4");
  EXPECT_EQ(c.get_list("check.dims", {}), (std::vector<double>{2.0, 4.0}));
}

TEST(Config, SectionsCommentsAndQuotes) {
  RunConfig c;
  c.merge_text("# comment\n[model]\nN = 256   # trailing\nprofile = \"fourier\"\n[run]\nseed=9\n");
  EXPECT_EQ(c.get_int("model.N", 0), 256);
  EXPECT_EQ(c.model().profile, Profile::Fourier);
  EXPECT_EQ(c.seed(), 9u);
  EXPECT_THROW(c.merge_text("[model\n"), ConfigError);
  EXPECT_THROW(c.merge_text("N 3\n"), ConfigError);
}

TEST(Config, ErrorNamesLine) {
  RunConfig c;
  try {
    c.merge_text("run.seed = 1\nrun.sed = 2\n", "cfg");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("cfg:2"), std::string::npos) << e.what();
  }
}

TEST(Config, SeedFromEnvironment) {
  setenv("SFINDEX_SEED", "31", 1);
  EXPECT_EQ(RunConfig().seed(), 31u);
  RunConfig c;
  c.set("run.seed", "4");
  EXPECT_EQ(c.seed(), 4u);
  unsetenv("SFINDEX_SEED");
  EXPECT_EQ(RunConfig().seed(), 1u);
}

TEST(Harness, RegistryListsEveryCheck) {
  const auto names = check_names();
  for (const char* n : {"clifford-relations", "dts-square", "supertrace-vanishing", "even-m-vanishing",
                        "resolvent-expansion", "mains-identity", "horizontal-symmetry", "one-form-closed",
                        "stokes-rectangle", "duhamel-derivative", "large-s-decay", "perturbation-bounds",
                        "affine-weight-equivalence"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
}

TEST(Harness, UnknownCheckIsUsageError) { EXPECT_THROW(run_check("no-such-check", RunConfig{}), UsageError); }

TEST(Harness, EmptySelectorWarns) {
  const SuiteResult s = run_suite("nothing-matches", RunConfig{});
  EXPECT_TRUE(s.reports.empty());
  EXPECT_FALSE(s.warnings.empty());
}

TEST(Harness, SeedsAreReproducibleAcrossThreads) {
  RunConfig one;
  one.set("run.seed", "3");
  one.set("check.seeds", "3");
  RunConfig many = one;
  many.set("run.threads", "3");
  const SuiteResult a = run_suite("dts-square", one), b = run_suite("dts-square", many);
  ASSERT_EQ(a.reports.size(), 3u);
  ASSERT_EQ(b.reports.size(), 3u);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(a.reports[i].digest(), b.reports[i].digest());
  EXPECT_NE(a.reports[0].digest(), a.reports[1].digest());
  EXPECT_TRUE(a.passed());
}

TEST(Harness, ReportJsonRoundTrip) {
  RunConfig c;
  c.set("run.seed", "2");
  const Report r = run_check("clifford-relations", c);
  EXPECT_TRUE(r.passed());
  const Report back = Report::from_json(r.to_json());
  EXPECT_EQ(back.digest(), r.digest());
  EXPECT_EQ(back.metrics.size(), r.metrics.size());
  const auto stripped = strip_timing(r.to_json());
  EXPECT_FALSE(stripped.contains("wall_time_s"));
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  const std::string path = testing::TempDir() + "sfindex_cli_out.txt";
  const std::string cmd = std::string(SFINDEX_CLI) + " " + args + " > " + path + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  std::string out;
  EXPECT_EQ(run_cli("verify --list", &out), 0);
  EXPECT_NE(out.find("stokes-rectangle"), std::string::npos);
  EXPECT_EQ(run_cli("verify --suite dts-square --seed 5"), 0);
  EXPECT_EQ(run_cli("verify --suite no-such-check"), 2);
  EXPECT_EQ(run_cli("--set model.wnding=2 verify --suite dts-square", &out), 2);
  EXPECT_NE(out.find("model.winding"), std::string::npos) << out;
  EXPECT_EQ(run_cli("frobnicate"), 2);
}

TEST(Cli, CsvAndReport) {
  const std::string json = testing::TempDir() + "sfindex_cli_report.json";
  EXPECT_EQ(run_cli("verify --suite clifford-relations --seed 2 --out " + json), 0);
  std::string out;
  EXPECT_EQ(run_cli("--format csv report --input " + json, &out), 0);
  EXPECT_NE(out.find("clifford-relations"), std::string::npos) << out;
  EXPECT_EQ(run_cli("report --input /nonexistent/file.json"), 2);
}

TEST(Cli, ModelRunFailsCleanlyWhenUnderResolved) {
  std::string out;
  EXPECT_NE(run_cli("pr-experiment --N 64 --winding 3 --no-crossings --no-integral", &out), 0);
  EXPECT_NE(out.find("under-resolved"), std::string::npos) << out;
}

}  // namespace
}  // namespace sfindex
