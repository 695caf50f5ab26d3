#include "cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using grudyn::cli::kExitMismatch;
using grudyn::cli::kExitOk;
using grudyn::cli::kExitUsage;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "grudyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = grudyn::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv(grudyn::cli::kOutDirEnv);
    dir_ = fs::temp_directory_path() /
           ("grudyn_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override {
    unsetenv(grudyn::cli::kOutDirEnv);
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, NoArgumentsPrintsHelpAndFails) {
  const Result r = run({});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("portrait"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(run({"fixed-points", "--params", (dir_ / "missing.json").string()}).code, kExitUsage);
  {
    std::ofstream(dir_ / "bad.json") << "{ not json";
  }
  EXPECT_EQ(run({"fixed-points", "--params", (dir_ / "bad.json").string()}).code, kExitUsage);
  EXPECT_EQ(run({"fixed-points", "--case", "no-such-case"}).code, kExitUsage);
  EXPECT_EQ(run({"fixed-points", "--d", "2", "--uh", "1,2,3"}).code, kExitUsage);
  EXPECT_EQ(run({"catalog-verify"}).code, kExitUsage);
}

TEST_F(Cli, HelpAndVersionSucceed) {
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  const Result v = run({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_FALSE(v.out.empty());
}

TEST_F(Cli, HopfSweepWritesJsonToStdout) {
  const Result r = run({"hopf-sweep", "--gain", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["result"]["alpha_star"].get<double>(), 0.8411, 1e-3);
  EXPECT_FALSE(j["result"]["cycle"].is_null());
  EXPECT_FALSE(r.err.empty());  // summary moves to stderr
}

TEST_F(Cli, PortraitIsDeterministic) {
  const Result a = run({"portrait", "--case", "2", "--no-trajectories"});
  const Result b = run({"portrait", "--case", "2", "--no-trajectories"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(count(a.out, "<circle class=\"fixed-point"), 9u);
  EXPECT_NE(a.out.find("grudyn-config"), std::string::npos);
}

TEST_F(Cli, PortraitOfZeroParameters) {
  const Result r = run({"portrait", "--d", "2", "--no-cycle"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(count(r.out, "<circle class=\"fixed-point"), 1u);
  EXPECT_EQ(count(r.out, "<circle class=\"fixed-point sink"), 1u);
  EXPECT_NE(r.out.find("nullcline-x"), std::string::npos);
  EXPECT_NE(r.out.find("nullcline-y"), std::string::npos);
}

TEST_F(Cli, PortraitShadesHomoclinicRegions) {
  const Result r = run({"portrait", "--case", "4b", "--homoclinic", "--no-cycle", "--no-trajectories"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(count(r.out, "<g class=\"homoclinic-region\""), 2u);
}

TEST_F(Cli, FixedPointsCsvCarriesConfig) {
  const fs::path path = dir_ / "fp.csv";
  const Result r = run({"fixed-points", "--case", "2", "--format", "csv", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.rfind("# config=", 0), 0u);
  EXPECT_NE(r.out.find("total=9"), std::string::npos);
}

TEST_F(Cli, OutDirEnvironmentPlacesArtifacts) {
  setenv(grudyn::cli::kOutDirEnv, dir_.c_str(), 1);
  const Result r = run({"fixed-points", "--case", "5a"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  bool found = false;
  for (const auto& e : fs::directory_iterator(dir_)) found |= e.path().extension() == ".json";
  EXPECT_TRUE(found);
  EXPECT_NE(r.out.find("wrote"), std::string::npos);
}

TEST_F(Cli, CatalogVerifyExitCodes) {
  const Result ok = run({"catalog-verify", "--case", "ii", "--out", (dir_ / "a").string()});
  EXPECT_EQ(ok.code, kExitOk) << ok.out << ok.err;
  EXPECT_TRUE(fs::exists(dir_ / "a" / "summary.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "a" / "summary.json"));
  EXPECT_TRUE(fs::exists(dir_ / "a" / "cases" / "ii.json"));
  const Result bad = run({"catalog-verify", "--case", "i", "--out", (dir_ / "b").string()});
  EXPECT_EQ(bad.code, kExitMismatch);
}

TEST_F(Cli, Scan1dFindsTransition) {
  const Result r = run({"scan-1d", "--uh", "3", "--from", "0", "--to", "-2", "--steps", "41"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  // Ur = 0 halves the effective gain: 1.5 h is bistable near bh = 0 only.
  ASSERT_EQ(j["roots"].size(), 3u);
  ASSERT_EQ(j["transitions"].size(), 1u);
  EXPECT_EQ(j["transitions"][0]["count_before"], 3);
  EXPECT_EQ(j["transitions"][0]["count_after"], 1);
}
