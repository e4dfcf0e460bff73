#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "zslen/report.hpp"

namespace {

struct Run {
  std::string out;
  int code = -1;
};

// Runs the CLI through the shell; stderr is discarded.
Run run_cli(const std::string& args) {
  std::string cmd = std::string(ZSLEN_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, Davenport) {
  auto r = run_cli("davenport C6 --no-cache");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "6\n");
}

TEST(Cli, LengthsPlainJsonCsv) {
  auto plain = run_cli("lengths C6 '[1]^6 [5]^6' --no-cache");
  EXPECT_EQ(plain.code, 0);
  EXPECT_EQ(plain.out, "{2,6}\n");

  auto j = nlohmann::json::parse(run_cli("lengths C6 '[1]^6 [5]^6' --format json --no-cache").out);
  EXPECT_EQ(j["length_set"], nlohmann::json::array({2, 6}));
  EXPECT_EQ(j["elasticity"], "3");
  EXPECT_EQ(j["input"], "[1]^6 [5]^6");

  auto csv = run_cli("lengths C2^4 '[1,1,1,1]^2 [1,0,0,0]^3 [0,1,0,0]^3 [0,0,1,0]^2 [0,0,0,1]^2 [1,1,0,0]' "
                   "--format csv --no-cache");
  EXPECT_EQ(csv.code, 0);
  EXPECT_NE(csv.out.find(",3;4;6,"), std::string::npos) << csv.out;
}

TEST(Cli, SequenceRoundTrip) {
  auto j = nlohmann::json::parse(run_cli("lengths C2xC4 '[1,3]^2 [0,2]^2 [0,1]^2 [1,1]^0' --format json --no-cache").out);
  std::string printed = j["input"];
  auto again = nlohmann::json::parse(run_cli("lengths C2xC4 '" + printed + "' --format json --no-cache").out);
  EXPECT_EQ(again["input"], printed);
  EXPECT_EQ(again["length_set"], j["length_set"]);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("davenport").code, 2);
  EXPECT_EQ(run_cli("davenport D4").code, 2);
  EXPECT_EQ(run_cli("lengths C6 '[1]^2' --no-cache").code, 2);
  EXPECT_EQ(run_cli("davenport C6 --format xml").code, 2);
  EXPECT_EQ(run_cli("lengths C3^3 '[1,0,0]^40 [2,0,0]^40 [0,1,0]^30 [0,2,0]^30' --budget-nodes 5 --no-cache").code, 3);
  EXPECT_EQ(run_cli("verify prop3.6.2 --k 2 --no-cache").code, 0);
  EXPECT_EQ(run_cli("verify proof-sets --no-cache").code, 1);
  EXPECT_EQ(run_cli("verify prop3.7.1 --budget-nodes 3 --no-cache").code, 3);
  EXPECT_EQ(run_cli("verify no-such-suite").code, 2);
}

TEST(Cli, JsonIsIndependentOfThreads) {
  for (std::string cmd : {"system C2xC4 --bound 9", "delta C6 --bound 10", "rho C2^3 --k 3", "verify wichtig-0"}) {
    auto one = run_cli(cmd + " --format json --threads 1 --no-cache");
    auto four = run_cli(cmd + " --format json --threads 4 --no-cache");
    EXPECT_EQ(one.code, 0) << cmd;
    EXPECT_EQ(one.out, four.out) << cmd;
  }
}

TEST(Cli, SuiteJsonShape) {
  auto j = nlohmann::json::parse(run_cli("verify prop3.6.2 --k 2 --format json --no-cache").out);
  EXPECT_EQ(j["suite"], "prop3.6.2");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_TRUE(j["budget"]["complete"].get<bool>());
  ASSERT_FALSE(j["cases"].empty());
  for (const auto& c : j["cases"]) EXPECT_TRUE(c.contains("expected") && c.contains("computed"));
}

TEST(Cli, Classify) {
  auto j = nlohmann::json::parse(run_cli("classify '{3,4,6}' --allowed 1,2,3 --format json").out);
  EXPECT_EQ(j["form"]["variant"], "AMP");
  EXPECT_EQ(j["form"]["d"], 3);
  EXPECT_EQ(j["form"]["offsets"], nlohmann::json::array({0, 1, 3}));
  EXPECT_EQ(run_cli("classify '{3,4,6}'").code, 2);
}

TEST(Cli, CacheDirectoryIsUsed) {
  auto dir = std::filesystem::temp_directory_path() / ("zslen-cli-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  auto first = run_cli("atoms C6 '[1] [2] [5]' --cache-dir " + dir.string());
  auto second = run_cli("atoms C6 '[1] [2] [5]' --cache-dir " + dir.string());
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}

TEST(Report, EmptySystemIsBareArray) {
  EXPECT_EQ(zslen::report::sets_json({}).dump(), "[]");
  EXPECT_EQ(zslen::report::set_csv(zslen::LengthSet{3, 4, 6}), "3;4;6");
  EXPECT_EQ(zslen::report::csv_cell("a,b"), "\"a,b\"");
}
