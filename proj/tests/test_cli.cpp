#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cantorforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cantorforge::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& tsv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream lines(tsv);
  for (std::string line; std::getline(lines, line);) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    for (std::string cell; std::getline(fields, cell, '\t');) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~ScopedEnv() { ::unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(CliBuild, WritesCanonicalJson) {
  const auto r = run({"build", "--spec", "2,3,inf", "--stages", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("{\"spec\":\"2,3,inf\",\"depth\":5,", 0), 0u);
  EXPECT_EQ(r.out.back(), '\n');
}

TEST(CliBuild, OutFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "cantorforge_cli_test.json";
  const auto a = run({"build", "--spec", "3", "--stages", "5", "--out", path.string()});
  ASSERT_EQ(a.code, 0);
  std::ifstream in(path, std::ios::binary);
  const std::string file((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(file, run({"build", "--spec", "3", "--stages", "5"}).out);
  std::filesystem::remove(path);
}

TEST(CliBuild, ExitCodes) {
  EXPECT_EQ(run({"build", "--spec", "1", "--stages", "3"}).code, 2);
  EXPECT_EQ(run({"build", "--spec", "2;bogus:3", "--stages", "3"}).code, 2);
  EXPECT_EQ(run({"build", "--spec", "2"}).code, 2);
  EXPECT_EQ(run({"build", "--spec", "2", "--stages", "7", "--budget", "100"}).code, 3);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliBuild, BudgetFromEnvironment) {
  {
    ScopedEnv env("CANTORFORGE_BUDGET", "100");
    EXPECT_EQ(run({"build", "--spec", "2", "--stages", "7"}).code, 3);
    EXPECT_EQ(run({"build", "--spec", "2", "--stages", "7", "--budget", "10000"}).code, 0);
  }
  {
    ScopedEnv env("CANTORFORGE_BUDGET", "lots");
    EXPECT_EQ(run({"build", "--spec", "2", "--stages", "3"}).code, 2);
  }
  EXPECT_EQ(run({"build", "--spec", "2", "--stages", "7"}).code, 0);
}

TEST(CliVerify, SingleSpec) {
  const auto r = run({"verify", "--spec", "2", "--stages", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("oracle_diff"), std::string::npos);
}

TEST(CliVerify, InjectedFaultFails) {
  const auto r = run({"verify", "--spec", "2", "--stages", "5", "--inject-fault", "parity"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({"verify", "--spec", "2", "--stages", "5", "--inject-fault", "chain5"}).code, 1);
  EXPECT_EQ(run({"verify", "--spec", "2", "--stages", "5", "--inject-fault", "gremlin"}).code, 2);
}

TEST(CliVerify, Corpus) {
  const auto r = run({"verify", "--corpus", "6", "--seed", "3", "--stages", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("passed 6/6 specs"), std::string::npos);
}

TEST(CliEnds, TableForDensePointsAndChainHop) {
  const auto r = run({"ends", "--spec", "2,3,inf", "--labels", "1,2,3", "--chain-hop", "first", "--depth", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = rows(r.out);
  ASSERT_EQ(table.size(), 5u);
  EXPECT_EQ(table[0][4], "local_genus_upper");
  EXPECT_EQ(table[1][4], "2");
  EXPECT_EQ(table[2][4], "3");
  EXPECT_EQ(table[3][4], "inf (unbounded, sup 5 at depth 9)");
  EXPECT_EQ(table[4][4], "2");
  EXPECT_EQ(table[4][6], "[1,2]");
  EXPECT_EQ(table[3][6], "inf");
}

TEST(CliEnds, ExitCodes) {
  EXPECT_EQ(run({"ends", "--spec", "2", "--labels", "14", "--depth", "3"}).code, 4);
  EXPECT_EQ(run({"ends", "--spec", "2", "--labels", "14", "--depth", "5"}).code, 0);
  EXPECT_EQ(run({"ends", "--spec", "2", "--labels", "1", "--depth", "1"}).code, 0);
  EXPECT_EQ(run({"ends", "--spec", "2", "--chain-hop", "sideways", "--depth", "5"}).code, 2);
  EXPECT_EQ(run({"ends", "--spec", "2", "--labels", "14", "--depth", "5", "--budget", "10"}).code, 3);
}

TEST(CliExport, DotOutput) {
  const auto r = run({"export", "--spec", "2", "--stages", "3", "--format", "dot", "--highlight-label", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph cantorforge {", 0), 0u);
  EXPECT_EQ(run({"export", "--spec", "2", "--stages", "3", "--format", "png"}).code, 2);
}
