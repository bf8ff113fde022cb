#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "conicrank/cli.hpp"
#include "json.hpp"

using namespace conicrank;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"conicrank"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("conicrank_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const char* name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, CensusQ5) {
  const auto r = cli({"census", "--q", "5", "--format", "csv"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("line,tangent,6,"), std::string::npos);
  EXPECT_NE(r.out.find("line,skew,10,"), std::string::npos);
  EXPECT_NE(r.out.find("line,secant,15,"), std::string::npos);
  const auto table = cli({"census", "--q", "5"});
  EXPECT_EQ(table.code, kExitOk);
  EXPECT_NE(table.out.find("matches closed forms: yes"), std::string::npos);
}

TEST(Cli, ExportAlistHeader) {
  const auto r = cli({"export", "--q", "5", "--block", "A33", "--format", "alist"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "15 15");
}

TEST(Cli, ExportWithSidecar) {
  TempDir dir;
  const auto path = dir.file("a13.csv");
  const auto r = cli({"export", "--q", "3", "--block", "A13", "--out", path.c_str()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto csv = slurp(path);
  EXPECT_EQ(csv.rfind("label,", 0), 0u);
  const auto meta = nlohmann::json::parse(slurp(path + ".json"));
  EXPECT_EQ(meta["block"], "A13");
  EXPECT_EQ(meta["rows"], 4);
  EXPECT_EQ(meta["cols"], 6);
  EXPECT_EQ(meta["rank"], 4);
}

TEST(Cli, VerifyQ9JsonToFile) {
  TempDir dir;
  const auto path = dir.file("r.json");
  const auto r = cli({"verify", "--q", "9", "--format", "json", "--out", path.c_str()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(j["claims"].size(), 17u);
  EXPECT_TRUE(j["census_ok"].get<bool>());
  EXPECT_EQ(j["q"], 9);
}

TEST(Cli, VerifySuiteJsonIsArray) {
  const auto r = cli({"verify", "--suite", "3", "5", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["q"], 5);
}

TEST(Cli, VerifyAcceptsPAndE) {
  const auto a = cli({"verify", "--p", "3", "--e", "2", "--format", "csv"});
  const auto b = cli({"verify", "--q", "9", "--format", "csv"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_NE(a.out.find("9,rank_A,"), std::string::npos);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), b.out.substr(0, b.out.find('\n')));
}

TEST(Cli, UnexpectedMismatchExitsTwo) {
  const auto r = cli({"verify", "--q", "3", "--expect-mismatch", "none"});
  EXPECT_EQ(r.code, kExitMismatch);
  EXPECT_NE(r.err.find("rank_A_13"), std::string::npos);
  EXPECT_EQ(cli({"verify", "--q", "3", "--expect-mismatch", "rank_A_13"}).code, kExitMismatch);
  EXPECT_EQ(cli({"verify", "--q", "3", "--expect-mismatch", "rank_A_13", "rank_A_31"}).code, kExitOk);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--q", "8"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--q", "15"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--q", "abc"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--p", "4"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--q", "9", "--p", "5"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--q", "3", "--format", "alist"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--q", "3", "--expect-mismatch", "bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--q", "3", "--s-guard", "14"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--q", "9", "--modulus", "1,1"}).code, kExitUsage);
  EXPECT_EQ(cli({"export", "--q", "3", "--block", "A44"}).code, kExitUsage);
  EXPECT_EQ(cli({"export", "--block", "A"}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
}

TEST(Cli, ModulusOverride) {
  // t^2 + t + 2 is also irreducible over GF(3)
  const auto r = cli({"verify", "--q", "9", "--modulus", "2,1,1", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["modulus"], "2,1,1");
  for (const auto& c : j["claims"]) {
    if (c["id"] == "rank_A") EXPECT_EQ(c["computed"], 37);
  }
}

TEST(Cli, SizeGuardExitCode) {
  EXPECT_EQ(cli({"export", "--q", "11", "--block", "S"}).code, kExitSizeGuard);
  EXPECT_EQ(cli({"polyspace", "--q", "11"}).code, kExitSizeGuard);
}

TEST(Cli, Nullstellensatz) {
  const auto r = cli({"nullstellensatz", "--q", "5", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.size(), 8u);
  for (const auto& row : j) EXPECT_TRUE(row["passed"].get<bool>());
}

TEST(Cli, Polyspace) {
  const auto r = cli({"polyspace", "--q", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("dim_M_Sk = 3"), std::string::npos);
  EXPECT_NE(r.out.find("dim_M_Se = 6"), std::string::npos);
  EXPECT_NE(r.out.find("dim_M_T = 4"), std::string::npos);
  EXPECT_NE(r.out.find("0 zeros, values 2x12"), std::string::npos);
}

TEST(Cli, ThreadsDoNotChangeOutput) {
  const auto a = cli({"census", "--suite", "3", "5", "7", "--format", "csv", "--threads", "1"});
  const auto b = cli({"census", "--suite", "3", "5", "7", "--format", "csv", "--threads", "3"});
  EXPECT_EQ(a.out, b.out);
  const auto c = cli({"export", "--q", "7", "--block", "Asec", "--threads", "4"});
  const auto d = cli({"export", "--q", "7", "--block", "Asec"});
  EXPECT_EQ(c.out, d.out);
}
