#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "partx_cli.hpp"

namespace partx::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("partx_cli_test_" + name);
  std::filesystem::remove(p);
  return p;
}

TEST(ParseRange, Forms) {
  EXPECT_EQ(parse_range("1..30"), (IntRange{1, 30}));
  EXPECT_EQ(parse_range("7"), (IntRange{7, 7}));
  EXPECT_THROW(parse_range("5..2"), UsageError);
  EXPECT_THROW(parse_range("a..2"), UsageError);
  EXPECT_THROW(parse_range("1..."), UsageError);
  EXPECT_THROW(parse_range(""), UsageError);
}

TEST(Cli, Count) {
  const auto r = run_cli({"count", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "42\n");
  EXPECT_EQ(run_cli({"count", "-3"}).out, "0\n");
  EXPECT_EQ(run_cli({"count", "4", "--mod", "5"}).out, "0\n");
  EXPECT_EQ(run_cli({"--json", "count", "4"}).out, "{\"P\":\"5\",\"n\":4}\n");
}

TEST(Cli, StatsOfFour) {
  const auto r = run_cli({"stats", "4", "--list"});
  EXPECT_EQ(r.code, 0);
  for (const char* line : {"P=5\n", "S=7\n", "Q_1=7\n", "Q_2=3\n", "Q_3=1\n", "Q_4=1\n", "partition 4\n",
                           "partition 3+1\n", "partition 2+2\n", "partition 2+1+1\n", "partition 1+1+1+1\n"}) {
    EXPECT_NE(r.out.find(line), std::string::npos) << line;
  }
}

TEST(Cli, StatsJsonAndCsvCarrySameNumbers) {
  const auto j = nlohmann::json::parse(run_cli({"stats", "9", "--json"}).out);
  const auto csv = run_cli({"stats", "9", "--csv"}).out;
  EXPECT_NE(csv.find("P,," + j["P"].get<std::string>() + "\n"), std::string::npos);
  EXPECT_NE(csv.find("S,," + j["S"].get<std::string>() + "\n"), std::string::npos);
  for (int k = 1; k <= 9; ++k) {
    EXPECT_NE(csv.find("Q," + std::to_string(k) + "," + j["Q"][std::to_string(k)].get<std::string>() + "\n"),
              std::string::npos);
  }
}

TEST(Cli, TableOfFour) {
  const auto r = run_cli({"table", "4", "--kmax", "4", "--csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "n,k=1,k=2,k=3,k=4\n"
            "4,7,3,1,1\n"
            "5,,4,2,1\n"
            "6,,,4,2\n"
            "7,,,,3\n"
            "total,7,7,7,7\n"
            "S,7\n");
}

TEST(Cli, TableSmallAndJson) {
  EXPECT_EQ(run_cli({"table", "1", "--kmax", "1", "--csv"}).out, "n,k=1\n1,1\ntotal,1\nS,1\n");
  const auto j = nlohmann::json::parse(run_cli({"table", "6", "--kmax", "5", "--json"}).out);
  EXPECT_EQ(j["S"], "19");  // P(0) + ... + P(5)
  for (const auto& col : j["columns"]) EXPECT_EQ(col["total"], "19");
}

TEST(Cli, VerifyExtendedStanleyJson) {
  const auto r = run_cli({"verify", "extended-stanley", "--n", "1..30", "--k", "1..10", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["identity"], "extended_stanley");
  EXPECT_EQ(j["total"], 300);
  EXPECT_TRUE(j["failures"].is_array());
  EXPECT_TRUE(j["failures"].empty());
}

TEST(Cli, VerifyFailureExitsOne) {
  const auto r = run_cli({"verify", "qk-congruence", "--congruence", "q5-mod25", "--n", "0..3", "--backend", "closed"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL qk_congruence"), std::string::npos);
  const auto csv = run_cli({"verify", "qk-congruence", "--congruence", "q5-mod25", "--n", "0", "--csv"});
  EXPECT_EQ(csv.code, 1);
  EXPECT_NE(csv.out.find("qk_congruence,0,5,25,660,10,false,closed_form\n"), std::string::npos) << csv.out;
}

TEST(Cli, VerifyFamiliesAndBackends) {
  EXPECT_EQ(run_cli({"verify", "ramanujan-p", "--family", "7", "--n", "0..50"}).code, 0);
  EXPECT_EQ(run_cli({"verify", "elder", "--n", "1..12", "--k", "1..12"}).code, 0);
  EXPECT_EQ(run_cli({"verify", "lemma1", "--n", "1..20", "--k", "1..5", "--backend", "series"}).code, 0);
  EXPECT_EQ(run_cli({"verify", "stanley", "--n", "1..20", "--backend", "oracle"}).code, 0);
  EXPECT_EQ(run_cli({"verify", "difference-identity", "--n", "0..20"}).code, 0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"count"}).code, 2);
  EXPECT_EQ(run_cli({"--json", "--csv", "count", "4"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "nope", "--n", "1"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "lemma1", "--n", "1..4"}).code, 2);  // missing --k
  EXPECT_EQ(run_cli({"verify", "stanley", "--n", "4..1"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "ramanujan-p", "--n", "0..3"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "ramanujan-p", "--family", "13", "--n", "0..3"}).code, 2);
  EXPECT_EQ(run_cli({"series", "gk", "--trunc", "5"}).code, 2);
  const auto big = run_cli({"verify", "stanley", "--n", "1..100", "--backend", "oracle"});
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("closed-form"), std::string::npos);
}

TEST(Cli, SeriesDump) {
  const auto r = run_cli({"series", "f", "--trunc", "4"});
  EXPECT_EQ(r.out, "#series v1 ring=Z trunc=4\n0,1\n1,1\n2,2\n3,3\n4,5\n");
  const auto g = run_cli({"series", "gk", "--k", "5", "--trunc", "9", "--mod", "5"});
  EXPECT_EQ(g.out.substr(0, g.out.find('\n')), "#series v1 ring=Zmod:5 trunc=9");
  EXPECT_NE(g.out.find("\n9,0\n"), std::string::npos);
  const auto e = run_cli({"series", "euler4", "--trunc", "4"});
  EXPECT_EQ(e.out, "#series v1 ring=Z trunc=4\n0,1\n1,-4\n2,2\n3,8\n4,-5\n");
  const auto d = run_cli({"series", "double-sum", "--trunc", "5"});
  EXPECT_EQ(d.out, "#series v1 ring=Z trunc=5\n0,0\n1,1\n2,-4\n3,2\n4,8\n5,-5\n");
  const auto dm = run_cli({"series", "double-sum", "--trunc", "5", "--mod", "5"});
  EXPECT_EQ(dm.out, "#series v1 ring=Zmod:5 trunc=5\n0,0\n1,1\n2,1\n3,2\n4,3\n5,0\n");
}

TEST(Cli, CacheBuildCheckAndUse) {
  const auto path = temp_file("cache.txt");
  EXPECT_EQ(run_cli({"cache", "build", "--max", "50", "--cache", path.string()}).code, 0);
  EXPECT_EQ(run_cli({"cache", "check", "--cache", path.string()}).code, 0);
  EXPECT_EQ(run_cli({"count", "50", "--cache", path.string(), "--verify-cache"}).out, "204226\n");
  std::filesystem::remove(path);
  EXPECT_EQ(run_cli({"cache", "check", "--cache", path.string()}).code, 2);
  EXPECT_EQ(run_cli({"cache", "build", "--max", "5"}).code, 2);
}

TEST(Cli, CacheWrittenOnlyWithFlag) {
  const auto path = temp_file("opt_in.txt");
  run_cli({"count", "30"});
  EXPECT_FALSE(std::filesystem::exists(path));
  run_cli({"count", "30", "--cache", path.string()});
  ASSERT_TRUE(std::filesystem::exists(path));
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "#partition-table v1");
  std::filesystem::remove(path);
}

TEST(Cli, TamperedCacheCaughtByVerifyFlag) {
  const auto path = temp_file("tampered.txt");
  {
    std::ofstream out(path);
    out << "#partition-table v1\n0,1\n1,1\n2,2\n3,3\n4,6\n";
  }
  const auto loose = run_cli({"count", "4", "--cache", path.string()});
  EXPECT_EQ(loose.code, 0);
  EXPECT_EQ(loose.out, "6\n");
  const auto strict = run_cli({"count", "4", "--cache", path.string(), "--verify-cache"});
  EXPECT_EQ(strict.code, 1);
  EXPECT_NE(strict.err.find("n=4"), std::string::npos);
  EXPECT_EQ(run_cli({"cache", "check", "--cache", path.string()}).code, 1);
  std::filesystem::remove(path);
}

TEST(Cli, CorruptCacheIsUsageError) {
  const auto path = temp_file("corrupt.txt");
  {
    std::ofstream out(path);
    out << "#partition-table v1\n1,1\n";
  }
  const auto r = run_cli({"count", "4", "--cache", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"verify", "result2", "--n", "1..40", "--k", "1..6", "--json"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

}  // namespace
}  // namespace partx::cli
