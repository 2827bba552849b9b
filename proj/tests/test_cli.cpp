#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "gpcci/integrals.hpp"
#include "json.hpp"

namespace cli = gpcci::cli;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run(args);
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, AnalyzeTable) {
  const auto r = run({"analyze", "--model", "hubbard", "--sites", "3", "--U", "4"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("regime       weak"), std::string::npos);
  EXPECT_NE(r.out.find("2 - n1 - n2 - n4"), std::string::npos);
  EXPECT_NE(r.out.find("-1.236067977500"), std::string::npos);
}

TEST(Cli, AnalyzeJsonAgreesWithTable) {
  const auto j = run_json({"analyze", "--model", "hubbard", "--sites", "3", "--U", "4"});
  EXPECT_NEAR(j["energy"].get<double>(), 2 - std::sqrt(5.0) - 1, 1e-10);
  EXPECT_EQ(j["sector"]["dimension"], 9);
  EXPECT_EQ(j["regime"], "weak");
  for (const auto& c : j["report"]["residuals"]) EXPECT_NEAR(c["value"].get<double>(), 0.0, 1e-10);
  const auto t = run({"analyze", "--model", "hubbard", "--sites", "3", "--U", "4"}).out;
  for (const auto& x : j["spectrum"]["n"]) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10f", x.get<double>());
    EXPECT_NE(t.find(buf), std::string::npos) << buf;
  }
}

TEST(Cli, CensusPresets) {
  const auto j = run_json({"census", "--preset", "all"});
  const std::map<std::string, std::pair<int, int>> sizes{{"bd36", {8, 3}},
                                                          {"rank7", {18, 9}},
                                                          {"rank8", {24, 13}},
                                                          {"rank48-restricted", {16, 10}},
                                                          {"rank48-unrestricted", {30, 13}}};
  ASSERT_EQ(j["tables"].size(), sizes.size());
  for (const auto& t : j["tables"]) {
    const auto& [a, b] = sizes.at(t["preset"].get<std::string>());
    EXPECT_EQ(t["rows"][0]["size"], a);
    EXPECT_EQ(t["rows"][1]["size"], b);
  }
  const auto one = run({"census", "--preset", "rank7"});
  EXPECT_NE(one.out.find("D1 D2            1     0     8     0      9"), std::string::npos) << one.out;
}

TEST(Cli, CensusExplicitConstraints) {
  const auto j = run_json({"census", "--N", "3", "--rank", "7", "--constraints", "D1,D2"});
  EXPECT_EQ(j["tables"][0]["rows"].back()["size"], 9);
}

TEST(Cli, NoSurvivorsExit) {
  const auto cat = temp_file("gpcci_cli_impossible.cat", "3 6 9 9 -1 -1 -1 -1 -1 -1\n");
  const auto r = run({"census", "--N", "3", "--rank", "6", "--catalog", cat.string(), "--constraints", "9"});
  EXPECT_EQ(r.code, cli::kExitNoSurvivors);
  std::filesystem::remove(cat);
}

TEST(Cli, TruncateRecoversHubbardTriple) {
  const auto r = run({"truncate", "--model", "hubbard", "--sites", "3", "--U", "4"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("recovered    100.00%"), std::string::npos) << r.out;
  const auto j = run_json({"truncate", "--model", "hubbard", "--sites", "3", "--U", "4"});
  EXPECT_NEAR(j["result"]["pinned_energy"].get<double>(), j["result"]["full_energy"].get<double>(), 1e-9);
  EXPECT_EQ(j["result"]["pinned_size"], 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"solve", "--model", "nope"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"analyze", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"census", "--N", "3", "--rank", "6", "--constraints", "2"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, PolytopeViolationExit) {
  // D1 = 2 - 0.9 - 0.9 - 0.6 < 0 while the equalities hold
  const auto r = run({"polytope", "--N", "3", "--rank", "6", "--occ", "0.9,0.9,0.6,0.4,0.1,0.1"});
  EXPECT_EQ(r.code, cli::kExitViolation) << r.out << r.err;
  const auto ok = run({"polytope", "--N", "3", "--rank", "6", "--occ", "0.9,0.8,0.7,0.3,0.2,0.1"});
  EXPECT_EQ(ok.code, cli::kExitOk);
}

TEST(Cli, PolytopeRandomIsSeeded) {
  const std::vector<std::string> args{"polytope", "--N", "3", "--rank", "7", "--random", "50", "--seed", "9"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other.back() = "10";
  EXPECT_NE(run(other).out, a.out);
  const auto j = run_json(args);
  EXPECT_EQ(j["violations"], 0);
  for (const auto& c : j["constraints"]) EXPECT_GE(c["min_residual"].get<double>(), -1e-10);
}

TEST(Cli, ScanIsContinuous) {
  const auto j = run_json({"scan", "--model", "hubbard", "--sites", "3", "--param", "U", "--from", "0.5", "--to",
                           "8", "--steps", "9"});
  ASSERT_EQ(j["rows"].size(), 9u);
  const auto& cols = j["columns"];
  EXPECT_EQ(cols.front(), "param");
  EXPECT_EQ(cols.back(), "xi");
  for (std::size_t r = 1; r < 9; ++r)
    for (std::size_t c = 2; c < cols.size(); ++c)
      EXPECT_LT(std::abs(j["rows"][r][c].get<double>() - j["rows"][r - 1][c].get<double>()), 0.1);
}

TEST(Cli, SinglePointScanMatchesAnalyze) {
  const auto s = run_json({"scan", "--model", "pairing", "--levels", "4", "--param", "G", "--from", "0.33", "--to",
                           "0.33", "--steps", "1"});
  const auto a = run_json({"analyze", "--model", "pairing", "--levels", "4", "--G", "0.33"});
  ASSERT_EQ(s["rows"].size(), 1u);
  EXPECT_NEAR(s["rows"][0][1].get<double>(), a["energy"].get<double>(), 1e-12);
  for (int i = 0; i < 8; ++i)
    EXPECT_NEAR(s["rows"][0][2 + i].get<double>(), a["spectrum"]["n"][i].get<double>(), 1e-12);
}

TEST(Cli, CsvHeader) {
  const auto r = run({"scan", "--model", "hubbard", "--sites", "3", "--param", "U", "--from", "1", "--to", "2",
                      "--steps", "2", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "param,energy,n1,n2,n3,n4,n5,n6,D1,E1,E2,E3,xi");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, FileModel) {
  const auto p = std::filesystem::temp_directory_path() / "gpcci_cli_model.fcidump";
  gpcci::write_integral_file(p, gpcci::hubbard_chain(3, 1.0, 4.0, false), 3, 1);
  const auto f = run_json({"solve", "--model", "file:" + p.string()});
  const auto h = run_json({"solve", "--model", "hubbard", "--sites", "3", "--U", "4"});
  EXPECT_NEAR(f["energy"].get<double>(), h["energy"].get<double>(), 1e-12);
  EXPECT_EQ(f["sector"]["sz2"], 1);
  std::filesystem::remove(p);
  EXPECT_EQ(run({"solve", "--model", "file:/nonexistent/x.fcidump"}).code, cli::kExitUsage);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> args{"analyze", "--model", "pairing", "--levels", "4", "--G", "0.5",
                                      "--format", "json"};
  EXPECT_EQ(run(args).out, run(args).out);
}
