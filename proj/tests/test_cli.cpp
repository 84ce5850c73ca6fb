#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "slist/cli.hpp"

using slist::cli::run;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(SLIST_SAMPLES) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("slist_cli_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Data rows of a machine-format report.
std::vector<std::string> records(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}
}  // namespace

TEST(Cli, FactorTable) {
  auto r = call({"factor", "--input", "intro.json"});
  EXPECT_EQ(r.code, slist::cli::kBadInput);
  r = call({"factor", "--input", sample("intro_listing.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string body =
      "middle  source  position  target\n"
      "0       a1      1         b1\n"
      "1       a1      2         b3\n"
      "2       a2      1         b1\n"
      "3       a2      2         b2\n"
      "4       a2      3         b4\n"
      "\n"
      "middle size 5\n"
      "perfect part is perfect: yes\n"
      "function part is a function: yes\n"
      "composite equals input: yes\n";
  EXPECT_EQ(r.out.rfind("slist 1.0 factor\n  input = ", 0), 0u);
  ASSERT_GE(r.out.size(), body.size());
  EXPECT_EQ(r.out.substr(r.out.size() - body.size()), body);
}

TEST(Cli, MachineFormatHeader) {
  auto r = call({"homology", "--input", sample("two_level_shape.json"), "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# slist 1.0\n# command\thomology\n# param\tinput\t", 0), 0u);
  EXPECT_NE(r.out.find("# param\tD\t3\n# columns\tdegree\trank\ttorsion\n"), std::string::npos);
  EXPECT_EQ(records(r.out), (std::vector<std::string>{"0\t2\t-", "1\t0\t-", "2\t0\t-"}));
}

TEST(Cli, HomologyOfNerveAndRelative) {
  auto r = call({"homology", "--input", sample("two_level_t_alpha.json"), "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(records(r.out), (std::vector<std::string>{"0\t2\t-", "1\t0\t-", "2\t0\t-"}));
  r = call({"homology", "--input", sample("two_level_t_alpha.json"), "--relative", sample("two_level_shape.json"),
            "--format", "machine"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(records(r.out), (std::vector<std::string>{"0\t0\t-", "1\t0\t-", "2\t0\t-"}));
  EXPECT_NE(r.out.find("quotient complex equals the complex of the quotient: yes"), std::string::npos);
  // a shape is only meaningful next to the T_alpha operad on it
  r = call({"homology", "--input", sample("assoc3.json"), "--relative", sample("two_level_shape.json")});
  EXPECT_EQ(r.code, slist::cli::kBadInput);
}

TEST(Cli, CheckQuasi) {
  auto r = call({"check-quasi", "--input", sample("two_level_t_alpha.json"), "--format", "machine"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(records(r.out).size(), 3u);
  r = call({"check-quasi", "--input", sample("two_level_shape.json"), "--format", "machine"});
  EXPECT_EQ(r.code, slist::cli::kCheckFailed);
  auto rows = records(r.out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0].rfind("2\t1\t", 0), 0u);
  EXPECT_NE(rows[0].find("\thorn 2,1: "), std::string::npos);
  r = call({"check-quasi", "--input", sample("wild.json")});
  EXPECT_EQ(r.code, slist::cli::kCheckFailed);
  EXPECT_NE(r.out.find("not operadic"), std::string::npos);
}

TEST(Cli, RealizeAndEnvelope) {
  EXPECT_EQ(call({"realize", "--input", sample("walking_arrow.json")}).code, 0);
  auto r = call({"realize", "--input", sample("two_level_shape.json")});
  EXPECT_EQ(r.code, slist::cli::kCheckFailed);
  EXPECT_NE(r.out.find("not the nerve of an operad"), std::string::npos);
  EXPECT_EQ(call({"check-envelope", "--input", sample("hom2.json"), "--D", "2", "--maxlen", "2"}).code, 0);
}

TEST(Cli, OtherCommandsSucceed) {
  auto r = call({"shapes", "--D", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("10 rooted shapes of degree 2 with levels <= 2"), std::string::npos);
  r = call({"free-operad", "--input", sample("two_level_multigraph.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("5 colors, 11 operations"), std::string::npos);
  EXPECT_EQ(call({"upsilon", "--shape", sample("two_level_shape.json"), "--K", "1"}).code, 0);
  EXPECT_EQ(call({"thicken", "--shape", sample("two_level_shape.json"), "--check-aug"}).code, 0);
  EXPECT_EQ(call({"verify-contraction", "--target", "thick", "--shape", sample("two_level_shape.json")}).code, 0);
  EXPECT_EQ(call({"verify-contraction", "--target", "nerve", "--shape", sample("two_level_shape.json")}).code, 0);
  r = call({"verify-contraction", "--target", "assoc", "--samples", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("assoc: contraction verified"), std::string::npos);
}

TEST(Cli, Deterministic) {
  std::vector<std::vector<std::string>> cmds{
      {"nerve", "--input", sample("assoc3.json"), "--format", "machine"},
      {"verify-contraction", "--target", "assoc", "--samples", "100", "--seed", "7"},
      {"homology", "--input", sample("two_level_t_alpha.json")}};
  for (const auto& c : cmds) {
    auto a = call(c), b = call(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, NerveWritesSimplicialList) {
  auto path = temp_path("nerve.json");
  auto r = call({"nerve", "--input", sample("walking_arrow.json"), "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("written to "), std::string::npos);
  // the written list reads back with the same sizes
  auto again = call({"nerve", "--input", path, "--format", "machine"});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(records(again.out), (std::vector<std::string>{"0\t2", "1\t3", "2\t4", "3\t5"}));
  std::remove(path.c_str());
}

TEST(Cli, OutRedirectsReport) {
  auto path = temp_path("report.txt");
  auto r = call({"shapes", "--D", "1", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path).rfind("slist 1.0 shapes\n", 0), 0u);
  std::remove(path.c_str());
}

TEST(Cli, ParseErrorsAreLocated) {
  auto path = temp_path("bad.json");
  {
    std::ofstream f(path);
    f << "{\"kind\": \"shape\",\n \"levels\": [1,\n ]}";
  }
  auto r = call({"nerve", "--input", path});
  EXPECT_EQ(r.code, slist::cli::kBadInput);
  EXPECT_NE(r.err.find(path + ":3:2:"), std::string::npos) << r.err;
  std::remove(path.c_str());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, slist::cli::kUsage);
  EXPECT_EQ(call({"nerve", "--bogus"}).code, slist::cli::kUsage);
  EXPECT_EQ(call({"nerve", "--input", sample("assoc3.json"), "--format", "xml"}).code, slist::cli::kUsage);
  EXPECT_EQ(call({"check-quasi", "--input", sample("assoc3.json"), "--dims", "3-1"}).code, slist::cli::kUsage);
  EXPECT_EQ(call({"verify-contraction", "--target", "cube"}).code, slist::cli::kUsage);
  EXPECT_EQ(call({"factor"}).code, slist::cli::kUsage);
  EXPECT_EQ(call({"nerve", "--input", "/nonexistent/x.json"}).code, slist::cli::kBadInput);
  // a listing where an operad is expected
  EXPECT_EQ(call({"nerve", "--input", sample("intro_listing.json")}).code, slist::cli::kBadInput);
  auto v = call({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("slist 1.0"), std::string::npos);
}
