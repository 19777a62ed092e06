#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "birkhoff/cli.hpp"

using namespace birkhoff;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "birkhoff");
  args.push_back("--no-progress");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  RunConfig cfg;
  std::ostringstream out, err;
  if (auto code = parse_command_line(static_cast<int>(argv.size()), argv.data(), cfg, out, err))
    return {*code, out.str(), err.str()};
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

Json json_of(const Outcome& o) { return Json::parse(o.out); }

}  // namespace

TEST(Cli, FacetPolynomialAsJson) {
  auto o = invoke({"ehrhart", "--n", "3", "--zeros", "1,1", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto j = json_of(o);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["result"], Json::parse(R"(["1","11/6","1","1/6"])"));
  EXPECT_EQ(j["dimension"], 3);
  EXPECT_EQ(j["zero_pattern"], Json::parse("[[1,1]]"));
  EXPECT_EQ(j["root"], 1);
  for (const char* key : {"n", "term_count", "elapsed_ms", "leading_coefficient", "normalized_volume"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, OracleCount) {
  auto o = invoke({"count", "--n", "3", "--t", "2", "--method", "oracle"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json_of(o)["result"], "21");
  auto f = invoke({"count", "--n", "3", "--t", "2", "--format", "text"});
  EXPECT_EQ(f.out, "e(2) = 21\n");
}

TEST(Cli, CryTextOutput) {
  auto o = invoke({"ehrhart", "--n", "4", "--cry", "--format", "text"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("+ 1/360 t^6\n"), std::string::npos);
  EXPECT_NE(o.out.find("leading coefficient: 1/360"), std::string::npos);
}

TEST(Cli, OracleAndFormulaAgree) {
  for (const char* cmd : {"ehrhart", "volume"}) {
    auto a = json_of(invoke({cmd, "--n", "4", "--facet", "2,3"}));
    auto b = json_of(invoke({cmd, "--n", "4", "--facet", "2,3", "--method", "oracle"}));
    EXPECT_EQ(a["result"], b["result"]) << cmd;
    EXPECT_EQ(a["dimension"], b["dimension"]) << cmd;
  }
}

TEST(Cli, VolumeAndRoot) {
  auto o = invoke({"volume", "--n", "4", "--root", "3", "--format", "text"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "normalized volume: 352\ndimension: 9\n");
}

TEST(Cli, MgfFormats) {
  auto j = json_of(invoke({"mgf", "--n", "2"}));
  EXPECT_EQ(j["result"].size(), 2u);
  EXPECT_EQ(j["result"][0]["rays"], Json::parse("[[-1,1,1,-1]]"));
  auto latex = invoke({"mgf", "--n", "3", "--format", "latex"});
  EXPECT_EQ(latex.code, 0);
  EXPECT_NE(latex.out.find("\\frac{1}{1 - "), std::string::npos);
  EXPECT_EQ(invoke({"mgf", "--n", "4", "--format", "latex"}).code, kExitInvalid);
}

TEST(Cli, Integrate) {
  const std::string path = ::testing::TempDir() + "form.json";
  {
    std::ofstream f(path);
    f << R"({"n": 3, "y": [["1","0","0"],["0","0","0"],["0","0","0"]]})";
  }
  auto o = invoke({"integrate", "--n", "3", "--power", "1", "--form", path});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json_of(o)["result"], "1");
  EXPECT_EQ(invoke({"integrate", "--n", "4", "--power", "1", "--form", path}).code, kExitInvalid);
  EXPECT_EQ(invoke({"integrate", "--n", "3", "--power", "1", "--form", path + ".missing"}).code, kExitInvalid);
  std::remove(path.c_str());
}

TEST(Cli, VerifyPasses) {
  auto o = invoke({"verify", "--n", "3"});
  ASSERT_EQ(o.code, 0) << o.out << o.err;
  auto j = json_of(o);
  EXPECT_TRUE(j["all_passed"].get<bool>());
  EXPECT_GE(j["result"].size(), 10u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"ehrhart", "--n", "3", "--zeros", "1,1;1,2;1,3"}).code, kExitEmptyFace);
  EXPECT_EQ(invoke({"ehrhart", "--n", "3", "--zeros", "1,4"}).code, kExitInvalid);
  EXPECT_EQ(invoke({"ehrhart", "--n", "9"}).code, kExitInvalid);
  EXPECT_EQ(invoke({"ehrhart", "--n", "3", "--cry", "--facet", "1,1"}).code, kExitInvalid);
  EXPECT_EQ(invoke({"count", "--n", "3"}).code, kExitInvalid);
  EXPECT_EQ(invoke({"count", "--n", "6", "--t", "1", "--method", "oracle"}).code, kExitBudget);
  EXPECT_EQ(invoke({"ehrhart", "--n", "3", "--format", "xml"}).code, kExitInvalid);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitInvalid);
  EXPECT_EQ(invoke({"ehrhart", "--n", "3", "--root", "4"}).code, kExitInvalid);
}

TEST(Cli, ProgressGoesToStderr) {
  RunConfig cfg;
  cfg.command = Command::count;
  cfg.n = 5;
  cfg.t = 1;
  cfg.progress = true;
  std::ostringstream out, err;
  ASSERT_EQ(run(cfg, out, err), 0);
  EXPECT_NE(err.str().find("terms/s"), std::string::npos);
  EXPECT_EQ(out.str().find("progress"), std::string::npos);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  auto strip = [](std::string s) {
    auto j = Json::parse(s);
    j.erase("elapsed_ms");
    return j.dump();
  };
  const auto one = invoke({"ehrhart", "--n", "4", "--threads", "1"});
  const auto eight = invoke({"ehrhart", "--n", "4", "--threads", "8"});
  EXPECT_EQ(strip(one.out), strip(eight.out));
  EXPECT_EQ(invoke({"ehrhart", "--n", "4", "--threads", "1", "--format", "text"}).out,
            invoke({"ehrhart", "--n", "4", "--threads", "8", "--format", "text"}).out);
}
