#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gsep/cli.hpp"

using gsep::run_cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, TermsCountAndEnumerate) {
  auto r = run({"terms", "count", "-k", "5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed().at("count"), 14);

  r = run({"--format", "text", "terms", "enumerate", "-k", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(x1*x2)*x3\nx1*(x2*x3)\n");

  r = run({"terms", "enumerate", "-k", "4", "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Cli, Unify) {
  auto r = run({"unify", "x*y", "y*x"});
  ASSERT_EQ(r.code, 0);
  const json j = r.parsed();
  EXPECT_TRUE(j.at("unifiable").get<bool>());
  EXPECT_EQ(j.at("unifier").at("y"), "x");

  r = run({"unify", "x", "x*y"});
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(r.parsed().at("unifiable").get<bool>());
  EXPECT_EQ(r.parsed().at("trace").back().at("rule"), "Check");
}

TEST(Cli, SeparateConstructions) {
  auto r = run({"separate", "(x*y)*z", "x*(y*z)", "--emit-table"});
  ASSERT_EQ(r.code, 0);
  json j = r.parsed();
  EXPECT_EQ(j.at("verdict"), "separated");
  EXPECT_EQ(j.at("construction"), "cover");
  EXPECT_EQ(j.at("opsum_text"), "||1,l,0|| + ||1,l,1||'");
  EXPECT_EQ(j.at("table_csv").get<std::string>().substr(0, 2), "4\n");

  r = run({"separate", "(y0*y1)*(z0*(z1*y0))", "((z2*y1)*y2)*(z3*y2)"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed().at("construction"), "cycle");

  r = run({"separate", "x*y", "y*x"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed().at("verdict"), "not-separable");

  r = run({"--budget-candidates", "1", "separate", "(x*y)*(z*y)", "z*((y*y)*(x*x))"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed().at("verdict"), "unknown");
}

TEST(Cli, AntiassocBuildAndVerify) {
  const auto path = (std::filesystem::temp_directory_path() / "gsep_cli_k4.json").string();
  auto r = run({"antiassoc", "build", "-k", "4", "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(std::filesystem::exists(path));

  r = run({"antiassoc", "verify", "-k", "4", "--input", path});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(r.parsed().at("all_pass").get<bool>());

  std::ifstream in(path);
  json build = json::parse(in);
  in.close();
  build["factors"][0]["certificate"]["lambda"] = json::array();
  std::ofstream(path) << build.dump();
  r = run({"antiassoc", "verify", "-k", "4", "--input", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.parsed().at("all_pass").get<bool>());
  std::filesystem::remove(path);
}

TEST(Cli, Census) {
  auto r = run({"census", "-n", "3", "--workers", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed().at("antiassociative_count"), 52);

  r = run({"census", "-n", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.parsed().at("error").at("kind"), "invalid-argument");

  r = run({"census", "-n", "4", "--long"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed().at("antiassociative_count"), 421560);

  EXPECT_EQ(run({"census", "-n", "5"}).code, 2);
}

TEST(Cli, Demos) {
  for (const char* name : {"affine-example", "deranged-product", "figure2"}) {
    const auto r = run({"demo", name});
    ASSERT_EQ(r.code, 0) << name;
    EXPECT_TRUE(r.parsed().at("all_match").get<bool>()) << name;
  }
}

TEST(Cli, Lemmas) {
  const auto r = run({"--seed", "9", "lemmas", "--trials", "30"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed().at("trials"), 30);
  EXPECT_TRUE(r.parsed().at("ok").get<bool>());
}

TEST(Cli, ErrorsAndExitCodes) {
  auto r = run({"unify", "x*", "y"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.parsed().at("error").at("kind"), "parse");

  r = run({"terms", "count", "-k", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.parsed().at("error").at("kind"), "usage");

  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);

  r = run({"--format", "text", "unify", "x*", "y"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());

  r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("gsep"), std::string::npos);
}
