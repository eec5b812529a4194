#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

using namespace igusa;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome igusa_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv("IGUSA_CACHE_DIR");
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("igusa-cli-" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ComputeCuspJson) {
  const Outcome r = igusa_cli({"compute", "x^2+y^3", "-p", "5", "--format", "json", "--expand", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["method"], "sqh");
  EXPECT_EQ(doc["zeta"]["denom"], json::parse(R"([{"a":1,"b":1},{"a":5,"b":6}])"));
  EXPECT_EQ(doc["pole_real_parts"], json::parse("[[-1,1],[-5,6]]"));
  EXPECT_EQ(doc["N"], json::parse("[1,5,45,225,1125,5625]"));
  EXPECT_EQ(doc["report"]["weights"], json::parse("[3,2]"));
  EXPECT_EQ(doc["report"]["k0"], 0);
  EXPECT_EQ(ratfun_from_json(doc["zeta"], 5).to_string(),
            "(4/5 - 4/125*t + 4/125*t^2 - 4/15625*t^5)/((1 - t/5)(1 - t^6/3125))");
}

TEST_F(CliTest, ComputeTextAndLatex) {
  const Outcome text = igusa_cli({"compute", "x", "-p", "3"});
  ASSERT_EQ(text.code, 0) << text.err;
  EXPECT_NE(text.out.find("Z(t) = (2/3)/(1 - t/3)"), std::string::npos) << text.out;
  EXPECT_NE(text.out.find("pole real parts: -1"), std::string::npos) << text.out;

  const Outcome latex = igusa_cli({"compute", "x", "-p", "3", "--format", "latex"});
  ASSERT_EQ(latex.code, 0);
  EXPECT_NE(latex.out.find("Z(t) = \\frac{\\frac{2}{3}}{(1 - 3^{-1}t)}"), std::string::npos) << latex.out;
}

TEST_F(CliTest, ConstantTermUsesStationaryPhase) {
  const Outcome r = igusa_cli({"compute", "x^2 - 3", "-p", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["method"], "spf");
}

TEST_F(CliTest, OracleAndCheck) {
  const Outcome o = igusa_cli({"oracle", "x^2+y^3", "-p", "5", "--levels", "3", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json::parse(o.out)["N"], json::parse("[1,5,45,225]"));

  const Outcome c = igusa_cli({"check", "x^2+y^3", "-p", "5", "--levels", "4"});
  EXPECT_EQ(c.code, 0) << c.out << c.err;
  EXPECT_NE(c.out.find("PASS series"), std::string::npos);
  EXPECT_NE(c.out.find("PASS counts"), std::string::npos);
  EXPECT_NE(c.out.find("PASS closed-form"), std::string::npos);
  EXPECT_EQ(c.out.find("FAIL"), std::string::npos);

  const Outcome cp = igusa_cli({"check", "x^2+u*y^3", "-p", "5", "--char", "p", "--levels", "3"});
  EXPECT_EQ(cp.code, 0) << cp.out << cp.err;
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(igusa_cli({"compute", "x^^2", "-p", "5"}).code, 2);
  EXPECT_EQ(igusa_cli({"compute", "u*x", "-p", "5"}).code, 2);
  EXPECT_EQ(igusa_cli({"compute", "x^2+y^3+x*y", "-p", "5", "--weights", "3,2:6"}).code, 3);
  EXPECT_EQ(igusa_cli({"compute", "x^2*y^2", "-p", "5"}).code, 3);
  // (x^2 + y^3)(1 + y) is singular at (+-1, -1), away from the origin.
  EXPECT_EQ(igusa_cli({"compute", "x^2+y^3+y^4+x^2*y", "-p", "5", "--max-depth", "5"}).code, 4);
  EXPECT_EQ(igusa_cli({"compute", "x^2+y^3+x*y^2", "-p", "5", "--max-iter", "1"}).code, 5);
  EXPECT_EQ(igusa_cli({"oracle", "x^2+y^3", "-p", "5", "--levels", "4", "--budget", "100"}).code, 6);
  EXPECT_EQ(igusa_cli({"compute", "x^2+y^3", "-p", "5", "--max-iter", "0"}).code, 1);
  EXPECT_EQ(igusa_cli({"compute", "x^2+y^3", "-p", "4"}).code, 1);
  EXPECT_EQ(igusa_cli({"compute", "x^2+y^3"}).code, 1);
  EXPECT_EQ(igusa_cli({"compute", "x", "-p", "5", "--weights", "nonsense"}).code, 1);
  EXPECT_EQ(igusa_cli({"--help"}).code, 0);
}

TEST_F(CliTest, CacheHitIsBitIdentical) {
  const std::vector<std::string> args{"compute", "x^2+y^3+x*y^2", "-p", "5", "--format", "json",
                                      "--cache", dir_.string()};
  const Outcome first = igusa_cli(args);
  ASSERT_EQ(first.code, 0) << first.err;
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir_)) ++entries;
  EXPECT_EQ(entries, 1u);
  const Outcome second = igusa_cli(args);
  EXPECT_EQ(second.out, first.out);

  // A corrupt entry is recomputed, not trusted.
  for (const auto& e : fs::directory_iterator(dir_)) std::ofstream(e.path()) << "{broken";
  EXPECT_EQ(igusa_cli(args).out, first.out);

  setenv("IGUSA_CACHE_DIR", (dir_ / "env").c_str(), 1);
  ASSERT_EQ(igusa_cli({"oracle", "x^2+y^3", "-p", "3"}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "env"));
  unsetenv("IGUSA_CACHE_DIR");
}

TEST_F(CliTest, JsonRoundTripReproducesText) {
  const Outcome j = igusa_cli({"compute", "x^3+y^4", "-p", "7", "--format", "json", "--expand", "3"});
  ASSERT_EQ(j.code, 0);
  const json doc = json::parse(j.out);
  std::ostringstream rendered;
  cli::detail::render_compute(doc, "text", rendered);
  EXPECT_EQ(rendered.str(), igusa_cli({"compute", "x^3+y^4", "-p", "7", "--expand", "3"}).out);
  const RatFun Z = ratfun_from_json(doc["zeta"], 7);
  EXPECT_EQ(ratfun_to_json(Z), doc["zeta"]);
}

TEST_F(CliTest, TraceFile) {
  const fs::path trace = dir_ / "trace.json";
  const Outcome r = igusa_cli({"compute", "x^2+y^3+x*y^2", "-p", "5", "--trace", trace.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(trace);
  const json t = json::parse(in);
  ASSERT_TRUE(t.contains("limit"));
  EXPECT_EQ(t["limit"].size(), 11u);  // cells of the (3,2) polydisc complement
  EXPECT_EQ(t["steps"].size(), 5u);
  EXPECT_EQ(t["limit"][0]["B"], json::parse("[1]"));
}

TEST(WeightsOption, Parsing) {
  EXPECT_EQ(cli::parse_weights("3,2:6"), (WeightSystem{{3, 2}, 6}));
  EXPECT_EQ(cli::parse_weights("1:1"), (WeightSystem{{1}, 1}));
  EXPECT_THROW(cli::parse_weights("3,2"), InvalidParameters);
  EXPECT_THROW(cli::parse_weights(":6"), InvalidParameters);
  EXPECT_THROW(cli::parse_weights("a:6"), InvalidParameters);
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
