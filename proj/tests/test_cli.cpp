#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "srgkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = srgkit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("srgkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, MarginOfFirstOrderLag) {
  const auto r = run_cli({"margin", "--tf", "1/(s+1)"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("stable: yes"), std::string::npos);
  EXPECT_NE(r.out.find("s_m: 1.0000"), std::string::npos) << r.out;
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"margin", "--tf", "1/(s-1)"}).code, 1);
  EXPECT_EQ(run_cli({"margin", "--tf", "10/(s+1)^3"}).code, 1);
  EXPECT_EQ(run_cli({"margin", "--tf", "1/(s+"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"no-such-command"}).code, 2);
  EXPECT_EQ(run_cli({"analyze", path("missing.json")}).code, 2);
  write("bad.json", "{ not json");
  EXPECT_EQ(run_cli({"analyze", path("bad.json")}).code, 2);
  write("loop.json", R"j({"type": "feedback", "forward": {"type": "gain", "k": 2},
                          "backward": {"type": "gain", "k": 1}})j");
  EXPECT_EQ(run_cli({"sample", "--op", path("loop.json"), "--n", "2", "--out", path("c.csv")}).code, 3);
}

TEST_F(Cli, SrgRoundTripsThroughJson) {
  const auto r = run_cli({"srg", "class", "--kind", "output_strict", "--gamma", "2", "--out", path("os.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto region = srgkit::region_from_string(slurp(dir_ / "os.json"));
  EXPECT_TRUE(region.contains({0.25, 0.25}));
  EXPECT_FALSE(region.contains({0.6, 0.0}));
}

TEST_F(Cli, SmallGainFromRegionFiles) {
  ASSERT_EQ(run_cli({"srg", "class", "--kind", "gain_bound", "--mu", "0.5", "--out", path("h1.json")}).code, 0);
  ASSERT_EQ(run_cli({"srg", "class", "--kind", "gain_bound", "--mu", "1", "--out", path("h2.json")}).code, 0);
  const auto r = run_cli({"margin", "--h1", path("h1.json"), "--h2", path("h2.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("gain_bound: 1.0000"), std::string::npos) << r.out;
}

TEST_F(Cli, SweepTauCsvHeader) {
  ASSERT_EQ(run_cli({"sweep-tau", "--tf", "1/(s+1)", "--tau-points", "8", "--out", path("t.csv")}).code, 0);
  const std::string csv = slurp(dir_ / "t.csv");
  EXPECT_EQ(csv.rfind("# srgkit ", 0), 0u);
  EXPECT_NE(csv.find("\ntau,r_tau\n"), std::string::npos) << csv;
}

TEST_F(Cli, SampleChecksInclusion) {
  write("sat.json", R"({"type": "static", "kind": "saturation"})");
  ASSERT_EQ(run_cli({"srg", "static", "--kind", "saturation", "--out", path("disc.json")}).code, 0);
  const auto r = run_cli({"sample", "--op", path("sat.json"), "--n", "200", "--out", path("c.csv"), "--region",
                          path("disc.json"), "--tol", "1e-9"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("violations: 0"), std::string::npos) << r.out;
  EXPECT_NE(slurp(dir_ / "c.csv").find("gain,angle,slack"), std::string::npos);
}

TEST_F(Cli, RepeatRunsAreByteIdentical) {
  write("op.json", R"j({"type": "cascade", "parts": [{"type": "static", "kind": "saturation"},
                      {"type": "lti", "tf": "1/(s+1)"}]})j");
  for (const char* name : {"a", "b"}) {
    ASSERT_EQ(run_cli({"sample", "--op", path("op.json"), "--strategy", "random", "--n", "20", "--seed", "7",
                       "--out", path(std::string(name) + ".csv")})
                  .code,
              0);
    ASSERT_EQ(run_cli({"repro", "cascade", "--out-dir", path(name)}).code, 0);
  }
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
  for (const char* f : {"cascade.csv", "cascade_srg.svg", "cascade_inverse.svg"}) {
    const std::string a = slurp(dir_ / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(Cli, PlotWritesSvg) {
  ASSERT_EQ(run_cli({"srg", "lti", "--tf", "1/(s+1)", "--out", path("l.json")}).code, 0);
  ASSERT_EQ(run_cli({"plot", "--region", path("l.json"), "--tf", "1/(s+1)", "--out", path("l.svg")}).code, 0);
  const std::string svg = slurp(dir_ / "l.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
}
