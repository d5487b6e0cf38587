#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qruler/cli/config.hpp"
#include "qruler/cli/run.hpp"
#include "qruler/error.hpp"

using namespace qruler;
using namespace qruler::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qruler_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& args) {
  const std::string cmd = std::string(QRULER_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, MergeAndRoundTrip) {
  RunConfig c;
  c.merge(nlohmann::json{{"probe", "gaussian:x0=1,dx=0.5"}, {"lambdas", {0.0, 0.5}}, {"budget", 4.0}});
  EXPECT_EQ(c.probe, "gaussian:x0=1,dx=0.5");
  EXPECT_EQ(c.lambdas.size(), 2u);
  RunConfig d;
  d.merge(c.to_json());
  EXPECT_EQ(d.to_json(), c.to_json());
}

TEST(Config, RejectsUnknownKeys) {
  RunConfig c;
  try {
    c.merge(nlohmann::json{{"probes", "x"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
  }
  EXPECT_THROW(c.merge(nlohmann::json{{"budget", "lots"}}), Error);
  EXPECT_THROW(command_from_string("plot"), Error);
  EXPECT_THROW(format_from_string("xml"), Error);
}

TEST(Config, ProbeAndRulerSyntax) {
  const auto g = std::get<GaussianProbeSpec>(parse_probe("gaussian:x0=0.3,p0=-1,dx=0.5"));
  EXPECT_DOUBLE_EQ(g.center, 0.3);
  EXPECT_DOUBLE_EQ(g.conjugate_center, -1.0);
  EXPECT_DOUBLE_EQ(g.sigma, 0.5);
  const auto s = std::get<SgProbeSpec>(parse_probe("sg:xi=0.9,n_max=400"));
  EXPECT_DOUBLE_EQ(s.xi.real(), 0.9);
  EXPECT_EQ(s.n_max, 400u);
  EXPECT_DOUBLE_EQ(parse_ruler("gaussian:dphi=0.5").width, 0.5);
  EXPECT_DOUBLE_EQ(parse_ruler("ideal").width, 0.0);
  EXPECT_THROW(parse_probe("gaussian:sigma=1,colour=red"), Error);
  EXPECT_THROW(parse_probe("sg:n_max=1.5"), Error);
  EXPECT_THROW(parse_ruler("box:width=1"), Error);
  EXPECT_THROW(parse_ruler("gaussian:width=0"), Error);
}

TEST(Config, ScenarioSpecFollowsKind) {
  RunConfig c;
  c.scenario = "nonlinear";
  c.ruler = "gaussian:dx=0.5";
  EXPECT_TRUE(scenario_spec(c).ruler.joint_outcomes);
  c.scenario = "linear";
  EXPECT_FALSE(scenario_spec(c).ruler.joint_outcomes);
}

TEST(Run, OptimizeWritesOptimumAndManifest) {
  RunConfig c;
  c.command = Command::Optimize;
  c.objective = "nonlinear";
  c.budget = 4.0;
  c.out_dir = scratch("optimize");
  std::ostringstream out;
  EXPECT_EQ(run(c, out), kExitOk);
  EXPECT_NE(out.str().find("s* = 0.75"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(c.out_dir / "optimum.json"));
  EXPECT_DOUBLE_EQ(j["s*"].get<double>(), 0.75);
  EXPECT_NEAR(j["s_numeric"].get<double>(), 0.75, 1e-7);
  EXPECT_NEAR(j["ratio_numeric"].get<double>(), 0.375, 1e-8);

  const auto m = nlohmann::json::parse(slurp(c.out_dir / "manifest.json"));
  EXPECT_EQ(m["command"], "optimize");
  EXPECT_EQ(m["config_sha256"], sha256_hex(m["config"].dump()));
  for (const auto& f : m["files"]) {
    const std::string body = slurp(c.out_dir / f["name"].get<std::string>());
    EXPECT_EQ(f["bytes"].get<std::size_t>(), body.size());
    EXPECT_EQ(f["sha256"], sha256_hex(body));
  }
}

TEST(Run, RepeatedRunsAreByteIdentical) {
  RunConfig c;
  c.command = Command::Wk;
  c.probe = "gaussian:sigma=1";
  c.ruler = "gaussian:dphi=0.5";
  std::ostringstream out;
  const fs::path a = scratch("wk_a");
  const fs::path b = scratch("wk_b");
  c.out_dir = a;
  run(c, out);
  c.out_dir = b;
  run(c, out);
  for (const char* name : {"manifest.json", "probe.csv", "gamma.csv", "p.csv", "wk_summary.json"}) {
    const std::string first = slurp(a / name);
    EXPECT_FALSE(first.empty()) << name;
    EXPECT_TRUE(first == slurp(b / name)) << name;
  }
}

TEST(Run, FormatSelectsArtifacts) {
  RunConfig c;
  c.command = Command::Optimize;
  c.format = OutputFormat::Csv;
  c.out_dir = scratch("csv_only");
  std::ostringstream out;
  run(c, out);
  EXPECT_TRUE(fs::exists(c.out_dir / "curve.csv"));
  EXPECT_FALSE(fs::exists(c.out_dir / "optimum.json"));
}

TEST(Run, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Binary, ExitCodes) {
  const std::string dir = scratch("exit").string();
  EXPECT_EQ(shell("optimize --out-dir " + dir), 0);
  EXPECT_EQ(shell("optimize --budget -1 --out-dir " + dir), 3);
  EXPECT_EQ(shell("optimize --objective max --out-dir " + dir), 2);
  EXPECT_EQ(shell("wk --bogus"), 2);
  EXPECT_EQ(shell("scenario --scenario phase_gaussian --probe gaussian:nbar=2,dn=1 --out-dir " + dir), 3);
  EXPECT_EQ(shell("validate-ruler --ruler gaussian:dphi=0.5 --out-dir " + dir), 0);
}

TEST(Binary, ConfigFileAndFlagOverride) {
  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.json");
    f << R"({"command": "optimize", "objective": "nonlinear", "budget": 2.0})";
  }
  EXPECT_EQ(shell("optimize --config " + (dir / "run.json").string() + " --budget 8 --out-dir " +
                  (dir / "out").string()),
            0);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "optimum.json"));
  EXPECT_EQ(j["objective"], "nonlinear");
  EXPECT_DOUBLE_EQ(j["budget"].get<double>(), 8.0);
  {
    std::ofstream f(dir / "bad.json");
    f << R"({"command": "wk"})";
  }
  EXPECT_EQ(shell("optimize --config " + (dir / "bad.json").string()), 2);
}
