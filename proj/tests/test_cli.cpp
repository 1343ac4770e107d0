#include "issprobe/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace issprobe;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "issprobe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string config_path(const std::string& name) { return std::string(ISSPROBE_SOURCE_DIR) + "/configs/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ValueClosedForm) {
  const CliRun r = cli({"value", "--system", "scalar_linear:a=0.5", "--policy", "zero", "--reward", "linear:v=1",
                     "--schedule", "constant:0.8", "--x", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>(), 1.0 / 0.6, 1e-6);
  EXPECT_EQ(j["kind"], "V");
}

TEST(Cli, ValueFromConfigWithQ) {
  const CliRun r = cli({"value", "--config", config_path("linear_value.json"), "--u", "0.2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), 1.0 + 0.8 * 0.7 / 0.6, 1e-6);
}

TEST(Cli, AuditLinearConsistent) {
  const CliRun r = cli({"audit", "--config", config_path("linear_audit.json"), "--pairs", "64"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "consistent-with");
  ASSERT_FALSE(j["reports"].empty());
  for (const auto& rep : j["reports"]) EXPECT_EQ(rep["verdict"], "consistent");
  EXPECT_EQ(j["reverse"].size(), 8u);
}

TEST(Cli, AuditRotationRefuted) {
  const CliRun r = cli({"audit", "--config", config_path("rotation_audit.json"), "--pairs", "32"});
  EXPECT_EQ(r.code, kExitViolation) << r.err;
  EXPECT_NE(r.out.find("EnvelopeInfeasible"), std::string::npos);
}

TEST(Cli, EstimateGainsExitCodes) {
  EXPECT_EQ(cli({"estimate-gains", "--system", "scalar_linear:a=0.5", "--policy", "zero"}).code, kExitOk);
  EXPECT_EQ(cli({"estimate-gains", "--system", "piecewise_rotation:c=0.99,theta=1"}).code, kExitViolation);
}

TEST(Cli, CertifyClassViolationExitCode) {
  EXPECT_EQ(cli({"certify-class", "--config", config_path("signed_power.json"), "--samples", "2000"}).code, kExitOk);
  EXPECT_EQ(cli({"certify-class", "--class", "signed_power:d=1,alpha=0.5,C=1", "--samples", "2000"}).code,
            kExitViolation);
}

TEST(Cli, LyapunovReportsOutcome) {
  const CliRun pass = cli({"lyapunov-check", "--system", "scalar_linear:a=0.5", "--policy", "zero"});
  EXPECT_EQ(pass.code, kExitOk);
  EXPECT_TRUE(nlohmann::json::parse(pass.out)["pass"].get<bool>());
  const CliRun fail = cli({"lyapunov-check", "--system", "piecewise_rotation:c=0.99,theta=1", "--candidate", "a3=0.01"});
  EXPECT_EQ(fail.code, kExitOk);
  EXPECT_FALSE(nlohmann::json::parse(fail.out)["pass"].get<bool>());
}

TEST(Cli, LiftDemoAndSimulate) {
  EXPECT_EQ(cli({"lift-demo", "--config", config_path("projection_lift.json")}).code, kExitOk);
  const CliRun s = cli({"simulate", "--system", "scalar_linear:a=0.5", "--x", "1", "--horizon", "3"});
  ASSERT_EQ(s.code, kExitOk);
  const auto j = nlohmann::json::parse(s.out);
  EXPECT_EQ(j["deviations"].size(), 4u);
}

TEST(Cli, ConfigAndParseErrors) {
  EXPECT_EQ(cli({"value", "--schedule", "constant:zz"}).code, kExitConfig);
  EXPECT_EQ(cli({"value", "--nonsense"}).code, kExitConfig);
  EXPECT_EQ(cli({}).code, kExitConfig);
  EXPECT_EQ(cli({"value", "--config", "/nonexistent.json"}).code, kExitConfig);
  EXPECT_EQ(cli({"value", "--system", "warp:drive=9"}).code, kExitConfig);
}

TEST(Cli, NumericalFailureExitCode) {
  EXPECT_EQ(cli({"value", "--schedule", "constant:1.0"}).code, kExitNumerical);
  EXPECT_EQ(cli({"simulate", "--system", "scalar_linear:a=3", "--x", "1", "--horizon", "20"}).code, kExitNumerical);
}

TEST(Cli, ReportFileAndManifest) {
  const std::string dir = testing::TempDir();
  const std::string report = dir + "/value.json", manifest = dir + "/manifest.json";
  ASSERT_EQ(cli({"value", "--config", config_path("linear_value.json"), "--out", report, "--manifest", manifest}).code,
            kExitOk);
  EXPECT_NEAR(nlohmann::json::parse(slurp(report))["value"].get<double>(), 1.0 / 0.6, 1e-6);
  const auto m = nlohmann::json::parse(slurp(manifest));
  EXPECT_EQ(m["subcommand"], "value");
  EXPECT_EQ(m["config_hash"].get<std::string>().size(), 16u);
}

TEST(Cli, Version) {
  const CliRun r = cli({"--version"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, std::string(kVersion) + "\n");
}
