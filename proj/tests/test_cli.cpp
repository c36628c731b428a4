#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nvphoton/cli.hpp"

namespace nvphoton::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in) << "missing " << path;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("nvphoton_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return main_with_args(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

const std::vector<std::string> kRunArgs = {"run", "--kind", "ghz", "--photons", "3", "--trials", "20",
                                           "--seed", "7", "--post-select"};
const std::vector<std::string> kSweepArgs = {"fidelity-sweep", "--kind", "cluster", "--mmax", "4", "--trials", "50",
                                             "--gate-err-deg", "10", "--bath-err-deg", "10", "--seed", "3"};
const std::vector<std::string> kRatesArgs = {"rates", "--reps", "1000", "--seed", "5"};

std::vector<std::string> with_out(std::vector<std::string> args, const std::string& out) {
  args.push_back("--out");
  args.push_back(out);
  return args;
}

TEST_F(Cli, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}), kExitOk);
  EXPECT_NE(out_.str().find("fidelity-sweep"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}), kExitUsage);
  EXPECT_EQ(run({"run", "--kind", "ghz"}), kExitUsage);
  EXPECT_EQ(run({"run", "--kind", "ghz", "--photons", "13"}), kExitUsage);
  EXPECT_EQ(run({"run", "--kind", "star", "--photons", "3"}), kExitUsage);
  EXPECT_EQ(run({"fidelity-sweep", "--kind", "ghz", "--mmax", "1", "--trials", "5"}), kExitUsage);
  EXPECT_EQ(run({"rates", "--reps", "0"}), kExitUsage);
  EXPECT_EQ(run({"rates", "--zpl", "1.5"}), kExitUsage);
  EXPECT_EQ(run({"bogus"}), kExitUsage);
}

TEST_F(Cli, BadNoiseFileExitsTwo) {
  std::ofstream(path("bad.noise")) << "gate_angle_max_deg=10\nwobble=3\n";
  EXPECT_EQ(run(with_out({"run", "--kind", "ghz", "--photons", "2", "--noise", path("bad.noise")}, path("r.csv"))),
            kExitUsage);
  EXPECT_NE(err_.str().find("wobble"), std::string::npos);
}

TEST_F(Cli, UnwritableOutputIsInternalError) {
  std::ofstream(path("blocker")) << "x";
  EXPECT_EQ(run(with_out(kRatesArgs, path("blocker/sub/h.csv"))), kExitInternal);
}

TEST_F(Cli, RunReportsStabilizers) {
  ASSERT_EQ(run(with_out(kRunArgs, path("run.csv"))), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("stabilizer XXX 1"), std::string::npos) << out_.str();
  const std::string csv = slurp(path("run.csv"));
  EXPECT_EQ(csv.rfind("trial,achieved_m,branch,fidelity,attempts\n", 0), 0U);
  EXPECT_NE(csv.find("\nsummary,"), std::string::npos);
}

TEST_F(Cli, RerunsAreByteIdentical) {
  for (const auto& args : {kRunArgs, kSweepArgs, kRatesArgs}) {
    ASSERT_EQ(run(with_out(args, path("a.csv"))), kExitOk) << err_.str();
    ASSERT_EQ(run(with_out(args, path("b.csv"))), kExitOk) << err_.str();
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv"))) << args[0];
  }
}

TEST_F(Cli, MatchesGoldenFiles) {
  const fs::path golden(NVPHOTON_GOLDEN_DIR);
  ASSERT_EQ(run(with_out(kRunArgs, path("run.csv"))), kExitOk);
  EXPECT_EQ(slurp(path("run.csv")), slurp(golden / "run_ghz3.csv"));
  ASSERT_EQ(run(with_out(kSweepArgs, path("sweep.csv"))), kExitOk);
  EXPECT_EQ(slurp(path("sweep.csv")), slurp(golden / "sweep_cluster4.csv"));
  ASSERT_EQ(run(with_out(kRatesArgs, path("rates.csv"))), kExitOk);
  EXPECT_EQ(slurp(path("rates.csv")), slurp(golden / "rates_hist.csv"));
  EXPECT_EQ(slurp(path("rates.csv.rates.csv")), slurp(golden / "rates_rates.csv"));
}

TEST_F(Cli, SidecarRecordsEffectiveParameters) {
  ASSERT_EQ(run(with_out(kSweepArgs, path("s.csv"))), kExitOk);
  const std::string cfg = slurp(path("s.csv.config"));
  EXPECT_EQ(cfg.rfind("command=fidelity-sweep\n", 0), 0U);
  EXPECT_NE(cfg.find("seed=3"), std::string::npos);
  EXPECT_NE(cfg.find("gate_angle_max_deg=10"), std::string::npos);
}

TEST_F(Cli, RatesWritesThreeFiles) {
  ASSERT_EQ(run(with_out(kRatesArgs, path("h.csv"))), kExitOk);
  EXPECT_EQ(slurp(path("h.csv")).rfind("length,count\n", 0), 0U);
  EXPECT_TRUE(fs::exists(path("h.csv.rates.csv")));
  EXPECT_NE(slurp(path("h.csv.report.txt")).find("19.53125"), std::string::npos);
}

TEST_F(Cli, DefaultOutputUsesEnvironmentDirectory) {
  ::setenv(kOutDirEnv, dir_.c_str(), 1);
  EXPECT_EQ(resolve_output_path("", "rates.csv"), path("rates.csv"));
  EXPECT_EQ(resolve_output_path("x.csv", "rates.csv"), "x.csv");
  ASSERT_EQ(run(kRatesArgs), kExitOk);
  ::unsetenv(kOutDirEnv);
  EXPECT_TRUE(fs::exists(path("rates.csv")));
}

TEST(NoiseConfig, RoundTrips) {
  std::istringstream in(
      "# comment\n"
      "gate_angle_max_deg = 10\n"
      "bath_mode=gaussian\n"
      "bath_sigma_deg=2\n"
      "hahn_echo=true\n"
      "tau_us=2\n");
  const NoiseSpec a = parse_noise_config(in);
  EXPECT_NEAR(a.model.gate_angle_max, 10.0 * M_PI / 180.0, 1e-15);
  EXPECT_EQ(a.model.bath_mode, noise::BathMode::Gaussian);
  EXPECT_TRUE(a.model.hahn_echo);
  EXPECT_NEAR(a.model.tau, 2e-6, 1e-18);
  std::istringstream again(serialize_noise(a));
  const NoiseSpec b = parse_noise_config(again);
  EXPECT_EQ(serialize_noise(b), serialize_noise(a));
}

TEST(NoiseConfig, RejectsMalformedLines) {
  for (const char* text : {"gate_angle_max_deg\n", "bath_mode=weird\n", "hahn_echo=maybe\n", "tau_us=abc\n",
                           "unknown_key=1\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(parse_noise_config(in), std::invalid_argument) << text;
  }
}

}  // namespace
}  // namespace nvphoton::cli
