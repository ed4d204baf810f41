#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "dpsrk/presets.hpp"
#include "dpsrk/number_format.hpp"
#include "dpsrk/rate.hpp"

namespace dpsrk {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun dpsrk_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("dpsrk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
    unsetenv("DPSRK_PRESET_DIR");
  }
  void TearDown() override {
    unsetenv("DPSRK_PRESET_DIR");
    std::filesystem::remove_all(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::filesystem::path dir_;
};

TEST_F(CliTest, RateMatchesLibrary) {
  const CliRun r = dpsrk_cli({"rate", "--preset", "fig3", "--detector", "si", "--L", "100"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  const ScenarioFile s = PresetRegistry::builtin().scenario("fig3", DetectorChoice::si, 100);
  const RatePoint p = secure_rate(s.link(100), s.attack_model());
  EXPECT_NE(r.out.find(format_double(p.secure_rate_hz)), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("secure_deadtime_bps"), std::string::npos);
  EXPECT_NE(r.out.find("attack hybrid_nomem, N 100"), std::string::npos);
}

TEST_F(CliTest, RateInsecureExitCode) {
  const CliRun far = dpsrk_cli({"rate", "--preset", "fig3", "--L", "400"});
  EXPECT_EQ(far.code, cli::kInsecure);
  EXPECT_NE(far.out.find("insecure"), std::string::npos);
  const CliRun pns = dpsrk_cli({"rate", "--preset", "fig3", "--L", "100", "--attack", "individual_mem"});
  EXPECT_EQ(pns.code, cli::kInsecure);
}

TEST_F(CliTest, RateCsvFile) {
  const CliRun r = dpsrk_cli({"rate", "--preset", "fig7", "--L", "20", "--csv", path("p.csv")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  const std::string csv = slurp(path("p.csv"));
  EXPECT_TRUE(csv.starts_with("L_km,p_signal,"));
  EXPECT_NE(csv.find("\n20,"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(dpsrk_cli({}).code, cli::kUsage);
  EXPECT_EQ(dpsrk_cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(dpsrk_cli({"rate", "--L", "10"}).code, cli::kUsage);
  EXPECT_EQ(dpsrk_cli({"rate", "--preset", "fig3", "--detector", "pmt"}).code, cli::kUsage);
  EXPECT_EQ(dpsrk_cli({"rate", "--preset", "fig99"}).code, cli::kUsage);
  EXPECT_EQ(dpsrk_cli({"rate", "--preset", "fig3", "--scenario", path("x")}).code, cli::kUsage);
  EXPECT_EQ(dpsrk_cli({"rate", "--preset", "fig3", "--n", "0"}).code, cli::kUsage);
  EXPECT_EQ(dpsrk_cli({"mc", "--preset", "fig3", "--pulses", "1.5"}).code, cli::kUsage);
  EXPECT_EQ(dpsrk_cli({"sweep", "--preset", "fig3", "--lo", "5", "--hi", "5"}).code, cli::kUsage);
  EXPECT_EQ(dpsrk_cli({"--help"}).code, cli::kOk);
}

TEST_F(CliTest, ScenarioParseErrorIsReported) {
  std::ofstream(path("bad.scenario")) << "mu = abc\n";
  const CliRun r = dpsrk_cli({"rate", "--scenario", path("bad.scenario")});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("bad.scenario:1:6: invalid number for key 'mu': 'abc'"), std::string::npos)
      << r.err;
}

TEST_F(CliTest, ScenarioFileWithOverrides) {
  const CliRun show = dpsrk_cli({"presets", "show", "fig3", "--detector", "ingaas", "--n", "10"});
  ASSERT_EQ(show.code, cli::kOk);
  std::ofstream(path("s.scenario")) << show.out;
  const CliRun from_file = dpsrk_cli({"rate", "--scenario", path("s.scenario"), "--L", "50"});
  const CliRun from_preset =
      dpsrk_cli({"rate", "--preset", "fig3", "--detector", "ingaas", "--n", "10", "--L", "50"});
  EXPECT_EQ(from_file.out, from_preset.out);
  const CliRun n1 = dpsrk_cli({"rate", "--scenario", path("s.scenario"), "--L", "50", "--n", "1"});
  EXPECT_NE(n1.out.find("N 1\n"), std::string::npos);
}

TEST_F(CliTest, SweepStdoutAndBothDetectors) {
  const CliRun r = dpsrk_cli({"sweep", "--preset", "fig3", "--detector", "both", "--steps", "11"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(r.out.starts_with("detector,L_km,"));
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 23);
  EXPECT_NE(r.out.find("\nInGaAs-APD,0,"), std::string::npos);
  EXPECT_NE(r.out.find("\nSi-APD,300,"), std::string::npos);

  const CliRun pump = dpsrk_cli({"sweep", "--preset", "fig3", "--axis", "pump", "--lo", "0.001",
                              "--hi", "0.03", "--steps", "5", "--L", "100"});
  ASSERT_EQ(pump.code, cli::kOk) << pump.err;
  EXPECT_TRUE(pump.out.starts_with("pump_mw,L_km,"));
}

TEST_F(CliTest, SweepCsvIsByteIdenticalAcrossRuns) {
  const std::vector<std::string> args{"sweep", "--preset", "fig5", "--detector", "both",
                                      "--f-mode", "fixed"};
  auto a = args;
  a.insert(a.end(), {"--csv", path("a.csv")});
  auto b = args;
  b.insert(b.end(), {"--csv", path("b.csv")});
  ASSERT_EQ(dpsrk_cli(a).code, cli::kOk);
  ASSERT_EQ(dpsrk_cli(b).code, cli::kOk);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_FALSE(slurp(path("a.csv")).empty());
}

TEST_F(CliTest, MaxDistance) {
  const CliRun si = dpsrk_cli({"max-distance", "--preset", "fig3", "--detector", "si"});
  EXPECT_EQ(si.code, cli::kOk);
  EXPECT_EQ(si.out, "max secure distance: 256.76 km\n");
  const CliRun fixed = dpsrk_cli({"max-distance", "--preset", "fig3", "--detector", "ingaas",
                               "--f-mode", "fixed"});
  EXPECT_EQ(fixed.out, "max secure distance: 143.90 km\n");
  const CliRun none = dpsrk_cli({"max-distance", "--preset", "fig4", "--attack", "hybrid_mem"});
  EXPECT_EQ(none.code, cli::kInsecure);
  EXPECT_EQ(none.out, "no secure distance\n");
}

TEST_F(CliTest, OptimizeMuAndPump) {
  const CliRun mu = dpsrk_cli({"optimize-mu", "--preset", "fig3", "--L", "100"});
  EXPECT_EQ(mu.code, cli::kOk) << mu.err;
  EXPECT_TRUE(mu.out.starts_with("mu* "));
  const CliRun pump = dpsrk_cli({"optimize-pump"});
  EXPECT_EQ(pump.code, cli::kOk) << pump.err;
  EXPECT_NE(pump.out.find("pump_mw"), std::string::npos);
  EXPECT_NE(pump.out.find("nep"), std::string::npos);
  std::ofstream(path("nocurve.scenario"))
      << dpsrk_cli({"presets", "show", "fig3"}).out;
  EXPECT_EQ(dpsrk_cli({"optimize-pump", "--scenario", path("nocurve.scenario")}).code,
            cli::kUsage);
}

TEST_F(CliTest, MonteCarloLinkAndIntercept) {
  const CliRun link = dpsrk_cli({"mc", "--preset", "fig3", "--L", "10", "--pulses", "200000",
                              "--seed", "3", "--csv", path("mc.csv")});
  EXPECT_EQ(link.code, cli::kOk) << link.err;
  const std::string csv = slurp(path("mc.csv"));
  EXPECT_TRUE(csv.starts_with("mode,seed,windows,clicks,errors,"));
  EXPECT_NE(csv.find("\nlink,3,200000,"), std::string::npos);

  ASSERT_EQ(dpsrk_cli({"mc", "--preset", "fig3", "--L", "10", "--pulses", "200000", "--seed",
                       "3", "--csv", path("mc2.csv")}).code,
            cli::kOk);
  EXPECT_EQ(slurp(path("mc2.csv")), csv);

  const CliRun ir = dpsrk_cli({"mc", "--preset", "fig3", "--n", "1", "--mode", "ir", "--m", "2",
                            "--pulses", "1e5"});
  EXPECT_EQ(ir.code, cli::kOk) << ir.err;
  EXPECT_NE(ir.out.find("attacked"), std::string::npos);
  EXPECT_EQ(dpsrk_cli({"mc", "--preset", "fig3", "--mode", "ir", "--n-set", "1,x"}).code,
            cli::kUsage);
}

TEST_F(CliTest, PlotScript) {
  ASSERT_EQ(dpsrk_cli({"sweep", "--preset", "fig3", "--detector", "both", "--steps", "4",
                       "--csv", path("s.csv")}).code,
            cli::kOk);
  const CliRun r = dpsrk_cli({"plot", path("s.csv")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("SERIES = [\"InGaAs-APD\", \"Si-APD\"]"), std::string::npos) << r.out;
  EXPECT_EQ(dpsrk_cli({"plot", path("s.csv"), "-o", path("s.py")}).code, cli::kOk);
  EXPECT_EQ(slurp(path("s.py")), r.out);

  std::ofstream(path("broken.csv")) << "L_km,oops\n";
  const CliRun bad = dpsrk_cli({"plot", path("broken.csv")});
  EXPECT_EQ(bad.code, cli::kUsage);
  EXPECT_NE(bad.err.find("broken.csv:1:1"), std::string::npos);
  EXPECT_EQ(dpsrk_cli({"plot", path("missing.csv")}).code, cli::kUsage);
}

TEST_F(CliTest, PresetsListAndShow) {
  const CliRun list = dpsrk_cli({"presets", "list"});
  EXPECT_EQ(list.code, cli::kOk);
  for (const auto& name : PresetRegistry::builtin().names()) {
    EXPECT_NE(list.out.find("\n" + name + " "), std::string::npos) << name;
  }
  const CliRun show = dpsrk_cli({"presets", "show", "fig4", "--detector", "ingaas", "--n", "10",
                              "--attack", "hybrid_mem"});
  EXPECT_EQ(show.out, serialize_scenario(PresetRegistry::builtin().scenario(
                          "fig4", DetectorChoice::ingaas, 10, "hybrid_mem")));
}

TEST_F(CliTest, PresetDirectoryOverride) {
  ScenarioFile custom = PresetRegistry::builtin().scenario("fig3", DetectorChoice::si, 100);
  custom.mu = 0.1;
  std::ofstream(preset_file(dir_, "fig3", DetectorChoice::si)) << serialize_scenario(custom);
  const CliRun builtin = dpsrk_cli({"rate", "--preset", "fig3", "--L", "50"});
  setenv("DPSRK_PRESET_DIR", dir_.c_str(), 1);
  const CliRun shadowed = dpsrk_cli({"rate", "--preset", "fig3", "--L", "50"});
  EXPECT_NE(builtin.out, shadowed.out);
  const RatePoint p = secure_rate(custom.link(50), custom.attack_model());
  EXPECT_NE(shadowed.out.find(format_double(p.secure_rate_hz)), std::string::npos);
  EXPECT_NE(dpsrk_cli({"presets", "list"}).out.find("shadow"), std::string::npos);
  EXPECT_EQ(dpsrk_cli({"presets", "show", "fig3"}).out, serialize_scenario(custom));
  // The InGaAs variant has no file and falls back to the registry.
  EXPECT_EQ(dpsrk_cli({"rate", "--preset", "fig3", "--detector", "ingaas", "--L", "50"}).code,
            cli::kOk);
}

}  // namespace
}  // namespace dpsrk
