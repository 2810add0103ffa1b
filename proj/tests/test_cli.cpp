#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "exqmc/cli.hpp"
#include "exqmc/report.hpp"

using exqmc::Json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

// Runs the installed binary through the shell; stderr is discarded.
Outcome run_binary(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" EXQMC_CLI_PATH "\" " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome run_inprocess(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome r;
  r.code = exqmc::run_cli(args, out, err);
  r.out = out.str();
  return r;
}

Json without_timing(Json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST(Cli, CheckNet) {
  const Outcome r = run_binary("check-net --construction hammersley --m 4");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["command"], "check-net");
  EXPECT_EQ(j["values"]["is_net"], true);
  EXPECT_EQ(j["values"]["d"], 2);
  EXPECT_EQ(j["values"]["min_valuation"], "1/32");
  EXPECT_EQ(j["all_pass"], true);
}

TEST(Cli, CopiesFixtureFailsNetCheck) {
  const Outcome r = run_binary("check-net --construction copies --m 4");
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["values"]["is_net"], false);
  EXPECT_EQ(j["all_pass"], false);
}

TEST(Cli, LevinNetTheorem3) {
  const Outcome r = run_binary("levin-net --mode theorem3 --m 8");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["values"]["delta1"], "0");
  EXPECT_EQ(j["values"]["direct"], "-9/4096");
  EXPECT_EQ(j["values"]["bound_ok"], true);
}

TEST(Cli, AlphaOracle) {
  const Outcome r = run_inprocess({"alpha", "--bases", "2,3", "--m", "3", "--oracle"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["values"]["equal"], true);
  EXPECT_EQ(exqmc::Rational::parse(j["values"]["closed"].get<std::string>()),
            exqmc::Rational(3365, 1152));
}

TEST(Cli, DiscrepancyOracle) {
  const Outcome r = run_inprocess({"discrepancy", "--construction", "hammersley", "--m", "4", "--oracle"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["all_pass"], true);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_binary("").code, 2);
  EXPECT_EQ(run_binary("no-such-command").code, 2);
  EXPECT_EQ(run_binary("check-net --m notanumber").code, 2);
  EXPECT_EQ(run_binary("check-net --format xml").code, 2);
  EXPECT_EQ(run_binary("check-net --format csv").code, 2);
  EXPECT_EQ(run_binary("levin-net --mode theorem3 --m 6").code, 2);
  EXPECT_EQ(run_binary("alpha --bases 2,4 --m 2").code, 2);
}

TEST(Cli, CapExceeded) {
  EXPECT_EQ(run_binary("alpha --bases 2,3 --m 4 --oracle --cap 10").code, 3);
  EXPECT_EQ(run_binary("alpha --bases 2,3 --m 4 --oracle", "EXQMC_CAP=10").code, 3);
  EXPECT_EQ(run_binary("theorem2 --bases 2,3 --m 3 --cap 100").code, 3);
  // The flag wins over the environment.
  EXPECT_EQ(run_binary("alpha --bases 2,3 --m 2 --oracle --cap 1000", "EXQMC_CAP=10").code, 0);
}

TEST(Cli, CsvTrajectory) {
  const Outcome r = run_binary("alpha --bases 2,3 --m 2 --format csv");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "N,delta_num,delta_den");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 144U);
}

TEST(Cli, OutputFileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "exqmc_cli_test";
  std::filesystem::create_directories(dir);
  const auto report = dir / "report.json";
  const auto traj = dir / "traj.csv";
  const Outcome r = run_binary("theorem2 --bases 2,3 --m 2 --output " + report.string() +
                           " --trajectory " + traj.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(report);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["command"], "theorem2");
  EXPECT_EQ(j.dump(), Json::parse(j.dump()).dump());
  EXPECT_TRUE(std::filesystem::exists(traj));
  EXPECT_FALSE(std::filesystem::exists(report.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, DeterministicModuloTiming) {
  const std::vector<std::string> args{"levin-net", "--mode", "theorem4", "--m", "16", "--samples", "5", "--seed", "7"};
  const Outcome a = run_inprocess(args);
  const Outcome b = run_inprocess(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(without_timing(Json::parse(a.out)), without_timing(Json::parse(b.out)));
  EXPECT_TRUE(Json::parse(a.out)["timing"].contains("seconds"));
}

TEST(Cli, RationalJsonRoundTrip) {
  for (const char* s : {"0", "-3/7", "12345678901234567890/3"}) {
    const auto r = exqmc::Rational::parse(s);
    EXPECT_EQ(exqmc::rational_from_json(exqmc::rational_json(r)), r);
  }
}
