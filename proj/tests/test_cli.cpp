#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "app/commands.hpp"

namespace zeno::app {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& path) { return json::parse(slurp(path)); }

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::out_of_range(name);
  }
};

Csv read_csv(const fs::path& path) {
  std::ifstream in(path);
  Csv csv;
  std::string line, cell;
  std::getline(in, line);
  std::stringstream hs(line);
  while (std::getline(hs, cell, ',')) csv.header.push_back(cell);
  while (std::getline(in, line)) {
    std::stringstream rs(line);
    std::vector<double> row;
    while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("zeno_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run(std::string_view command, const fs::path& config, const std::string& out) {
    std::ostringstream log;
    err_.str("");
    return run_command(command, {config, dir_ / out, 1}, log, err_);
  }

  fs::path dir_;
  std::ostringstream err_;
};

TEST_F(CliTest, SimulateWritesTrajectoryAndManifest) {
  const auto cfg = write_config("sim.ini", "rabi1 = 1\nrabi2 = 1.2\nalpha = 0.5\nt_final = 2\nentropy = true\n");
  ASSERT_EQ(run("simulate", cfg, "out"), kExitOk) << err_.str();
  const Csv csv = read_csv(dir_ / "out" / "trajectory.csv");
  const std::vector<std::string> expected{"time", "x1",  "y1",  "z1",  "x2",  "y2",  "z2",  "e11", "e12",
                                          "e13",  "e21", "e22", "e23", "e31", "e32", "e33", "S"};
  EXPECT_EQ(csv.header, expected);
  EXPECT_EQ(csv.rows.size(), 201u);  // dt 1e-4, stride 100
  const json m = read_json(dir_ / "out" / "manifest.json");
  EXPECT_EQ(m["command"], "simulate");
  EXPECT_EQ(m["status"]["state"], "ok");
  EXPECT_DOUBLE_EQ(m["config"]["alpha1"].get<double>(), 0.5);
}

TEST_F(CliTest, FreeRabiOscillation) {
  const auto cfg = write_config("free.ini", "rabi1 = 1.3\nrabi2 = 1\nalpha = 0\nt_final = 10\nstride = 10\n");
  ASSERT_EQ(run("simulate", cfg, "out"), kExitOk) << err_.str();
  const Csv csv = read_csv(dir_ / "out" / "trajectory.csv");
  double worst = 0.0;
  for (const auto& row : csv.rows) worst = std::max(worst, std::abs(row[csv.column("z1")] - std::cos(1.3 * row[0])));
  EXPECT_LT(worst, 1e-8);
}

TEST_F(CliTest, ManifestReplayIsBitIdentical) {
  const auto cfg = write_config("sim.ini", "rabi1 = 1\nrabi2 = 1.2\nalpha = 0.5\nt_final = 3\n");
  ASSERT_EQ(run("simulate", cfg, "first"), kExitOk);
  ASSERT_EQ(run("simulate", dir_ / "first" / "manifest.json", "second"), kExitOk) << err_.str();
  EXPECT_EQ(slurp(dir_ / "first" / "trajectory.csv"), slurp(dir_ / "second" / "trajectory.csv"));
}

TEST_F(CliTest, DivergenceExitCode) {
  const auto cfg = write_config("stiff.ini", "alpha = 1e6\ndt = 1e-2\nt_final = 1\n");
  EXPECT_EQ(run("simulate", cfg, "out"), kExitDiverged);
  const json m = read_json(dir_ / "out" / "manifest.json");
  EXPECT_EQ(m["status"]["state"], "diverged");
}

TEST_F(CliTest, ConfigErrors) {
  EXPECT_EQ(run("simulate", write_config("a.ini", "alhpa = 1\n"), "a"), kExitConfig);
  EXPECT_NE(err_.str().find("alhpa"), std::string::npos);
  EXPECT_EQ(run("simulate", write_config("b.ini", "init = 02\n"), "b"), kExitConfig);
  EXPECT_EQ(run("simulate", write_config("c.ini", "alpha = strong\n"), "c"), kExitConfig);
  EXPECT_EQ(run("simulate", write_config("d.ini", "[extras]\nx = 1\n"), "d"), kExitConfig);
  EXPECT_EQ(run("sweep", write_config("e.ini", "[sweep]\naxis = alpha_both\nvalues =\n"), "e"), kExitConfig);
}

TEST_F(CliTest, FrozenGroundStateHasZeroEntropy) {
  const auto cfg = write_config("frozen.ini", "rabi = 0\nalpha = 1\ninit = 00\nt_final = 5\n");
  ASSERT_EQ(run("entropy", cfg, "out"), kExitOk) << err_.str();
  const Csv csv = read_csv(dir_ / "out" / "entropy.csv");
  EXPECT_EQ(csv.header, (std::vector<std::string>{"time", "S"}));
  for (const auto& row : csv.rows) EXPECT_EQ(row[1], 0.0);
  const json s = read_json(dir_ / "out" / "summary.json");
  EXPECT_EQ(s["max_entropy"].get<double>(), 0.0);
  EXPECT_TRUE(s["period"].is_null());
}

TEST_F(CliTest, EntropySummaryAtStrongCoupling) {
  const auto cfg = write_config("strong.ini", "rabi = 1\nalpha = 3\nt_final = 30\n");
  ASSERT_EQ(run("entropy", cfg, "out"), kExitOk) << err_.str();
  const json s = read_json(dir_ / "out" / "summary.json");
  ASSERT_TRUE(s["saturation"].is_number());
  EXPECT_NEAR(s["saturation"].get<double>(), 0.0377, 0.002);
  EXPECT_NEAR(s["ln2"].get<double>(), std::log(2.0), 1e-15);
}

TEST_F(CliTest, SweepOutputs) {
  const auto cfg = write_config("sweep.ini",
                                "rabi = 1\nt_final = 10\n[sweep]\naxis = alpha_both\nvalues = 0, 0.5, 3\n"
                                "observables = trajectory, entropy, saturation\n");
  ASSERT_EQ(run("sweep", cfg, "out"), kExitOk) << err_.str();
  const json agg = read_json(dir_ / "out" / "aggregate.json");
  EXPECT_EQ(agg["axis"], "alpha_both");
  ASSERT_EQ(agg["records"].size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const json& rec = agg["records"][i];
    EXPECT_EQ(rec["index"], i);
    EXPECT_EQ(rec["status"], "ok");
    const fs::path csv = dir_ / "out" / rec["csv"].get<std::string>();
    EXPECT_TRUE(fs::exists(csv)) << csv;
    EXPECT_EQ(read_csv(csv).header.back(), "S");
  }
  EXPECT_DOUBLE_EQ(agg["records"][1]["value"].get<double>(), 0.5);
}

TEST_F(CliTest, TargetSingleQubit) {
  const auto cfg = write_config("t.ini", "[target]\nmode = single_qubit\na = 0\nb = 0\nc = 1\nd = 0\nlambda = 3\nomega = 1\n");
  ASSERT_EQ(run("target", cfg, "out"), kExitOk) << err_.str();
  const json r = read_json(dir_ / "out" / "report.json");
  EXPECT_TRUE(r["feasible"].get<bool>());
  EXPECT_DOUBLE_EQ(r["alpha"].get<double>(), 6.0);
  const json& relaxed = r["relaxed_from_north_pole"]["bloch"];
  EXPECT_NEAR(relaxed[1].get<double>(), -1.0 / 3.0, 1e-6);
  EXPECT_NEAR(relaxed[2].get<double>(), std::sqrt(8.0) / 3.0, 1e-6);
}

TEST_F(CliTest, TargetDegenerateAndInfeasible) {
  EXPECT_EQ(run("target", write_config("deg.ini", "[target]\na = 1\nc = 1\nlambda = 2\n"), "deg"), kExitTarget);
  EXPECT_EQ(read_json(dir_ / "deg" / "report.json")["error"]["type"], "Degenerate");
  EXPECT_EQ(run("target", write_config("inf.ini", "[target]\nc = 1\nlambda = 0.5\n"), "inf"), kExitTarget);
  EXPECT_EQ(read_json(dir_ / "inf" / "report.json")["error"]["type"], "Infeasible");
}

TEST_F(CliTest, TargetTwoQubit) {
  const auto cfg = write_config("t2.ini", "[target]\nmode = two_qubit\nalpha = 1\nscale = 1\nJ = 1\n");
  ASSERT_EQ(run("target", cfg, "out"), kExitOk) << err_.str();
  const json r = read_json(dir_ / "out" / "report.json");
  EXPECT_TRUE(r["stationarity"]["00"]["stationary"].get<bool>());
  EXPECT_TRUE(r["stationarity"]["11"]["stationary"].get<bool>());
  EXPECT_FALSE(r["stationarity"]["01"]["stationary"].get<bool>());
}

TEST_F(CliTest, VerifyPassesAndCatchesFault) {
  const std::string base = "rabi1 = 1\nrabi2 = 1.2\nalpha = 0.5\nt_final = 5\n[verify]\ndts = 1e-3, 5e-4\ntolerance = 5e-3\n";
  ASSERT_EQ(run("verify", write_config("v.ini", base), "ok"), kExitOk) << err_.str();
  const json v = read_json(dir_ / "ok" / "verify.json");
  EXPECT_TRUE(v["pass"].get<bool>());
  EXPECT_EQ(read_csv(dir_ / "ok" / "verify.csv").header,
            (std::vector<std::string>{"dt", "max_deviation", "time_of_max", "order"}));
  EXPECT_EQ(run("verify", write_config("f.ini", base + "fault = flipped_z1\n"), "bad"), kExitVerify);
}

TEST_F(CliTest, UnknownCommand) {
  const auto cfg = write_config("sim.ini", "t_final = 1\n");
  EXPECT_EQ(run("simulat", cfg, "out"), kExitError);
}

}  // namespace
}  // namespace zeno::app
