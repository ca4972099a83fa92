// End-to-end checks of the command-line tool: exit codes and byte-identical output.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifdef RESONANT_CLI_PATH

namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(RESONANT_SOURCE_DIR) / "configs";

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + RESONANT_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("resonant_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_config(const std::string& text) {
    const auto p = dir_ / "run.ini";
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ScanWritesAllFiles) {
  const auto out = dir_ / "vac.csv";
  EXPECT_EQ(run("scan --config " + (kConfigs / "vacuum_zero_T.ini").string() + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out));
  EXPECT_TRUE(fs::exists(dir_ / "vac.slopes.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "vac.summary.json"));
}

TEST_F(Cli, IdenticalRunsAreByteIdentical) {
  const std::string cfg = (kConfigs / "electrolyte_zero_T.ini").string();
  ASSERT_EQ(run("scan --config " + cfg + " --out " + (dir_ / "a.csv").string()), 0);
  ASSERT_EQ(run("scan --config " + cfg + " --threads 3 --out " + (dir_ / "b.csv").string()), 0);
  const std::string a = slurp(dir_ / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b.csv"));
}

TEST_F(Cli, JsonFormat) {
  const auto out = dir_ / "vac.json";
  ASSERT_EQ(run("scan --config " + (kConfigs / "vacuum_zero_T.ini").string() + " --format json --out " +
                out.string()),
            0);
  EXPECT_NE(slurp(out).find("\"config_hash\""), std::string::npos);
}

TEST_F(Cli, ConfigErrorExitsTwo) {
  EXPECT_EQ(run("scan --config " + write_config("[run]\nscenario = nonsense\n")), 2);
  EXPECT_EQ(run("scan"), 2);
  EXPECT_EQ(run("media-report --config " + (kConfigs / "vacuum_zero_T.ini").string()), 2);
}

TEST_F(Cli, UnwritableOutputExitsFour) {
  EXPECT_EQ(run("scan --config " + (kConfigs / "vacuum_zero_T.ini").string() + " --out /nonexistent/dir/x.csv"), 4);
}

TEST_F(Cli, NonConvergenceExitsThree) {
  const std::string text =
      "[run]\nscenario = vacuum_zero_T\nrho_min_nm = 1\nrho_max_nm = 10\nrel_tol = 1e-14\nmax_evals = 64\n"
      "[atom]\nalpha_static_A3 = 10\nomega0_eV = 10\n";
  const auto out = dir_ / "nc.csv";
  EXPECT_EQ(run("scan --config " + write_config(text) + " --out " + out.string()), 3);
  EXPECT_TRUE(fs::exists(out));
}

TEST_F(Cli, OtherSubcommands) {
  EXPECT_EQ(run("media-report --config " + (kConfigs / "electrolyte_zero_T.ini").string() + " --out " +
                (dir_ / "m.json").string()),
            0);
  EXPECT_NE(slurp(dir_ / "m.json").find("omega_p_ionic_rad_s"), std::string::npos);
  EXPECT_EQ(run("modes --config " + (kConfigs / "modes.ini").string() + " --out " + (dir_ / "modes.csv").string()), 0);
  EXPECT_EQ(run("compare-asymptotes --config " + (kConfigs / "electrolyte_zero_T.ini").string() + " --out " +
                (dir_ / "cmp.csv").string()),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "cmp.csv"));
}

#endif
