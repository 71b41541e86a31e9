// Drives the installed command-line binary end to end: argument handling,
// exit-code contract, and the artifact files each command writes.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

struct CliResult {
  int code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path log = fs::temp_directory_path() / ("nlslab_cli_log_" +
                                                     std::to_string(counter++) + ".txt");
  const std::string cmd =
      std::string("\"") + NLSLAB_CLI_PATH + "\" " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = slurp(log);
  fs::remove(log);
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, HelpExitsCleanlyAndNamesTheCommands) {
  CliResult r = run_cli("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.output.find("verify"), std::string::npos);
  EXPECT_NE(r.output.find("simulate"), std::string::npos);
  EXPECT_NE(r.output.find("lifespan"), std::string::npos);
}

TEST(Cli, ArgumentAndPresetErrorsUseTheConfigExitCode) {
  EXPECT_EQ(run_cli("verify --bogus-flag").code, 2);
  EXPECT_EQ(run_cli("verify --preset nope").code, 2);
  EXPECT_EQ(run_cli("").code, 2) << "a subcommand is required";
}

TEST(Cli, VerifySingleIdWritesOneRowAndAManifest) {
  const fs::path dir = fresh_dir("nlslab_cli_verify");
  CliResult r = run_cli("verify --only EQNORM --samples 3 --sizes 8,12 --seed 5 --out " +
                        dir.string());
  EXPECT_EQ(r.code, 0) << r.output;
  const std::string csv = slurp(dir / "registry.csv");
  EXPECT_EQ(count_lines(csv), 2) << "header plus exactly one id row";
  EXPECT_EQ(csv.substr(0, 3), "id,");
  EXPECT_NE(csv.find("EQNORM"), std::string::npos);

  nlohmann::json m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m.at("command"), "verify");
  EXPECT_EQ(m.at("seed"), 5);
  EXPECT_EQ(m.at("outputs").at(0), "registry.csv");
  EXPECT_EQ(m.at("content_hash").get<std::string>().size(), 64u);
  EXPECT_EQ(m.at("config").at("seed"), 5);
  EXPECT_TRUE(m.at("constants").at("C_hat").get<double>() >= 1.0);
  EXPECT_EQ(m.at("summary").at("failed"), 0);
}

TEST(Cli, VerifyRejectsUnknownRegistryIds) {
  const fs::path dir = fresh_dir("nlslab_cli_badid");
  CliResult r = run_cli("verify --only NOSUCH --out " + dir.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("NOSUCH"), std::string::npos);
}

TEST(Cli, MalformedConfigFilesUseTheConfigExitCode) {
  const fs::path dir = fresh_dir("nlslab_cli_cfg");
  const fs::path bad_type = dir / "bad_type.json";
  const fs::path not_json = dir / "not_json.json";
  std::ofstream(bad_type) << R"({"K": "many"})";
  std::ofstream(not_json) << "{no";
  EXPECT_EQ(run_cli("simulate --config " + bad_type.string()).code, 2);
  EXPECT_EQ(run_cli("simulate --config " + not_json.string()).code, 2);
  EXPECT_EQ(run_cli("simulate --config " + (dir / "absent.json").string()).code, 2);
}

TEST(Cli, SimulatePlaneWaveWritesTrajectoryAndCertificates) {
  const fs::path dir = fresh_dir("nlslab_cli_sim");
  CliResult r = run_cli("simulate --preset plane_wave --out " + dir.string());
  EXPECT_EQ(r.code, 0) << r.output;

  const std::string traj = slurp(dir / "trajectory.csv");
  EXPECT_EQ(traj.substr(0, 2), "t,");
  EXPECT_GT(count_lines(traj), 10);

  const std::string certs = slurp(dir / "certificates.csv");
  EXPECT_EQ(certs.substr(0, 5), "kind,");
  EXPECT_NE(certs.find("basic"), std::string::npos);
  EXPECT_NE(certs.find("growth"), std::string::npos);

  nlohmann::json m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m.at("command"), "simulate");
  EXPECT_FALSE(m.at("summary").at("aborted").get<bool>());
  EXPECT_TRUE(m.at("summary").at("certificates").at("basic").at("holds").get<bool>());
  EXPECT_EQ(m.at("summary").at("data").at("kind"), "plane_wave");
}

TEST(Cli, LifespanWritesOneRowPerCell) {
  const fs::path dir = fresh_dir("nlslab_cli_life");
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"K": 16, "pad_factor": 4, "eps": 0.2,
                            "data": {"j_min": 8, "j_max": 12},
                            "solver": {"dt": 1e-3}})";
  CliResult r = run_cli("lifespan --config " + cfg.string() + " --out " + dir.string());
  EXPECT_EQ(r.code, 0) << r.output;

  const std::string csv = slurp(dir / "lifespan.csv");
  EXPECT_EQ(count_lines(csv), 2) << "header plus the single scan cell";
  EXPECT_NE(csv.find("t_good"), std::string::npos);

  nlohmann::json m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m.at("command"), "lifespan");
  EXPECT_TRUE(m.at("summary").at("all_pass").get<bool>());
  EXPECT_EQ(m.at("summary").at("cells"), 1);
}
