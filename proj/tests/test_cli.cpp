#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "learnsim/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = learnsim::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string config(const char* name) { return (fs::path(LEARNSIM_CONFIG_DIR) / name).string(); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "learnsim_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int shell(const std::string& args) {
  const std::string cmd = std::string("\"") + LEARNSIM_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("replicate-pr1 writes deterministic files") {
  const auto csv = scratch("pr1.csv");
  const auto svg = scratch("pr1.svg");
  auto r = cli({"replicate-pr1", "--csv", csv.string(), "--svg", svg.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("t=1900") != std::string::npos);
  const std::string first = slurp(csv);
  CHECK(first.rfind("t,Z1,Z2,Z,r,P,F,Pr,segment\n", 0) == 0);
  CHECK(slurp(svg).find("data-channel=\"Z2\"") != std::string::npos);
  CHECK(cli({"replicate-pr1", "--csv", csv.string()}).code == 0);
  CHECK(slurp(csv) == first);
}

TEST_CASE("run subcommand") {
  const auto csv = scratch("run.csv");
  CHECK(cli({"run", "--config", config("three_category_rk4.json"), "--csv", csv.string()}).code == 0);
  CHECK(slurp(csv).rfind("t,Z1,Z2,Z3,Z,", 0) == 0);
  const auto svg = scratch("run.svg");
  CHECK(cli({"run", "--config", config("pr1.json"), "--svg", svg.string(), "--channels", "Z1,Pr"}).code == 0);
  CHECK(slurp(svg).find("data-channel=\"Pr\"") != std::string::npos);

  auto missing = cli({"run", "--config", "/nonexistent/missing.json"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  const auto bad = scratch("bad.json");
  std::ofstream(bad) << slurp(config("pr1.json")).replace(slurp(config("pr1.json")).find("5e-5"), 4, "0.01");
  auto invalid = cli({"run", "--config", bad.string()});
  CHECK(invalid.code == 1);
  CHECK(invalid.err.find("strictly decreasing") != std::string::npos);

  CHECK(cli({"run", "--config", config("pr1.json"), "--csv", "/nonexistent/dir/out.csv"}).code == 2);
  CHECK(cli({"run", "--config", config("pr1.json"), "--svg", scratch("q.svg").string(), "--channels", "Q"}).code == 1);
}

TEST_CASE("study subcommands") {
  auto breaks = cli({"breaks", "--config", config("pr1.json"), "--tp", "20,100"});
  CHECK(breaks.code == 0);
  CHECK(breaks.out.rfind("Tp,Z,Pr,mean_lesson_r,status\n", 0) == 0);
  CHECK(breaks.out.find("\n20,69.50382362") != std::string::npos);

  CHECK(cli({"breaks", "--config", config("pr1.json"), "--tp", "-3"}).code == 1);

  auto sweep = cli({"sweep", "--config", config("pr1.json"), "--param", "gamma1", "--values", "0.001,0.002"});
  CHECK(sweep.code == 0);
  CHECK(sweep.out.find("0.002") != std::string::npos);

  auto unknown = cli({"sweep", "--config", config("pr1.json"), "--param", "gamma9", "--values", "1"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("unknown parameter path") != std::string::npos);

  auto opt = cli({"optimize-u", "--config", config("pr1.json"), "--min", "1", "--max", "40", "--grid", "5",
                  "--objective", "pr"});
  CHECK(opt.code == 0);
  CHECK(opt.out.rfind("U*=1 ", 0) == 0);
  CHECK(cli({"optimize-u", "--config", config("pr1.json"), "--min", "4", "--max", "1", "--grid", "5"}).code == 1);
  CHECK(cli({"optimize-u", "--config", config("pr1.json"), "--min", "1", "--max", "4", "--grid", "3",
             "--objective", "q"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"run"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("exit codes of the installed binary") {
  CHECK(shell("replicate-pr1") == 0);
  CHECK(shell("run --config /nonexistent/missing.json") == 2);
  CHECK(shell("sweep --config \"" + config("pr1.json") + "\" --param gamma9 --values 1") == 1);
}
