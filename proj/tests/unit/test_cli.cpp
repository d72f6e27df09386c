#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "gridmaint/caseio.hpp"

namespace fs = std::filesystem;
using gridmaint::read_text_file;
using gridmaint::write_text_file;

namespace {

const char* kRld = R"({"components":[
{"component":"G1","shape_mu":1.5,"scale_lambda":4,"t_obs":0},
{"component":"G2","non_degrading":true},
{"component":"L1","shape_mu":2.0,"scale_lambda":4,"t_obs":0},
{"component":"L2","non_degrading":true},
{"component":"L3","non_degrading":true}]})";

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("gridmaint_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    write_text_file((dir / "cfg.json").string(), R"({"horizon_days":2,"hours_per_day":4})");
    write_text_file((dir / "rld.json").string(), kRld);
  }
  ~Workspace() { fs::remove_all(dir); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(GRIDMAINT_CLI) + " " + args + " --case " GRIDMAINT_FIXTURE_DIR
                            "/toy3.m --config " + (dir / "cfg.json").string() + " --rld " +
                            (dir / "rld.json").string() + " --quiet > " + (dir / "log.txt").string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }
  std::string out(const std::string& sub) const { return (dir / sub).string(); }
};

}  // namespace

TEST_CASE("plan writes reproducible artifacts") {
  Workspace w;
  REQUIRE(w.run("plan --scenarios 4 --seed 3 --out " + w.out("a")) == 0);
  REQUIRE(w.run("plan --scenarios 4 --seed 3 --out " + w.out("b")) == 0);
  const auto sa = read_text_file(w.out("a/schedule.csv"));
  CHECK(sa == read_text_file(w.out("b/schedule.csv")));
  CHECK(read_text_file(w.out("a/scenarios.csv")) == read_text_file(w.out("b/scenarios.csv")));
  CHECK(sa.rfind("# config_hash ", 0) == 0);
  CHECK(sa.find("G1,") != std::string::npos);
  const auto report = read_text_file(w.out("a/plan_report.json"));
  CHECK(report.find("\"config_hash\"") != std::string::npos);
  CHECK(report.find("\"optimal\"") != std::string::npos);
  CHECK(fs::exists(w.out("a/cuts.log")));

  REQUIRE(w.run("evaluate --test-scenarios 20 --schedule " + w.out("a/schedule.csv") + " --out " + w.out("a")) == 0);
  CHECK(read_text_file(w.out("a/evaluation.json")).find("\"config_hash\"") != std::string::npos);
  const auto cmp = read_text_file(w.out("a/comparison.csv"));
  CHECK(cmp.rfind("# config_hash ", 0) == 0);
  CHECK(fs::exists(w.out("a/deterministic_schedule.csv")));
}

TEST_CASE("different seeds give different scenarios") {
  Workspace w;
  REQUIRE(w.run("plan --scenarios 6 --seed 3 --out " + w.out("a")) == 0);
  REQUIRE(w.run("plan --scenarios 6 --seed 4 --out " + w.out("b")) == 0);
  CHECK(read_text_file(w.out("a/scenarios.csv")) != read_text_file(w.out("b/scenarios.csv")));
}

TEST_CASE("usage errors") {
  Workspace w;
  CHECK(w.run("plan --cuts optKT++ --single-cut --out " + w.out("a")) == 2);
  CHECK(w.run("saa --M 1 --out " + w.out("a")) == 2);
  CHECK(w.run("plan --cuts bogus --out " + w.out("a")) == 2);
  CHECK(w.run("plan --no-such-flag") == 2);
}

TEST_CASE("empty schedule is rejected") {
  Workspace w;
  write_text_file(w.out("empty.csv"), "");
  CHECK(w.run("evaluate --schedule " + w.out("empty.csv") + " --out " + w.out("a")) != 0);
  CHECK_FALSE(fs::exists(w.out("a/evaluation.json")));
}

TEST_CASE("flow preprocessing") {
  Workspace w;
  REQUIRE(w.run("preprocess --flow-mode III --out " + w.out("a")) == 0);
  CHECK(read_text_file(w.out("a/flow_redundancy.csv")).find("config_hash") != std::string::npos);
}
