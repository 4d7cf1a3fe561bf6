// End-to-end tests of the command line binary: exit codes, report wording,
// and CSV output, driven through the shell. The binary path and the fixture
// directory come in as compile definitions from the build.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto log = std::filesystem::temp_directory_path() /
                   ("distpot-cli-" + std::to_string(++counter) + ".log");
  const std::string cmd =
      std::string(DISTPOT_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  std::ifstream in(log, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  std::error_code ec;
  std::filesystem::remove(log, ec);
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(DISTPOT_TEST_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("solve reports probe values and converges") {
  const RunResult r = run_cli("solve " + fixture("disk_bulk.json"));
  CHECK_MESSAGE(r.code == 0, r.output);
  CHECK(contains(r.output, "solved: 1 component(s)"));
  CHECK(contains(r.output, "converged"));
  // u(0,0) = -1/8 and u(0.3,0) = 0.09/4 - 1/8 for this problem.
  CHECK(contains(r.output, "-0.125"));
  CHECK(contains(r.output, "-0.1025"));
  std::error_code ec;
  std::filesystem::remove("disk_bulk_out.csv", ec);
}

TEST_CASE("repeated solves write identical csv bytes") {
  const std::string csv = "disk_bulk_out.csv";
  const RunResult first = run_cli("solve " + fixture("disk_bulk.json"));
  REQUIRE(first.code == 0);
  const std::string bytes_a = slurp(csv);
  const RunResult second = run_cli("solve " + fixture("disk_bulk.json"));
  REQUIRE(second.code == 0);
  const std::string bytes_b = slurp(csv);
  CHECK(!bytes_a.empty());
  CHECK(bytes_a == bytes_b);
  CHECK(first.output == second.output);
  CHECK(contains(bytes_a, "x,y,u"));
  std::error_code ec;
  std::filesystem::remove(csv, ec);
}

TEST_CASE("config problems exit with the config code") {
  CHECK(run_cli("solve " + fixture("does_not_exist.json")).code == 2);
  CHECK(contains(run_cli("solve " + fixture("does_not_exist.json")).output,
                 "cannot open"));
  const RunResult malformed = run_cli("solve " + fixture("malformed.json"));
  CHECK(malformed.code == 2);
  CHECK(contains(malformed.output, "config"));
  const RunResult unknown = run_cli("solve " + fixture("unknown_key.json"));
  CHECK(unknown.code == 2);
  CHECK(contains(unknown.output, "resolution"));
}

TEST_CASE("usage errors exit with the config code") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("solve").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("verify --tol-scale -2").code == 2);
}

TEST_CASE("incompatible data is refused with its own exit code") {
  const RunResult solve = run_cli("solve " + fixture("incompatible.json"));
  CHECK(solve.code == 3);
  CHECK(contains(solve.output, "incompatible"));

  const RunResult compat = run_cli("check-compat " + fixture("incompatible.json"));
  CHECK(compat.code == 3);
  CHECK(contains(compat.output, "FAIL"));

  const RunResult good = run_cli("check-compat " + fixture("disk_bulk.json"));
  CHECK(good.code == 0);
  CHECK(contains(good.output, "compatible"));
}

TEST_CASE("verify runs clean and honors the filter") {
  const RunResult filtered = run_cli("verify --filter steklov");
  CHECK_MESSAGE(filtered.code == 0, filtered.output);
  CHECK(contains(filtered.output, "steklov"));
  CHECK(!contains(filtered.output, "newtonian"));
  CHECK(contains(filtered.output, "checks passed"));
}

TEST_CASE("verify fails under an impossible tolerance scale") {
  const RunResult r = run_cli("verify --filter steklov --tol-scale 1e-16");
  CHECK(r.code == 1);
  CHECK(contains(r.output, "FAIL"));
}

TEST_CASE("converge sweeps against the named reference") {
  const RunResult r =
      run_cli("converge " + fixture("converge_bulk.json") + " --sweep N=16,32");
  CHECK_MESSAGE(r.code == 0, r.output);
  CHECK(contains(r.output, "resolution,max_probe_error,max_residual"));
  CHECK(contains(r.output, "16,"));
  CHECK(contains(r.output, "32,"));
}

TEST_CASE("converge without a reference is refused") {
  const RunResult r =
      run_cli("converge " + fixture("no_oracle.json") + " --sweep N=16,32");
  CHECK(r.code == 5);
  CHECK(contains(r.output, "no reference solution"));
}

TEST_CASE("bad sweep text is a config error") {
  const RunResult r =
      run_cli("converge " + fixture("converge_bulk.json") + " --sweep M=1,2");
  CHECK(r.code == 2);
  const RunResult tight =
      run_cli("converge " + fixture("converge_bulk.json") + " --sweep K=4,40");
  CHECK(tight.code == 2);
  CHECK(contains(tight.output, "K < N/2"));
}

TEST_SUITE_END();
