// End-to-end driver tests: build → solve → check through the real binary,
// exit-code contract, report determinism, and rejection of mismatched or
// perturbed solutions.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "clrs/bundle.hpp"

#include "helpers.hpp"

namespace {

const std::string kCli = CLRS_CLI_PATH;
const std::string kDir = "/tmp/clrs_cli_test";

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string capture = kDir + "/out.txt";
  const std::string cmd = kCli + " " + args + " > " + capture + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(capture);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

// Value of a `key = value` report line, or empty.
std::string report_value(const std::string& out, const std::string& key) {
  const std::string needle = key + " = ";
  std::istringstream ss(out);
  std::string line;
  while (std::getline(ss, line))
    if (line.rfind(needle, 0) == 0) return line.substr(needle.size());
  return {};
}

// Report text without lines that legitimately vary between runs.
std::string stable_lines(const std::string& out) {
  std::istringstream ss(out);
  std::string line, kept;
  while (std::getline(ss, line)) {
    if (line.rfind("wall_time_seconds = ", 0) == 0) continue;
    if (line.rfind("threads = ", 0) == 0) continue;
    kept += line;
    kept += '\n';
  }
  return kept;
}

}  // namespace

TEST_CASE("driver builds, solves, and checks a kissing bundle", "[cli]") {
  std::filesystem::create_directories(kDir);
  const std::string bundle = kDir + "/kiss.json";
  const std::string solution = kDir + "/kiss_sol.json";

  RunResult build = run("build kissing --n 3 --d 2 -o " + bundle);
  INFO(build.out);
  REQUIRE(build.exit_code == 0);
  CHECK(report_value(build.out, "generator") == "kissing");
  CHECK(!report_value(build.out, "clusters").empty());
  CHECK(!report_value(build.out, "free_variables").empty());
  CHECK(!report_value(build.out, "cluster[0].blocks").empty());
  CHECK(!report_value(build.out, "cluster[0].rows").empty());
  CHECK(!report_value(build.out, "cluster[0].block_sizes").empty());
  const std::string id = report_value(build.out, "bundle_id");
  REQUIRE(id.size() == 16);

  RunResult solve = run("solve " + bundle + " -o " + solution);
  INFO(solve.out);
  REQUIRE(solve.exit_code == 0);
  CHECK(report_value(solve.out, "status") == "Optimal");
  CHECK(report_value(solve.out, "bundle_id") == id);
  // Tolerances echoed into the report as exact decimal strings.
  CHECK(clrs::BigFloat(report_value(solve.out, "gap_tol")) == clrs::BigFloat("1e-30"));
  CHECK(clrs::BigFloat(report_value(solve.out, "primal_tol")) == clrs::BigFloat("1e-30"));
  CHECK(clrs::BigFloat(report_value(solve.out, "dual_tol")) == clrs::BigFloat("1e-30"));
  CHECK(!report_value(solve.out, "wall_time_seconds").empty());
  CHECK(!report_value(solve.out, "iterations").empty());
  const double bound = std::stod(report_value(solve.out, "bound"));
  CHECK(bound > 13.0);
  CHECK(bound < 15.0);

  RunResult check = run("check " + bundle + " " + solution);
  INFO(check.out);
  REQUIRE(check.exit_code == 0);
  CHECK(report_value(check.out, "verdict") == "pass");
  CHECK(std::stoul(report_value(check.out, "identity_points")) == 100);
  CHECK(std::stod(report_value(check.out, "identity_violation")) < 1e-30);

  SECTION("perturbing the solution is detected") {
    clrs::SolutionFile sol = clrs::read_solution(solution);
    clrs_tests::Rng rng(5);
    auto& blk = sol.Y[0].block(0);
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = i; j < blk.cols(); ++j) {
        clrs::BigFloat bump = clrs::BigFloat(rng.next_unit()) * clrs::BigFloat(1e-5);
        blk(i, j) += bump;
        if (i != j) blk(j, i) = blk(i, j);
      }
    const std::string tampered = kDir + "/kiss_sol_bad.json";
    clrs::write_solution(tampered, sol);
    RunResult bad = run("check " + bundle + " " + tampered);
    INFO(bad.out);
    CHECK(bad.exit_code == 1);
    CHECK(report_value(bad.out, "verdict") == "FAIL");
    CHECK(std::stod(report_value(bad.out, "identity_violation")) > 1e-20);
  }

  SECTION("a solution from another bundle is rejected") {
    const std::string bundle_a = kDir + "/kiss_A.json";
    RunResult build_a = run("build kissing --n 3 --d 2 --mode A -o " + bundle_a);
    REQUIRE(build_a.exit_code == 0);
    RunResult reject = run("check " + bundle_a + " " + solution);
    INFO(reject.out);
    CHECK(reject.exit_code == 1);
    CHECK(report_value(reject.out, "verdict").rfind("rejected", 0) == 0);
  }

  SECTION("reports are identical across thread counts") {
    const std::string sol_path = kDir + "/threads_sol.json";
    RunResult r1 = run("solve " + bundle + " --threads 1 -o " + sol_path);
    clrs::SolutionFile a = clrs::read_solution(sol_path);
    RunResult r2 = run("solve " + bundle + " --threads 2 -o " + sol_path);
    clrs::SolutionFile b = clrs::read_solution(sol_path);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(stable_lines(r1.out) != "");
    CHECK(stable_lines(r1.out) == stable_lines(r2.out));
    // Solution payloads must match bit for bit.
    CHECK(clrs::solution_to_string(a) == clrs::solution_to_string(b));
  }
}

TEST_CASE("driver exit codes follow the contract", "[cli]") {
  std::filesystem::create_directories(kDir);
  const std::string bundle = kDir + "/kiss2.json";
  REQUIRE(run("build kissing --n 3 --d 2 -o " + bundle).exit_code == 0);

  SECTION("invalid model parameters are a usage error") {
    RunResult r = run("build kissing --n 3 --d 0 -o " + kDir + "/never.json");
    CHECK(r.exit_code == 64);
  }
  SECTION("unknown flags are a usage error") {
    RunResult r = run("solve --definitely-not-a-flag");
    CHECK(r.exit_code == 64);
  }
  SECTION("iteration starvation exits with the MaxIterations code") {
    RunResult r = run("solve " + bundle + " --max-iter 3 -o " + kDir + "/starved.json");
    CHECK(r.exit_code == 2);
    CHECK(report_value(r.out, "status") == "MaxIterations");
  }
  SECTION("unreadable bundle fails cleanly") {
    RunResult r = run("solve " + kDir + "/missing.json -o " + kDir + "/never.json");
    CHECK(r.exit_code == 1);
  }
}

TEST_CASE("driver builds a packing bundle with structure stats", "[cli]") {
  std::filesystem::create_directories(kDir);
  const std::string bundle = kDir + "/pack.json";
  RunResult build =
      run("build packing --n 2 --radii 0.1,1 --degree 5 --scale 1.35 -o " + bundle);
  INFO(build.out);
  REQUIRE(build.exit_code == 0);
  CHECK(report_value(build.out, "generator") == "packing");
  const std::size_t clusters = std::stoul(report_value(build.out, "clusters"));
  CHECK(clusters >= 4);
  // One stats line per cluster.
  for (std::size_t j = 0; j < clusters; ++j) {
    CHECK(!report_value(build.out, "cluster[" + std::to_string(j) + "].rows").empty());
    CHECK(!report_value(build.out, "cluster[" + std::to_string(j) + "].block_sizes").empty());
  }
  // Round-trip of the emitted file is byte-identical.
  const std::string text = clrs::read_text_file(bundle);
  CHECK(clrs::bundle_to_string(clrs::bundle_from_string(text)) == text);
}
