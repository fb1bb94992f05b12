#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

// Drives the installed command-line binary end to end.  The build passes the
// binary's location in QUBE_CLI_PATH.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // captured stdout
};

// Runs the binary through the shell with stderr discarded.  env_prefix lets a
// test control the tolerance environment variable; by default it is cleared
// so the surrounding environment cannot skew results.
RunResult run_cli(const std::string& args,
                  const std::string& env_prefix = "env -u QUBE_TOLERANCE") {
  const std::string command =
      env_prefix + " " + std::string(QUBE_CLI_PATH) + " " + args +
      " 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.output.append(buffer, n);
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli: passing checks exit zero with a readable report") {
  const RunResult result = run_cli("check-cuts");
  REQUIRE(result.exit_code == 0);
  REQUIRE(contains(result.output, "[PASS]"));
  REQUIRE(contains(result.output, "npt A:BCD"));
  REQUIRE(contains(result.output, "verdict: pass"));

  // Same invocation, same bytes.
  REQUIRE(run_cli("check-cuts").output == result.output);
}

TEST_CASE("cli: the remaining verification subcommands succeed") {
  REQUIRE(run_cli("check-invariance").exit_code == 0);
  REQUIRE(run_cli("expansion-check").exit_code == 0);
  REQUIRE(run_cli("teleport-demo").exit_code == 0);
  const RunResult qudit = run_cli("qudit-suite --d 3");
  REQUIRE(qudit.exit_code == 0);
  REQUIRE(contains(qudit.output, "qudit d=3"));
  const RunResult superadd = run_cli("superadditivity");
  REQUIRE(superadd.exit_code == 0);
  REQUIRE(contains(superadd.output, "superadditivity ablation drop-B"));
}

TEST_CASE("cli: help and version") {
  const RunResult help = run_cli("--help");
  REQUIRE(help.exit_code == 0);
  REQUIRE(contains(help.output, "check-cuts"));
  REQUIRE(contains(help.output, "unlock"));
  const RunResult version = run_cli("--version");
  REQUIRE(version.exit_code == 0);
  REQUIRE(contains(version.output, "1.0.0"));
}

TEST_CASE("cli: usage errors exit with code two") {
  REQUIRE(run_cli("no-such-command").exit_code == 2);
  REQUIRE(run_cli("").exit_code == 2);                   // subcommand required
  REQUIRE(run_cli("unlock").exit_code == 2);             // --merge required
  REQUIRE(run_cli("unlock --merge CDE").exit_code == 2); // not a pair
  REQUIRE(run_cli("unlock --merge CC").exit_code == 2);  // not distinct
  REQUIRE(run_cli("qudit-suite --d 7").exit_code == 2);  // out of range
  REQUIRE(run_cli("check-cuts --format yaml").exit_code == 2);
  REQUIRE(run_cli("check-cuts --tolerance -1").exit_code == 2);
  // Valid flags, impossible request: the diagonal pairing at d = 3.
  REQUIRE(run_cli("unlock --d 3 --merge AD").exit_code == 2);
}

TEST_CASE("cli: unlock emits one record per branch plus a summary") {
  const RunResult result = run_cli("unlock --merge CD --format json");
  REQUIRE(result.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(result.output);
  REQUIRE(doc.at("artifact_version") == "1.0.0");
  REQUIRE(doc.at("command") == "unlock --merge CD --d 2");
  REQUIRE(doc.at("verdict") == "pass");

  int branch_records = 0;
  bool summary_seen = false;
  for (const auto& record : doc.at("records")) {
    const std::string name = record.at("name");
    if (name.rfind("unlock merged=CD branch", 0) == 0) {
      branch_records += 1;
      REQUIRE(std::abs(record.at("values").at("fidelity").get<double>() -
                       1.0) <= 1e-9);
      REQUIRE(std::abs(record.at("values").at("probability").get<double>() -
                       0.25) <= 1e-10);
    }
    if (name == "unlock merged=CD summary") summary_seen = true;
  }
  REQUIRE(branch_records == 4);
  REQUIRE(summary_seen);

  // The merged pair is canonicalized, so spelling variants agree byte for
  // byte.
  REQUIRE(run_cli("unlock --merge d,c --format json").output == result.output);
}

TEST_CASE("cli: seeded demos are reproducible") {
  const RunResult first = run_cli("unlock --merge CD --seed 7");
  REQUIRE(first.exit_code == 0);
  REQUIRE(contains(first.output, "sampled branch"));
  REQUIRE(run_cli("unlock --merge CD --seed 7").output == first.output);
  REQUIRE(run_cli("superadditivity --seed 3").exit_code == 0);
}

TEST_CASE("cli: tolerances resolve from environment then flags") {
  // A blanket 0.5 makes the NPT margin unreachable: exit reports failure.
  const RunResult loose = run_cli("check-cuts", "env QUBE_TOLERANCE=0.5");
  REQUIRE(loose.exit_code == 1);
  REQUIRE(contains(loose.output, "[FAIL]"));
  REQUIRE(contains(loose.output, "verdict: fail"));

  // A specific flag overrides the environment for its own check family.
  const RunResult restored = run_cli("check-cuts --npt-tolerance 1e-6",
                                     "env QUBE_TOLERANCE=0.5");
  REQUIRE(restored.exit_code == 0);

  // Garbage in the environment is a usage error.
  REQUIRE(run_cli("check-cuts", "env QUBE_TOLERANCE=nonsense").exit_code == 2);
}

TEST_CASE("cli: the full report passes in json form") {
  const RunResult result = run_cli("full-report --format json");
  REQUIRE(result.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(result.output);
  REQUIRE(doc.at("verdict") == "pass");
  REQUIRE(doc.at("records").size() > 50);
}
