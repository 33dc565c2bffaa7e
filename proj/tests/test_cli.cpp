#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(HSPLAB_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// strip the wall_ms column (last CSV field), the only nondeterministic one
std::string strip_wall(const std::string& text) {
  std::stringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      size_t comma = line.find_last_of(',');
      if (comma != std::string::npos) line.resize(comma);
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("cli run: golden Z8 instance") {
  RunResult r = run_cli("run --group Z8 --hidden 4 --alg find-collision");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["schema"] == 1);
  CHECK(j["outcome"] == "collision");
  CHECK(j["queries"] == 6);
  CHECK(j["collision"] == nlohmann::json({0, 4}));
  CHECK(j["bound_ok"] == true);
  CHECK(j["outcome_ok"] == true);
}

TEST_CASE("cli run: injective detect and csv format") {
  RunResult r = run_cli(
      "run --group Z2xZ2 --hidden trivial --alg detect-abelian --format csv");
  CHECK(r.exit_code == 0);
  std::stringstream ss(r.output);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  CHECK(header ==
        "group,n,m,algorithm,outcome,queries,bound,bound_ratio,kappa,seed,"
        "wall_ms");
  CHECK(row.rfind("Z2xZ2,4,1,detect-abelian,injective,", 0) == 0);
}

TEST_CASE("cli run: S4 bicrossed find-subgroup") {
  RunResult r = run_cli(
      "run --group S4 --hidden \"perm:(1 2 3 4)\" --alg find-subgroup");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["outcome"] == "generators");
  CHECK(j["m"] == 4);
  CHECK(j["hypothesis_certified"] == true);
}

TEST_CASE("cli output is deterministic apart from wall time") {
  const std::string args =
      "run --group Z4xZ6 --hidden 6 --alg find-collision --format csv";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(strip_wall(a.output) == strip_wall(b.output));
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("run --group Zx --hidden trivial --alg find-collision")
            .exit_code == 4);
  CHECK(run_cli("run --group Z8 --hidden trivial --alg nope").exit_code == 4);
  CHECK(run_cli("run --group S6 --hidden trivial --alg find-collision")
            .exit_code == 5);
  // H1 not contained in H is an instance-construction error
  CHECK(run_cli("run --group Z8 --hidden 4 --known 2 --alg find-new-collision")
            .exit_code == 4);
}

TEST_CASE("cli sweep: small abelian family is clean") {
  RunResult r = run_cli(
      "sweep --family all-abelian --max-n 16 --algs find-collision "
      "detect-abelian");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("failures=0") != std::string::npos);
  std::stringstream ss(r.output);
  std::string header;
  std::getline(ss, header);
  CHECK(header ==
        "group,n,m,algorithm,outcome,queries,bound,bound_ratio,kappa,seed,"
        "wall_ms");
}

TEST_CASE("cli sweep: subgroup order listing for A4") {
  RunResult r = run_cli(
      "sweep --family list --groups A4 --list-subgroup-orders");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "A4,1,2,3,4,12\n");
}

TEST_CASE("cli verify-pairs") {
  RunResult ab = run_cli(
      "verify-pairs --family all-abelian --max-n 64 --construction "
      "abelian-recursive");
  CHECK(ab.exit_code == 0);
  CHECK(ab.output.rfind("OK ", 0) == 0);

  RunResult rnd = run_cli(
      "verify-pairs --family list --groups S4 D8 Q8 --construction randomized "
      "--seeds 5");
  CHECK(rnd.exit_code == 0);

  RunResult empty = run_cli("verify-pairs --family list --construction best");
  CHECK(empty.exit_code == 0);
}

TEST_CASE("cli plotdata aggregates a sweep") {
  std::string csv = "/tmp/hsplab_test_sweep.csv";
  RunResult sw = run_cli(
      "sweep --family all-abelian --max-n 12 --algs find-collision --out " + csv);
  REQUIRE(sw.exit_code == 0);
  RunResult pd = run_cli("plotdata --in " + csv);
  CHECK(pd.exit_code == 0);
  CHECK(pd.output.rfind("n_over_m,mean_queries,mean_bound\n", 0) == 0);
  std::remove(csv.c_str());
}
