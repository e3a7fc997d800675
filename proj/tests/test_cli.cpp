#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end checks against the installed binary. The build passes the
// binary's path in CAUSALVOTE_CLI_PATH.

namespace {

struct CliResult {
  int exit_code;
  std::string stdout_text;
};

CliResult run_cli(const std::string& args) {
  const std::string out_path = "cli_stdout.tmp";
  const std::string cmd = std::string(CAUSALVOTE_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> cli_stderr.tmp";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

nlohmann::json parse(const CliResult& r) { return nlohmann::json::parse(r.stdout_text); }

}  // namespace

TEST_CASE("describe prints the routed graph") {
  const auto r = run_cli("describe --n 5");
  CHECK(r.exit_code == 0);
  const auto j = parse(r);
  CHECK(j["nodes"].size() == 8);
  CHECK(j["allowed_assignments"] == 964);

  bool found_af = false;
  for (const auto& a : j["arrows"])
    if (a["source"] == "A1" && a["target"] == "F") {
      found_af = true;
      for (const auto& s : a["sector_dims"]) {
        const int l_pr = s["sector"][1];
        CHECK(s["dim"] == (l_pr == 1 ? 4 : 1));
      }
    }
  CHECK(found_af);
}

TEST_CASE("describe honors the party count") {
  const auto r = run_cli("describe --n 7");
  CHECK(r.exit_code == 0);
  CHECK(parse(r)["threshold"] == 4);
}

TEST_CASE("validate passes on the standard model") {
  const auto r = run_cli("validate --n 5 --parallelism 2 --seed 1");
  CHECK(r.exit_code == 0);
  const auto j = parse(r);
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() == 6);
  std::size_t classified = 0;
  for (const auto& c : j["checks"]) {
    CHECK(c["pass"] == true);
    if (c["check"] == "scenario-partition")
      classified = c["lost"].get<std::size_t>() +
                   c["chancellor"].get<std::size_t>() +
                   c["chancellor_president"].get<std::size_t>();
  }
  CHECK(classified == 1048576);
}

TEST_CASE("validate fails on the mutated model") {
  const auto r = run_cli("validate --n 5 --mutate drop-majority-recheck");
  CHECK(r.exit_code == 1);
  const auto j = parse(r);
  CHECK(j["pass"] == false);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("validate --mutate no-such-mutation").exit_code == 2);
  CHECK(run_cli("describe --n 4").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("validate --parallelism 0").exit_code == 2);
  // exhaustive verification is refused, not attempted, beyond small n
  CHECK(run_cli("validate --n 7").exit_code == 2);
}

TEST_CASE("game reproduces both probabilities") {
  const auto r = run_cli("game --n 5");
  CHECK(r.exit_code == 0);
  const auto j = parse(r);
  CHECK(j["process"]["configs"] == 40);
  CHECK(j["process"]["probability"] == "1/1");
  CHECK(j["dco"]["orders"] == 120);
  CHECK(j["dco"]["probability"] == "3/4");
  CHECK(!j.contains("traces"));
}

TEST_CASE("game traces and file output") {
  const auto r = run_cli("game --trace --output game_report.tmp.json");
  CHECK(r.exit_code == 0);
  std::ifstream in("game_report.tmp.json");
  REQUIRE(in.good());
  const auto j = nlohmann::json::parse(in);
  CHECK(j["traces"].size() == 40);
  std::remove("game_report.tmp.json");
}

TEST_CASE("json reports are independent of the parallelism degree") {
  const auto one = run_cli("validate --parallelism 1");
  const auto four = run_cli("validate --parallelism 4");
  CHECK(one.exit_code == 0);
  CHECK(four.exit_code == 0);
  CHECK(one.stdout_text == four.stdout_text);
}
