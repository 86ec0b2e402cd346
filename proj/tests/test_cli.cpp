// Copyright 2026 The ptsem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end checks of the command-line driver: exit codes, the recorded
// usage examples, and the machine-readable output schema.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path =
      fs::temp_directory_path() /
      ("ptsem_cli_out_" + std::to_string(++counter) + ".txt");
  const std::string cmd = std::string("\"") + PTSEM_CLI_PATH + "\" " + args +
                          " > " + out_path.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream os;
  os << in.rdbuf();
  r.out = os.str();
  fs::remove(out_path);
  return r;
}

std::string fixture(const char* name) {
  return (fs::path(PTSEM_FIXTURE_DIR) / name).string();
}

}  // namespace

TEST_CASE("cli: recorded usage examples keep their exit codes") {
  SUBCASE("derivation search over the one-axiom base") {
    const RunResult r = run_cli(
        "derive --base " + fixture("p_rule.base") +
        " --goal r --assume \"(rule (p)(q) => r)\" --assume \"(rule => q)\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: derivable") != std::string::npos);
  }

  SUBCASE("the split pipeline on the recorded input") {
    const RunResult r = run_cli("split transform --arg " +
                                fixture("split_case2.arg") + " --base " +
                                fixture("p_to_q.base"));
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: valid") != std::string::npos);
    CHECK(r.out.find("(or (imp p q) (imp p r))") != std::string::npos);
  }

  SUBCASE("absurdity fails at the empty base") {
    const RunResult r = run_cli("bes check --sequent \"==> bot\"");
    CHECK(r.code == 1);
    CHECK(r.out.find("verdict: refuted") != std::string::npos);
    CHECK(r.out.find("certificate replays: yes") != std::string::npos);
  }
}

TEST_CASE("cli: machine-readable output carries the schema and bounds") {
  SUBCASE("a pooled affirmation") {
    const RunResult r = run_cli(
        "bes check --sequent \"p , (imp p q) ==> q\" --pool-atoms p,q "
        "--pool-level 1 --json");
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["schema"] == "ptsem/v1");
    CHECK(j["command"] == "bes check");
    CHECK(j["verdict"] == "holds");
    CHECK(j["pool"]["rules"].get<std::size_t>() > 0);
    CHECK(j["pool"]["candidates"].is_array());
  }

  SUBCASE("a refutation certificate") {
    const RunResult r = run_cli("bes check --sequent \"==> q\" --json");
    CHECK(r.code == 1);
    const Json j = Json::parse(r.out);
    CHECK(j["verdict"] == "refuted");
    CHECK(j["refutation"]["fails"] == "q");
    CHECK(j["refutation"]["replays"] == true);
  }

  SUBCASE("the substitution search on the recorded counterexample") {
    const RunResult r = run_cli(
        "bes refute-subst --sequent \"(imp p (or q r)) ==> "
        "(or (imp p q) (imp p r))\" --subst \"p:=(or p q),q:=p,r:=q\" "
        "--pool-atoms p,q --pool-level 0 --json");
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["verdict"] == "instance-refuted");
    CHECK(j["substitution"]["p"] == "(or p q)");
    CHECK(j["refutation"]["replays"] == true);
  }

  SUBCASE("an innocuous substitution is not refuted") {
    const RunResult r = run_cli(
        "bes refute-subst --sequent \"p ==> p\" --subst \"p:=(and p p)\" "
        "--pool-atoms p --pool-level 0");
    CHECK(r.code == 1);
  }

  SUBCASE("the split construction emits the recorded term") {
    const RunResult r = run_cli("construct split-k --term " +
                                fixture("split_in.term") + " --base " +
                                fixture("p_to_q.base") + " --json");
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["result"] ==
          "(tag 1 (lam p (wit (apply (rule (p) => q) (slot p)))))");
    CHECK(j["index"] == 1);
    CHECK(j["axiom_used"] == true);
  }
}

TEST_CASE("cli: error and budget exit codes") {
  SUBCASE("usage errors exit 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("derive").code == 2);                      // missing --goal
    CHECK(run_cli("derive --goal r --frobnicate").code == 2);
    CHECK(run_cli("bes check --sequent \"p q\"").code == 2);  // no arrow
    CHECK(run_cli("arg reduce --arg " + fixture("imp_intro.arg") +
                  " --just nosuch")
              .code == 2);
    CHECK(run_cli("derive --goal r --base /nonexistent.base").code == 2);
  }

  SUBCASE("an exhausted search budget exits 3") {
    const RunResult r = run_cli(
        "derive --goal q --assume \"(rule (p) => q)\" --assume "
        "\"(rule (q) => p)\" --cap 0 --json");
    CHECK(r.code == 3);
    const Json j = Json::parse(r.out);
    CHECK(j["verdict"] == "cap-exhausted");
  }

  SUBCASE("help exits 0") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("bes --help").code == 0);
  }
}
