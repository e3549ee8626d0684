// Copyright (c) 2026 torus-greens developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "torus_greens/errors.hpp"

using namespace tg;
using tg::cli::Command;
using tg::cli::parse_args;
using tg::cli::RunConfig;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_args: eval3 contract") {
  const RunConfig rc = parse_args({"eval3", "--s", "2.0", "--lattice",
                                   "1,0,1,0,0,1", "--x", "0.5,0.5,0.5",
                                   "--xi", "0,0,0", "--mode", "ewald"});
  CHECK(rc.command == Command::eval3);
  CHECK(rc.s == cplx(2.0, 0.0));
  CHECK(rc.lattice.size() == 6);
  CHECK(rc.mode == "ewald");
}

TEST_CASE("parse_args: verify contract") {
  const RunConfig rc = parse_args({"verify", "--suite", "lemma2", "--count",
                                   "20", "--seed", "7", "--tol", "1e-9"});
  CHECK(rc.command == Command::verify);
  CHECK(rc.suite == "lemma2");
  CHECK(rc.count == 20);
  CHECK(rc.seed == 7);
  CHECK(rc.tol == 1e-9);
}

TEST_CASE("parse_args rejects bad input") {
  CHECK_THROWS_AS(parse_args({"eval3", "--s", "abc", "--lattice",
                              "1,0,1,0,0,1", "--x", "0.5,0.5,0.5"}),
                  Error);
  CHECK_THROWS_AS(parse_args({"eval3", "--s", "2.0", "--lattice",
                              "1,0,1,0,0,1", "--x", "0.5,0.5,0.5",
                              "--no-such-flag", "3"}),
                  Error);
  CHECK_THROWS_AS(parse_args({"frobnicate"}), Error);
  try {
    parse_args({"eval3", "--s", "2.0"});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UsageError);
  }
}

TEST_CASE("complex s parses re,im") {
  const RunConfig rc = parse_args({"eval3", "--s", "0.75,0.3", "--lattice",
                                   "1,0,1,0,0,1", "--x", "0.2,0.2,0.2"});
  CHECK(rc.s == cplx(0.75, 0.3));
}

TEST_CASE("run: eval3 writes series JSON and exit codes map") {
  const char* out = "cli_test_eval3.json";
  RunConfig rc = parse_args({"eval3", "--s", "2.0", "--lattice",
                             "1,0,1,0,0,1", "--x", "0.5,0.5,0.5",
                             "--output-path", out});
  CHECK(tg::cli::run(rc) == 0);
  const std::string txt = slurp(out);
  CHECK(txt.find("\"value\"") != std::string::npos);
  CHECK(txt.find("\"strategy\":\"ewald\"") != std::string::npos);
  std::remove(out);
}

TEST_CASE("run: evaluator errors map to exit 3 via main_entry semantics") {
  // singular point: x on a lattice point
  RunConfig rc = parse_args({"eval3", "--s", "2.0", "--lattice",
                             "1,0,1,0,0,1", "--x", "0,0,0"});
  bool threw = false;
  try {
    tg::cli::run(rc);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.kind() == ErrorKind::SingularPoint);
  }
  CHECK(threw);
}

TEST_CASE("run: verify suite output is byte-identical across jobs") {
  const char* out1 = "cli_suite_j1.json";
  const char* out4 = "cli_suite_j4.json";
  RunConfig a = parse_args({"verify", "--suite", "quasiperiodicity", "--count",
                            "3", "--seed", "5", "--tol", "1e-10", "--jobs",
                            "1", "--output-path", out1});
  RunConfig b = parse_args({"verify", "--suite", "quasiperiodicity", "--count",
                            "3", "--seed", "5", "--tol", "1e-10", "--jobs",
                            "4", "--output-path", out4});
  CHECK(tg::cli::run(a) == 0);
  CHECK(tg::cli::run(b) == 0);
  CHECK(slurp(out1) == slurp(out4));
  std::remove(out1);
  std::remove(out4);
}

TEST_CASE("run: csv output for suites") {
  const char* out = "cli_suite.csv";
  RunConfig rc = parse_args({"verify", "--suite", "modular2d", "--count", "2",
                             "--seed", "3", "--tol", "1e-9", "--output",
                             "csv", "--output-path", out});
  CHECK(tg::cli::run(rc) == 0);
  const std::string txt = slurp(out);
  CHECK(txt.rfind("name,lhs_re", 0) == 0);
  std::remove(out);
}

TEST_CASE("TORUS_GREENS_TOL sets the default tolerance; flag overrides") {
  setenv("TORUS_GREENS_TOL", "1e-7", 1);
  const RunConfig rc = parse_args({"eval3", "--s", "2.0", "--lattice",
                                   "1,0,1,0,0,1", "--x", "0.5,0.5,0.5"});
  CHECK(rc.tol == 1e-7);
  const RunConfig rc2 = parse_args({"eval3", "--s", "2.0", "--lattice",
                                    "1,0,1,0,0,1", "--x", "0.5,0.5,0.5",
                                    "--tol", "1e-9"});
  CHECK(rc2.tol == 1e-9);
  unsetenv("TORUS_GREENS_TOL");
}

TEST_CASE("help is available per command") {
  for (const char* cmd :
       {"eval2", "eval3", "green", "icont", "verify", "limit", "monopole"}) {
    CAPTURE(cmd);
    const RunConfig rc = parse_args({cmd, "--help"});
    CHECK(rc.help_requested);
    CHECK(rc.help_text.find("--output") != std::string::npos);
  }
  const RunConfig rc = parse_args({"eval3", "--help"});
  CHECK(rc.help_text.find("--lattice") != std::string::npos);
}

TEST_CASE("monopole command writes the field CSV") {
  const char* out = "cli_field.csv";
  RunConfig rc = parse_args({"monopole", "--m", "2", "--grid-re", "1,1.4",
                             "--grid-im", "1,1.4", "--grid-y", "1,1.4",
                             "--grid-n", "5", "--output-path", out});
  CHECK(tg::cli::run(rc) == 0);
  const std::string txt = slurp(out);
  CHECK(txt.rfind("#", 0) == 0);
  CHECK(txt.find("re_z,im_z,y,re_phi,im_phi,re_Az,im_Az") !=
        std::string::npos);
  std::remove(out);
}

TEST_CASE("identical RunConfig gives byte-identical output") {
  const char* o1 = "cli_det_1.json";
  const char* o2 = "cli_det_2.json";
  for (const char* o : {o1, o2}) {
    RunConfig rc = parse_args({"eval3", "--s", "0.75,0.3", "--lattice",
                               "1,0.3,1.2,0.1,-0.2,0.9", "--x",
                               "0.31,0.17,0.44", "--xi", "0.23,0.61,0.38",
                               "--output-path", o});
    CHECK(tg::cli::run(rc) == 0);
  }
  CHECK(slurp(o1) == slurp(o2));
  std::remove(o1);
  std::remove(o2);
}
