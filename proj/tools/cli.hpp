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

#ifndef TORUS_GREENS_CLI_HPP
#define TORUS_GREENS_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include "torus_greens/lattice_sum.hpp"

namespace tg::cli {

enum class Command { eval2, eval3, green, icont, verify, limit, monopole };
enum class OutputFormat { json, csv };

struct RunConfig {
  Command command = Command::eval3;
  OutputFormat output_format = OutputFormat::json;
  std::optional<std::string> output_path;
  int jobs = 1;
  std::uint64_t seed = 1;

  // evaluator parameters (validated per command)
  cplx s{2.0, 0.0};
  std::vector<double> lattice;   // 3 (2D) or 6 (3D) entries
  std::vector<double> metric;    // 4 or 9 entries, row-major
  std::vector<double> x;
  std::vector<double> xi;
  std::vector<long long> w;      // 4 or 9 integers, row-major
  std::string mode = "ewald";    // direct|ewald or fourier|ewald
  double y = 0.0;
  double zeta = 0.0;
  std::vector<double> c_list{8.0, 16.0, 32.0, 64.0};
  double tol = 1e-10;
  int max_shells = 60;
  double split_lambda = 0.0;
  cplx c0{1.0, 0.0};

  // verify
  std::string suite = "lemma2";
  int count = 20;

  // monopole
  int charge = 1;
  std::vector<double> grid_re{1.0, 1.5};
  std::vector<double> grid_im{1.0, 1.5};
  std::vector<double> grid_y{1.0, 1.5};
  int grid_n = 9;

  // set when --help was requested; run() then prints help_text and exits 0
  bool help_requested = false;
  std::string help_text;
};

/// Parses argv (without the program name). Throws tg::Error(UsageError)
/// naming the offending flag; unknown flags are rejected.
/// TORUS_GREENS_TOL, when set, provides the default tolerance.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the command. Exit codes: 0 success, 1 a verification failed,
/// 2 usage error, 3 evaluator error (diagnostics on stderr).
int run(const RunConfig& config);

/// parse + run with the full exit-code mapping (main() body).
int main_entry(int argc, char** argv);

}  // namespace tg::cli

#endif
