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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "torus_greens/errors.hpp"
#include "torus_greens/monopole.hpp"
#include "torus_greens/verify.hpp"

namespace tg::cli {

namespace {

std::vector<double> parse_doubles(const std::string& txt, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(txt);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::UsageError,
                  std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  return out;
}

std::vector<long long> parse_ints(const std::string& txt, const char* flag) {
  std::vector<long long> out;
  std::stringstream ss(txt);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::UsageError,
                  std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  return out;
}

cplx parse_complex(const std::string& txt, const char* flag) {
  const auto v = parse_doubles(txt, flag);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw Error(ErrorKind::UsageError,
              std::string(flag) + ": expected re or re,im");
}

Lattice2 lattice2_from(const std::vector<double>& v) {
  if (v.size() != 3)
    throw Error(ErrorKind::UsageError, "--lattice: expected a,bx,b");
  return Lattice2(v[0], v[1], v[2]);
}

Lattice3 lattice3_from(const std::vector<double>& v) {
  if (v.size() != 6)
    throw Error(ErrorKind::UsageError, "--lattice: expected a,bx,b,cx,cy,c");
  return Lattice3(v[0], v[1], v[2], v[3], v[4], v[5]);
}

Mat2 metric2_from(const std::vector<double>& v) {
  if (v.empty()) return Mat2::identity();
  if (v.size() != 4)
    throw Error(ErrorKind::UsageError, "--metric: expected 4 values in 2D");
  Mat2 M;
  M(0, 0) = v[0]; M(0, 1) = v[1]; M(1, 0) = v[2]; M(1, 1) = v[3];
  return M;
}

Mat3 metric3_from(const std::vector<double>& v) {
  if (v.empty()) return Mat3::identity();
  if (v.size() != 9)
    throw Error(ErrorKind::UsageError, "--metric: expected 9 values in 3D");
  Mat3 M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = v[3 * i + j];
  return M;
}

IMat3 w3_from(const std::vector<long long>& v) {
  if (v.empty()) return IMat3::identity();
  if (v.size() != 9)
    throw Error(ErrorKind::UsageError, "--w: expected 9 integers in 3D");
  IMat3 W;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) W(i, j) = v[3 * i + j];
  return W;
}

IMat2 w2_from(const std::vector<long long>& v) {
  if (v.empty()) return IMat2::identity();
  if (v.size() != 4)
    throw Error(ErrorKind::UsageError, "--w: expected 4 integers in 2D");
  IMat2 W;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) W(i, j) = v[2 * i + j];
  return W;
}

Vec2 vec2_from(const std::vector<double>& v, const char* flag) {
  if (v.size() != 2)
    throw Error(ErrorKind::UsageError, std::string(flag) + ": expected 2 values");
  return {v[0], v[1]};
}

Vec3 vec3_from(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3)
    throw Error(ErrorKind::UsageError, std::string(flag) + ": expected 3 values");
  return {v[0], v[1], v[2]};
}

EvalConfig eval_config(const RunConfig& rc) {
  EvalConfig cfg;
  cfg.strategy = (rc.mode == "direct") ? Strategy::direct : Strategy::ewald;
  cfg.max_shells = rc.max_shells;
  cfg.tol = rc.tol;
  cfg.split_lambda = rc.split_lambda;
  cfg.c0 = rc.c0;
  return cfg;
}

nlohmann::json series_json(const SeriesValue& v) {
  return {{"value", {{"re", v.value.real()}, {"im", v.value.imag()}}},
          {"shells_used", v.shells_used},
          {"last_shell_magnitude", v.last_shell_magnitude},
          {"strategy", v.strategy == Strategy::ewald ? "ewald" : "direct"},
          {"pole_flag", v.pole_flag}};
}

void emit(const RunConfig& rc, const std::string& text) {
  if (rc.output_path) {
    std::ofstream f(*rc.output_path);
    if (!f)
      throw Error(ErrorKind::UsageError,
                  "cannot open output path " + *rc.output_path);
    f << text;
  } else {
    std::cout << text;
  }
}

std::string series_csv(const SeriesValue& v) {
  std::ostringstream os;
  os.precision(17);
  os << "value_re,value_im,shells_used,last_shell_magnitude,strategy,pole_flag\n"
     << v.value.real() << ',' << v.value.imag() << ',' << v.shells_used << ','
     << v.last_shell_magnitude << ','
     << (v.strategy == Strategy::ewald ? "ewald" : "direct") << ','
     << (v.pole_flag ? "true" : "false") << '\n';
  return os.str();
}

void emit_series(const RunConfig& rc, const SeriesValue& v) {
  if (rc.output_format == OutputFormat::json)
    emit(rc, series_json(v).dump() + "\n");
  else
    emit(rc, series_csv(v));
}

int emit_reports(const RunConfig& rc, const std::vector<ResidualReport>& reps) {
  if (rc.output_format == OutputFormat::json)
    emit(rc, reports_to_json(reps).dump() + "\n");
  else
    emit(rc, reports_to_csv(reps));
  for (const auto& r : reps)
    if (!r.passed) return 1;
  return 0;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig rc;
  if (const char* env = std::getenv("TORUS_GREENS_TOL")) {
    try {
      rc.tol = std::stod(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::UsageError, "TORUS_GREENS_TOL is not a number");
    }
  }

  CLI::App app{"twisted lattice series, torus Green functions and "
               "verification suites"};
  app.require_subcommand(1);

  std::string s_txt, c0_txt, lattice_txt, metric_txt, x_txt, xi_txt, w_txt,
      clist_txt, gre_txt, gim_txt, gy_txt;
  std::string fmt_txt = "json";
  std::string path_txt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", rc.tol, "relative tolerance");
    sub->add_option("--max-shells", rc.max_shells, "shell budget");
    sub->add_option("--split-lambda", rc.split_lambda,
                    "Ewald split point (0 = automatic)");
    sub->add_option("--c0", c0_txt, "normalization constant re[,im]");
    sub->add_option("--jobs", rc.jobs, "parallel workers")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", rc.seed, "random seed");
    sub->add_option("--output", fmt_txt, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output-path", path_txt, "write output to a file");
  };

  CLI::App* eval2 = app.add_subcommand("eval2", "evaluate the 2D series R2");
  eval2->add_option("--s", s_txt, "exponent re[,im]")->required();
  eval2->add_option("--lattice", lattice_txt, "a,bx,b")->required();
  eval2->add_option("--metric", metric_txt, "4 row-major values");
  eval2->add_option("--x", x_txt, "position")->required();
  eval2->add_option("--xi", xi_txt, "twist vector");
  eval2->add_option("--w", w_txt, "4 row-major integers");
  eval2->add_option("--mode", rc.mode, "direct|ewald")
      ->check(CLI::IsMember({"direct", "ewald"}));
  add_common(eval2);

  CLI::App* eval3 = app.add_subcommand("eval3", "evaluate the 3D series R3");
  eval3->add_option("--s", s_txt, "exponent re[,im]")->required();
  eval3->add_option("--lattice", lattice_txt, "a,bx,b,cx,cy,c")->required();
  eval3->add_option("--metric", metric_txt, "9 row-major values");
  eval3->add_option("--x", x_txt, "position")->required();
  eval3->add_option("--xi", xi_txt, "twist vector");
  eval3->add_option("--w", w_txt, "9 row-major integers");
  eval3->add_option("--mode", rc.mode, "direct|ewald")
      ->check(CLI::IsMember({"direct", "ewald"}));
  add_common(eval3);

  CLI::App* green = app.add_subcommand("green", "periodic Laplace Green function");
  green->add_option("--lattice", lattice_txt, "a,bx,b,cx,cy,c")->required();
  green->add_option("--x", x_txt, "position")->required();
  green->add_option("--xi", xi_txt, "twist vector");
  green->add_option("--w", w_txt, "9 row-major integers");
  green->add_option("--mode", rc.mode, "fourier|ewald")
      ->check(CLI::IsMember({"fourier", "ewald"}));
  add_common(green);

  CLI::App* icont_cmd = app.add_subcommand("icont", "T^2 x R series");
  icont_cmd->add_option("--s", s_txt, "exponent re[,im]")->required();
  icont_cmd->add_option("--lattice", lattice_txt, "a,bx,b")->required();
  icont_cmd->add_option("--x", x_txt, "2D position")->required();
  icont_cmd->add_option("--xi", xi_txt, "2D twist");
  icont_cmd->add_option("--y", rc.y, "transverse coordinate");
  icont_cmd->add_option("--mode", rc.mode, "direct|ewald")
      ->check(CLI::IsMember({"direct", "ewald"}));
  add_common(icont_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "residual suites");
  verify_cmd
      ->add_option("--suite", rc.suite,
                   "lemma1|lemma2|quasiperiodicity|modular2d|modular3d|"
                   "limit|fed2c")
      ->check(CLI::IsMember({"lemma1", "lemma2", "quasiperiodicity",
                             "modular2d", "modular3d", "limit", "fed2c"}));
  verify_cmd->add_option("--count", rc.count, "number of cases")
      ->check(CLI::PositiveNumber);
  add_common(verify_cmd);

  CLI::App* limit_cmd = app.add_subcommand("limit", "T^3 -> T^2 x R check");
  limit_cmd->add_option("--s", s_txt, "exponent re[,im]")->required();
  limit_cmd->add_option("--lattice", lattice_txt, "a,bx,b")->required();
  limit_cmd->add_option("--x", x_txt, "2D position")->required();
  limit_cmd->add_option("--xi", xi_txt, "2D twist");
  limit_cmd->add_option("--y", rc.y, "transverse coordinate");
  limit_cmd->add_option("--zeta", rc.zeta, "third twist component");
  limit_cmd->add_option("--c-list", clist_txt, "ascending c values");
  add_common(limit_cmd);

  CLI::App* mono = app.add_subcommand("monopole", "sample the monopole fields");
  mono->add_option("--m", rc.charge, "integer charge");
  mono->add_option("--grid-re", gre_txt, "lo,hi for Re z");
  mono->add_option("--grid-im", gim_txt, "lo,hi for Im z");
  mono->add_option("--grid-y", gy_txt, "lo,hi for y");
  mono->add_option("--grid-n", rc.grid_n, "nodes per axis")
      ->check(CLI::PositiveNumber);
  add_common(mono);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    rc.help_requested = true;
    rc.help_text = app.help();
    for (CLI::App* sub : app.get_subcommands())
      rc.help_text = sub->help();
    return rc;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::UsageError, e.what());
  }

  rc.output_format =
      (fmt_txt == "csv") ? OutputFormat::csv : OutputFormat::json;
  if (!path_txt.empty()) rc.output_path = path_txt;
  if (!s_txt.empty()) rc.s = parse_complex(s_txt, "--s");
  if (!c0_txt.empty()) rc.c0 = parse_complex(c0_txt, "--c0");
  if (!lattice_txt.empty()) rc.lattice = parse_doubles(lattice_txt, "--lattice");
  if (!metric_txt.empty()) rc.metric = parse_doubles(metric_txt, "--metric");
  if (!x_txt.empty()) rc.x = parse_doubles(x_txt, "--x");
  if (!xi_txt.empty()) rc.xi = parse_doubles(xi_txt, "--xi");
  if (!w_txt.empty()) rc.w = parse_ints(w_txt, "--w");
  if (!clist_txt.empty()) rc.c_list = parse_doubles(clist_txt, "--c-list");
  if (!gre_txt.empty()) rc.grid_re = parse_doubles(gre_txt, "--grid-re");
  if (!gim_txt.empty()) rc.grid_im = parse_doubles(gim_txt, "--grid-im");
  if (!gy_txt.empty()) rc.grid_y = parse_doubles(gy_txt, "--grid-y");

  if (app.got_subcommand(eval2)) rc.command = Command::eval2;
  else if (app.got_subcommand(eval3)) rc.command = Command::eval3;
  else if (app.got_subcommand(green)) rc.command = Command::green;
  else if (app.got_subcommand(icont_cmd)) rc.command = Command::icont;
  else if (app.got_subcommand(verify_cmd)) rc.command = Command::verify;
  else if (app.got_subcommand(limit_cmd)) rc.command = Command::limit;
  else if (app.got_subcommand(mono)) rc.command = Command::monopole;

  return rc;
}

int run(const RunConfig& rc) {
  if (rc.help_requested) {
    std::cout << rc.help_text;
    return 0;
  }
  const EvalConfig cfg = eval_config(rc);

  switch (rc.command) {
    case Command::eval2: {
      const Lattice2 L = lattice2_from(rc.lattice);
      const Vec2 x = vec2_from(rc.x, "--x");
      const Vec2 xi = rc.xi.empty() ? Vec2{} : vec2_from(rc.xi, "--xi");
      const Twist2 tw{xi, w2_from(rc.w)};
      const SeriesValue v = r2(rc.s, Metric2{metric2_from(rc.metric)}, x, tw,
                               L, cfg);
      emit_series(rc, v);
      return 0;
    }
    case Command::eval3: {
      const Lattice3 L = lattice3_from(rc.lattice);
      const Vec3 x = vec3_from(rc.x, "--x");
      const Vec3 xi = rc.xi.empty() ? Vec3{} : vec3_from(rc.xi, "--xi");
      const Twist3 tw{xi, w3_from(rc.w)};
      const SeriesValue v = r3(rc.s, Metric3{metric3_from(rc.metric)}, x, tw,
                               L, cfg);
      emit_series(rc, v);
      return 0;
    }
    case Command::green: {
      const Lattice3 L = lattice3_from(rc.lattice);
      const Vec3 x = vec3_from(rc.x, "--x");
      const Vec3 xi = rc.xi.empty() ? Vec3{} : vec3_from(rc.xi, "--xi");
      const Twist3 tw{xi, w3_from(rc.w)};
      const GreenMode mode =
          (rc.mode == "fourier") ? GreenMode::fourier : GreenMode::ewald;
      const SeriesValue v = green3(x, tw, L, mode, cfg);
      emit_series(rc, v);
      return 0;
    }
    case Command::icont: {
      const Lattice2 L = lattice2_from(rc.lattice);
      const Vec2 x = vec2_from(rc.x, "--x");
      const Vec2 xi = rc.xi.empty() ? Vec2{} : vec2_from(rc.xi, "--xi");
      const SeriesValue v = icont(rc.s, xi, x, rc.y, L, cfg);
      emit_series(rc, v);
      return 0;
    }
    case Command::verify: {
      SuiteConfig sc;
      sc.suite = rc.suite;
      sc.count = rc.count;
      sc.seed = rc.seed;
      sc.tol = rc.tol;
      sc.jobs = rc.jobs;
      return emit_reports(rc, run_suite(sc));
    }
    case Command::limit: {
      const Lattice2 L = lattice2_from(rc.lattice);
      const Vec2 x = vec2_from(rc.x, "--x");
      const Vec2 xi = rc.xi.empty() ? Vec2{} : vec2_from(rc.xi, "--xi");
      EvalConfig lcfg = cfg;
      lcfg.tol = std::min(lcfg.tol, 1e-10);
      const LimitSequence seq = check_limit_c(
          rc.s, xi, x, rc.y, rc.zeta, rc.c_list, L, lcfg,
          rc.tol > 1e-3 ? rc.tol : 1e-3);
      int code = emit_reports(rc, seq.steps);
      if (!seq.monotone) code = 1;
      return code;
    }
    case Command::monopole: {
      if (rc.grid_re.size() != 2 || rc.grid_im.size() != 2 ||
          rc.grid_y.size() != 2)
        throw Error(ErrorKind::UsageError, "--grid-*: expected lo,hi");
      GridSpec g;
      g.re_lo = rc.grid_re[0]; g.re_hi = rc.grid_re[1];
      g.im_lo = rc.grid_im[0]; g.im_hi = rc.grid_im[1];
      g.y_lo = rc.grid_y[0];   g.y_hi = rc.grid_y[1];
      g.n_re = g.n_im = g.n_y = rc.grid_n;
      const MonopoleConfig mc = MonopoleConfig::quantized(rc.charge);
      const AbelianField f = sample_dirac_field(g, mc);
      emit(rc, field_to_csv(f));
      return 0;
    }
  }
  return 0;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const RunConfig rc = parse_args(args);
    return run(rc);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::UsageError ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tg::cli
