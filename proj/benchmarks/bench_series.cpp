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

#include <benchmark/benchmark.h>

#include "torus_greens/lattice_sum.hpp"
#include "torus_greens/special.hpp"

namespace {

using namespace tg;

const Lattice3 kL3(1.0, 0.3, 1.2, 0.1, -0.2, 0.9);
const Vec3 kX3{0.31, 0.17, 0.44};
const Vec3 kXi3{0.23, 0.61, 0.38};

EvalConfig cfg_with_tol(double tol) {
  EvalConfig cfg;
  cfg.tol = tol;
  cfg.max_shells = 80;
  return cfg;
}

void BM_r3_ewald(benchmark::State& state) {
  const double tol = std::pow(10.0, -state.range(0));
  const EvalConfig cfg = cfg_with_tol(tol);
  const cplx s{0.8, 0.15};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        r3(s, Metric3{}, kX3, Twist3{kXi3, IMat3::identity()}, kL3, cfg));
  }
}
BENCHMARK(BM_r3_ewald)->Arg(8)->Arg(12);

void BM_r3_direct(benchmark::State& state) {
  EvalConfig cfg = cfg_with_tol(1e-4);
  cfg.strategy = Strategy::direct;
  cfg.max_shells = 120;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        r3(cplx(2.2), Metric3{}, kX3, Twist3{kXi3, IMat3::identity()}, kL3,
           cfg));
  }
}
BENCHMARK(BM_r3_direct);

void BM_green3_fourier(benchmark::State& state) {
  EvalConfig cfg = cfg_with_tol(1e-9);
  cfg.max_shells = static_cast<int>(state.range(0));
  const Twist3 tw{kXi3, IMat3::identity()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(green3(kX3, tw, kL3, GreenMode::fourier, cfg));
  }
}
BENCHMARK(BM_green3_fourier)->Arg(24)->Arg(46);

void BM_icont_ewald(benchmark::State& state) {
  const EvalConfig cfg = cfg_with_tol(1e-10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(icont(cplx(1.2), Vec2{0.2, 0.3}, Vec2{0.4, 0.1},
                                   0.5, Lattice2(1.0, 0.2, 1.1), cfg));
  }
}
BENCHMARK(BM_icont_ewald);

void BM_upper_incomplete_gamma(benchmark::State& state) {
  const cplx s{0.75, 0.3};
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(upper_incomplete_gamma(s, x));
    x = (x < 40.0) ? x * 1.7 : 0.3;
  }
}
BENCHMARK(BM_upper_incomplete_gamma);

}  // namespace

BENCHMARK_MAIN();
