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

// Numerical verification of the functional equations, modular
// transformation laws, boundary conditions and the T^3 -> T^2 x R
// degeneration. Every check compares two independently evaluated sides and
// emits a structured residual report.
//
// Where the source formulas carry transpose/sign slips, the checks use the
// re-derived forms (validated against brute-force and quadrature oracles):
//  * lemma 1, slots (position = xi, twist = x) on the left:
//      I2(s,G,xi,x) = pi^{2s-1} (det G)^{1/2-s} |det L|^{1-2s}
//                     e^{-2 pi i x.sigma.xi / det L} I2(1-s, G, x, xi),
//    with G = M M^T appearing unchanged on the dual side.
//  * lemma 2:
//      R3(s,M,x,xi) = Gamma(3/2-s) pi^{2s-3/2} / (Gamma(s) |det L| |det M|)
//                     e^{-2 pi i x.(L^T L)^{-1}.xi}
//                     R3(3/2-s, M', xi, -x),   M' = (L^T L)^{-1} M^{-T}.
//  * 2D S-transform: R_{-1/tau}(s,xi,w,p) = |tau|^{2s} R_tau(s, tau xi, tau w, p/|tau|).
//  * 3D law: R(s,M,x,xi; L') = alpha^{2s} R(s, O M, alpha O x, alpha O xi; L)
//    for L' = (1/alpha) w L O, valid for the orthogonal generators w2,w3,w4
//    and words in them; w1 and w3 also satisfy the exact re-indexing
//    invariance, checked as such.

#ifndef TORUS_GREENS_VERIFY_HPP
#define TORUS_GREENS_VERIFY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "torus_greens/lattice_sum.hpp"

namespace tg {

struct ResidualReport {
  std::string name;
  cplx lhs{};
  cplx rhs{};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  nlohmann::json config_echo;
};

/// Residuals per the fixed convention: rel denominated by
/// max(|lhs|, |rhs|, 1e-30); abs_residual governs when |lhs| < 1e-10.
ResidualReport make_report(std::string name, cplx lhs, cplx rhs, double tol,
                           nlohmann::json config_echo);

ResidualReport check_lemma1(cplx s, const Metric2& M, Vec2 x, Vec2 xi,
                            const Lattice2& L, const EvalConfig& cfg,
                            double tol);

ResidualReport check_lemma2(cplx s, const Metric3& M, Vec3 x, Vec3 xi,
                            const Lattice3& L, const EvalConfig& cfg,
                            double tol);

/// Applies the lemma-2 map twice (s -> 3/2-s -> s); the composite must
/// reproduce the original value (involution).
ResidualReport check_lemma2_involution(cplx s, const Metric3& M, Vec3 x,
                                       Vec3 xi, const Lattice3& L,
                                       const EvalConfig& cfg, double tol);

/// One report per lattice generator gamma_i.
std::array<ResidualReport, 3> check_quasi_periodicity(
    cplx s, const Metric3& M, Vec3 x, const Twist3& twist, const Lattice3& L,
    const EvalConfig& cfg, double tol);

/// (i) tau -> tau+1 invariance; (ii) the S-transform law at the given s.
std::array<ResidualReport, 2> check_modular_2d(cplx s, cplx tau, cplx xi,
                                               cplx wpt, double p,
                                               const EvalConfig& cfg,
                                               double tol);

/// w_index in {1,..,4}. w1, w3: exact substitution invariance. w2, w4:
/// reduction law with (alpha, O) from modular_reduce.
ResidualReport check_modular_3d(cplx s, const Metric3& M, Vec3 x, Vec3 xi,
                                const Lattice3& L, int w_index,
                                const EvalConfig& cfg, double tol);

/// Reduction law for a word in the orthogonal generators {2,3,4}; indices
/// apply left-to-right (the word matrix is w_last ... w_first).
ResidualReport check_modular_3d_word(cplx s, const Metric3& M, Vec3 x,
                                     Vec3 xi, const Lattice3& L,
                                     const std::vector<int>& word,
                                     const EvalConfig& cfg, double tol);

struct LimitSequence {
  std::vector<ResidualReport> steps;  // one per c, ascending
  bool monotone = false;              // non-increasing after floor clamping
  double floor = 0.0;                 // oracle-accuracy floor used
};

/// T^3 -> T^2 x R degeneration: r3 on L2 x (0,0,c) at position (x2, y) and
/// twist (mapped xi2, zeta) against the inverse-Fourier p-quadrature of
/// icont. Trivial twists are compared after zero-mean alignment against a
/// displaced reference position.
LimitSequence check_limit_c(cplx s, Vec2 xi, Vec2 x, double y, double zeta,
                            const std::vector<double>& c_list,
                            const Lattice2& L, const EvalConfig& cfg,
                            double tol);

ResidualReport check_fed2c(cplx s, Vec2 xi, Vec2 x, double y,
                           const Lattice2& L, const EvalConfig& cfg,
                           double tol);

struct SuiteConfig {
  std::string suite;  // lemma1 | lemma2 | quasiperiodicity | modular2d |
                      // modular3d | limit | fed2c
  int count = 20;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int jobs = 1;
};

/// Seeded random verification suites; case aggregation is ordered by case
/// index, so the output does not depend on jobs.
std::vector<ResidualReport> run_suite(const SuiteConfig& sc);

nlohmann::json reports_to_json(const std::vector<ResidualReport>& reports);
std::string reports_to_csv(const std::vector<ResidualReport>& reports);

}  // namespace tg

#endif
