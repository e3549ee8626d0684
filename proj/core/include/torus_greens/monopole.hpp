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

// Closed-form abelian monopole fields on R^3 = C x R in the gauge
// A_zbar = 0, A_y = i phi, the piecewise connection with its jump across
// y = 0, and finite-difference residuals of the first-order system
//   d/dzbar A_z = -(i g / 2) d/dy phi,
//   d/dy A_z    =  2 i d/dz phi.
// The closed forms fix the coupling to g = 1.

#ifndef TORUS_GREENS_MONOPOLE_HPP
#define TORUS_GREENS_MONOPOLE_HPP

#include <utility>
#include <vector>

#include "torus_greens/linalg.hpp"
#include "torus_greens/verify.hpp"

namespace tg {

struct MonopoleConfig {
  cplx c0{0.0, 0.5};  // i m / 2 when quantized
  int m = 1;          // integer charge
  double g = 1.0;     // coupling of the first system equation

  /// Quantized configuration: c0 = i m / 2 exactly.
  static MonopoleConfig quantized(int m);
};

/// phi(p) = c0 / |p|; SingularPoint at the origin.
cplx dirac_phi(Vec3 point, const MonopoleConfig& cfg);

/// Piecewise connection component:
///   y > 0:  A_z = -i c0 ((1/z) y / sqrt(y^2 + z zbar) - 1/z)
///   y < 0:  A_z = -i c0 ((1/z) y / sqrt(y^2 + z zbar) + 1/z)
/// OnJumpLocus at y = 0, AxisSingularity at z = 0.
/// A_z -> 0 as |y| -> infinity at fixed z.
cplx a_z(cplx z, double y, const MonopoleConfig& cfg);

/// The gauge component A_y = i phi in the fixed gauge.
cplx a_y(cplx z, double y, const MonopoleConfig& cfg);

/// Jump of A_z across y = 0, defined as lim_{y->0-} - lim_{y->0+} = -2i c0 / z.
/// With the quantized c0 = i m / 2 the coefficient -2i c0 equals the integer
/// m exactly and the jump is the gauge shift m / z of f = z^m.
cplx connection_jump(cplx z, const MonopoleConfig& cfg);

/// Exact integer jump coefficient -2i c0 for a quantized configuration
/// (pure integer arithmetic; no rounding).
std::int64_t quantized_jump_coefficient(const MonopoleConfig& cfg);

/// Uniform tensor grid over the (Re z, Im z, y) box with sampled fields.
struct GridSpec {
  double re_lo = 1.0, re_hi = 1.5;
  double im_lo = 1.0, im_hi = 1.5;
  double y_lo = 1.0, y_hi = 1.5;
  int n_re = 9, n_im = 9, n_y = 9;

  double h_re() const { return (re_hi - re_lo) / (n_re - 1); }
  double h_im() const { return (im_hi - im_lo) / (n_im - 1); }
  double h_y() const { return (y_hi - y_lo) / (n_y - 1); }
};

struct AbelianField {
  GridSpec grid;
  std::vector<cplx> phi;   // node order: (i_re, i_im, i_y), y fastest
  std::vector<cplx> az;
  std::vector<cplx> ay;

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * grid.n_im + j) * grid.n_y + k;
  }
};

/// Samples the closed-form fields; the grid must keep a margin of at least
/// 2h from the axis z = 0 and the plane y = 0 (GridTooCoarse otherwise).
AbelianField sample_dirac_field(const GridSpec& grid, const MonopoleConfig& cfg);

/// Max-norm residuals (r1, r2) of the two system equations by centered
/// differences on the interior nodes. GridTooCoarse if the spacing exceeds
/// 1/8 of the distance to the nearest singularity.
std::pair<double, double> bogomolny_residual(const AbelianField& field,
                                             const MonopoleConfig& cfg);

/// Conformal modular substitution on the flat closed forms:
///   phi -> |tau| phi(tau z, |tau| y),  A_z -> tau A_z(tau z, |tau| y),
/// under which the system is exactly preserved; confirms the sampled
/// residuals match the untransformed ones up to discretization error.
ResidualReport modular_field_check(cplx tau, const GridSpec& grid,
                                   const MonopoleConfig& cfg);

/// CSV export: '#' metadata header lines, then rows
/// re_z,im_z,y,re_phi,im_phi,re_Az,im_Az.
std::string field_to_csv(const AbelianField& field);

}  // namespace tg

#endif
