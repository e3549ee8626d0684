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

// Period lattices in lower-triangular form, their dual matrices, twist
// characters, the SL(3,Z) generator set and the modular reduction back to
// canonical form.
//
// Conventions (fixed throughout the library):
//  * rows of L are the generators; lattice points are L^T n, n integer;
//  * L3_dual = L3^{-1};
//  * L2_dual = L2^{-1} sigma with sigma = [[0,1],[-1,0]]. Note this 2D
//    convention pairs generators and dual generators only up to the sigma
//    twist ((dual column_i) . (row_j) = sigma_ji, not delta_ij); the 3D
//    convention pairs exactly. Both follow the source formulas literally.

#ifndef TORUS_GREENS_LATTICE_HPP
#define TORUS_GREENS_LATTICE_HPP

#include <array>

#include "torus_greens/linalg.hpp"

namespace tg {

struct Lattice2 {
  double a{1.0};   // gamma_1 = (a, 0)
  double bx{0.0};  // gamma_2 = (bx, b)
  double b{1.0};

  Lattice2() = default;
  Lattice2(double a_, double bx_, double b_);

  Mat2 matrix() const;           // [[a,0],[bx,b]]
  Mat2 dual() const;             // (1/ab) [[0,b],[-a,-bx]]
  double det() const { return a * b; }
  Vec2 generator(int i) const;   // i in {0,1}

  static Mat2 sigma();           // [[0,1],[-1,0]]
};

struct Lattice3 {
  double a{1.0};
  double bx{0.0};
  double b{1.0};
  double cx{0.0};
  double cy{0.0};
  double c{1.0};

  Lattice3() = default;
  Lattice3(double a_, double bx_, double b_, double cx_, double cy_, double c_);

  Mat3 matrix() const;          // [[a,0,0],[bx,b,0],[cx,cy,c]]
  Mat3 dual() const;            // explicit lower-triangular inverse
  double det() const { return a * b * c; }
  Vec3 generator(int i) const;  // i in {0,1,2}

  /// Canonical form of an arbitrary lower-triangular matrix (diagonal > 0).
  static Lattice3 from_matrix(const Mat3& L, double tol = 1e-9);
};

/// Quasi-periodicity data: twist vector xi and an integer unimodular w.
struct Twist3 {
  Vec3 xi{};
  IMat3 w = IMat3::identity();

  Twist3() = default;
  Twist3(Vec3 xi_, IMat3 w_);
};

struct Twist2 {
  Vec2 xi{};
  IMat2 w = IMat2::identity();

  Twist2() = default;
  Twist2(Vec2 xi_, IMat2 w_);
};

/// chi_3(n, xi; w, L) = exp(2 pi i (w n)^T L_dual^T xi); unit modulus.
cplx char3(const std::array<std::int64_t, 3>& n, const Twist3& twist,
           const Lattice3& L);

/// Reduced dual twist eta = w^T L_dual^T xi; the character is then
/// exp(2 pi i n . eta) and the whole evaluator layer works with eta.
Vec3 reduced_twist(const Twist3& twist, const Lattice3& L);
Vec2 reduced_twist(const Twist2& twist, const Lattice2& L);

/// One modular generator move: the integer matrix, the compensating
/// rotation, and the scale restoring the canonical a.
struct ModularMove {
  IMat3 w;
  Mat3 O;
  double alpha{1.0};
};

/// The generator set: U, P, Q, O of the standard presentation and the
/// derived w1 = U, w2 = PO, w3 = O, w4 = POQ.
struct Sl3Generators {
  IMat3 U, P, Q, O;
  IMat3 w1, w2, w3, w4;
};

/// Exact integer generator matrices; all four w_i have determinant 1
/// (asserted at construction).
Sl3Generators sl3_generators();

/// Result of reducing w L back to canonical lower-triangular form.
struct ReducedLattice {
  Lattice3 lattice;  // L' = (1/alpha) w L O
  Mat3 O;            // in SO(3) for det(wL) > 0
  double alpha;      // |first row of w L| / a
};

/// Gram-Schmidt the rows of w L (positive diagonal convention); returns
/// L' = (1/alpha) (w L) O lower triangular with L'(0,0) = L.a.
/// det w = +-1 required; throws DegenerateLattice if w L is singular.
ReducedLattice modular_reduce(const IMat3& w, const Lattice3& L);

/// The (w, O, alpha) triple of the reduction as a ModularMove.
ModularMove make_modular_move(const IMat3& w, const Lattice3& L);

/// Rotations about the coordinate axes (right-handed, angle in radians).
Mat3 rot_x(double angle);
Mat3 rot_y(double angle);
Mat3 rot_z(double angle);

/// Euler angles (alpha, beta, gamma) with O = rot_z(alpha) rot_y(beta) rot_x(gamma).
std::array<double, 3> euler_zyx(const Mat3& O);

}  // namespace tg

#endif
