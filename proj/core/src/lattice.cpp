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

#include "torus_greens/lattice.hpp"

#include <cmath>

namespace tg {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;
}

Lattice2::Lattice2(double a_, double bx_, double b_) : a(a_), bx(bx_), b(b_) {
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(ErrorKind::DegenerateLattice, "Lattice2 needs a > 0, b > 0");
}

Mat2 Lattice2::matrix() const {
  Mat2 L;
  L(0, 0) = a;
  L(0, 1) = 0.0;
  L(1, 0) = bx;
  L(1, 1) = b;
  return L;
}

Mat2 Lattice2::dual() const {
  Mat2 D;
  const double d = a * b;
  D(0, 0) = 0.0;
  D(0, 1) = b / d;
  D(1, 0) = -a / d;
  D(1, 1) = -bx / d;
  return D;
}

Vec2 Lattice2::generator(int i) const {
  return i == 0 ? Vec2{a, 0.0} : Vec2{bx, b};
}

Mat2 Lattice2::sigma() {
  Mat2 S;
  S(0, 0) = 0.0;
  S(0, 1) = 1.0;
  S(1, 0) = -1.0;
  S(1, 1) = 0.0;
  return S;
}

Lattice3::Lattice3(double a_, double bx_, double b_, double cx_, double cy_,
                   double c_)
    : a(a_), bx(bx_), b(b_), cx(cx_), cy(cy_), c(c_) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    throw Error(ErrorKind::DegenerateLattice, "Lattice3 needs a, b, c > 0");
}

Mat3 Lattice3::matrix() const {
  Mat3 L;
  L(0, 0) = a;  L(0, 1) = 0.0; L(0, 2) = 0.0;
  L(1, 0) = bx; L(1, 1) = b;   L(1, 2) = 0.0;
  L(2, 0) = cx; L(2, 1) = cy;  L(2, 2) = c;
  return L;
}

Mat3 Lattice3::dual() const {
  // (1/abc) [[bc,0,0],[-bx c, ac, 0],[bx cy - b cx, -a cy, ab]]
  Mat3 D;
  const double d = a * b * c;
  D(0, 0) = b * c / d;            D(0, 1) = 0.0;        D(0, 2) = 0.0;
  D(1, 0) = -bx * c / d;          D(1, 1) = a * c / d;  D(1, 2) = 0.0;
  D(2, 0) = (bx * cy - b * cx) / d;
  D(2, 1) = -a * cy / d;
  D(2, 2) = a * b / d;
  return D;
}

Vec3 Lattice3::generator(int i) const {
  switch (i) {
    case 0: return {a, 0.0, 0.0};
    case 1: return {bx, b, 0.0};
    default: return {cx, cy, c};
  }
}

Lattice3 Lattice3::from_matrix(const Mat3& L, double tol) {
  if (std::abs(L(0, 1)) > tol || std::abs(L(0, 2)) > tol ||
      std::abs(L(1, 2)) > tol)
    throw Error(ErrorKind::DegenerateLattice, "matrix is not lower triangular");
  return Lattice3(L(0, 0), L(1, 0), L(1, 1), L(2, 0), L(2, 1), L(2, 2));
}

Twist3::Twist3(Vec3 xi_, IMat3 w_) : xi(xi_), w(w_) {
  if (det(w) != 1)
    throw Error(ErrorKind::DomainError, "twist matrix must have det 1");
}

Twist2::Twist2(Vec2 xi_, IMat2 w_) : xi(xi_), w(w_) {
  if (det(w) != 1)
    throw Error(ErrorKind::DomainError, "twist matrix must have det 1");
}

Vec3 reduced_twist(const Twist3& twist, const Lattice3& L) {
  // eta = w^T L_dual^T xi
  const Mat3 Dt = transpose(L.dual());
  const Vec3 v = Dt * twist.xi;
  const Mat3 wt = transpose(twist.w.to_real());
  return wt * v;
}

Vec2 reduced_twist(const Twist2& twist, const Lattice2& L) {
  const Mat2 Dt = transpose(L.dual());
  const Vec2 v = Dt * twist.xi;
  const Mat2 wt = transpose(twist.w.to_real());
  return wt * v;
}

cplx char3(const std::array<std::int64_t, 3>& n, const Twist3& twist,
           const Lattice3& L) {
  const Vec3 eta = reduced_twist(twist, L);
  const double phase =
      kTwoPi * (static_cast<double>(n[0]) * eta.x +
                static_cast<double>(n[1]) * eta.y +
                static_cast<double>(n[2]) * eta.z);
  return {std::cos(phase), std::sin(phase)};
}

Sl3Generators sl3_generators() {
  Sl3Generators g;
  g.U = IMat3{{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}};
  g.P = IMat3{{{{0, -1, 0}, {-1, 0, 0}, {0, 0, -1}}}};
  g.Q = IMat3{{{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}}};
  g.O = IMat3{{{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}};
  g.w1 = g.U;
  g.w2 = g.P * g.O;
  g.w3 = g.O;
  g.w4 = g.P * g.O * g.Q;
  if (det(g.w1) != 1 || det(g.w2) != 1 || det(g.w3) != 1 || det(g.w4) != 1)
    throw Error(ErrorKind::DomainError, "generator determinant is not 1");
  return g;
}

ReducedLattice modular_reduce(const IMat3& w, const Lattice3& L) {
  const std::int64_t dw = det(w);
  if (dw != 1 && dw != -1)
    throw Error(ErrorKind::DomainError, "modular_reduce needs det w = +-1");
  const Mat3 WL = w.to_real() * L.matrix();

  // Gram-Schmidt the rows with positive diagonal; WL = T * Qrows.
  Mat3 Qrows;
  Mat3 T;
  for (int i = 0; i < 3; ++i) {
    Vec3 v = WL.row(i);
    for (int j = 0; j < i; ++j) {
      const Vec3 qj = Qrows.row(j);
      const double proj = dot(WL.row(i), qj);
      T(i, j) = proj;
      v = v - proj * qj;
    }
    const double len = norm(v);
    if (len < 1e-12 * std::abs(L.det()))
      throw Error(ErrorKind::DegenerateLattice, "w L is singular");
    T(i, i) = len;
    const Vec3 q = (1.0 / len) * v;
    Qrows(i, 0) = q.x;
    Qrows(i, 1) = q.y;
    Qrows(i, 2) = q.z;
  }

  ReducedLattice out;
  out.O = transpose(Qrows);
  out.alpha = T(0, 0) / L.a;
  Mat3 Lp = T;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Lp(i, j) /= out.alpha;
  out.lattice = Lattice3::from_matrix(Lp, 1e-9 * std::abs(L.det()));
  return out;
}

ModularMove make_modular_move(const IMat3& w, const Lattice3& L) {
  const ReducedLattice r = modular_reduce(w, L);
  return ModularMove{w, r.O, r.alpha};
}

Mat3 rot_x(double t) {
  Mat3 R;
  R(0, 0) = 1; R(0, 1) = 0;            R(0, 2) = 0;
  R(1, 0) = 0; R(1, 1) = std::cos(t);  R(1, 2) = -std::sin(t);
  R(2, 0) = 0; R(2, 1) = std::sin(t);  R(2, 2) = std::cos(t);
  return R;
}

Mat3 rot_y(double t) {
  Mat3 R;
  R(0, 0) = std::cos(t);  R(0, 1) = 0; R(0, 2) = std::sin(t);
  R(1, 0) = 0;            R(1, 1) = 1; R(1, 2) = 0;
  R(2, 0) = -std::sin(t); R(2, 1) = 0; R(2, 2) = std::cos(t);
  return R;
}

Mat3 rot_z(double t) {
  Mat3 R;
  R(0, 0) = std::cos(t); R(0, 1) = -std::sin(t); R(0, 2) = 0;
  R(1, 0) = std::sin(t); R(1, 1) = std::cos(t);  R(1, 2) = 0;
  R(2, 0) = 0;           R(2, 1) = 0;            R(2, 2) = 1;
  return R;
}

std::array<double, 3> euler_zyx(const Mat3& O) {
  // O = rot_z(a) rot_y(b) rot_x(g);  O(2,0) = -sin b.
  const double sb = -O(2, 0);
  const double beta = std::asin(std::max(-1.0, std::min(1.0, sb)));
  double alpha, gamma;
  if (std::abs(std::cos(beta)) > 1e-12) {
    alpha = std::atan2(O(1, 0), O(0, 0));
    gamma = std::atan2(O(2, 1), O(2, 2));
  } else {
    alpha = std::atan2(-O(0, 1), O(1, 1));
    gamma = 0.0;
  }
  return {alpha, beta, gamma};
}

}  // namespace tg
