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

// Small fixed-size real and integer matrices. Everything here is a value
// type; row-major storage, rows of the lattice matrices are the generators.

#ifndef TORUS_GREENS_LINALG_HPP
#define TORUS_GREENS_LINALG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

#include "torus_greens/errors.hpp"

namespace tg {

using cplx = std::complex<double>;

struct Vec2 {
  double x{0}, y{0};
  double& operator[](int i) { return i == 0 ? x : y; }
  double operator[](int i) const { return i == 0 ? x : y; }
};

struct Vec3 {
  double x{0}, y{0}, z{0};
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double c, Vec3 a) { return {c * a.x, c * a.y, c * a.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

struct Mat2 {
  // m[r][c]
  std::array<std::array<double, 2>, 2> m{{{1, 0}, {0, 1}}};

  static Mat2 identity() { return {}; }
  double& operator()(int r, int c) { return m[r][c]; }
  double operator()(int r, int c) const { return m[r][c]; }
  Vec2 row(int r) const { return {m[r][0], m[r][1]}; }
};

struct Mat3 {
  std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  static Mat3 identity() { return {}; }
  double& operator()(int r, int c) { return m[r][c]; }
  double operator()(int r, int c) const { return m[r][c]; }
  Vec3 row(int r) const { return {m[r][0], m[r][1], m[r][2]}; }
};

inline Mat2 operator*(const Mat2& A, const Mat2& B) {
  Mat2 R;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      R(i, j) = A(i, 0) * B(0, j) + A(i, 1) * B(1, j);
  return R;
}

inline Mat3 operator*(const Mat3& A, const Mat3& B) {
  Mat3 R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      R(i, j) = A(i, 0) * B(0, j) + A(i, 1) * B(1, j) + A(i, 2) * B(2, j);
  return R;
}

inline Vec2 operator*(const Mat2& A, Vec2 v) {
  return {A(0, 0) * v.x + A(0, 1) * v.y, A(1, 0) * v.x + A(1, 1) * v.y};
}

inline Vec3 operator*(const Mat3& A, Vec3 v) {
  return {A(0, 0) * v.x + A(0, 1) * v.y + A(0, 2) * v.z,
          A(1, 0) * v.x + A(1, 1) * v.y + A(1, 2) * v.z,
          A(2, 0) * v.x + A(2, 1) * v.y + A(2, 2) * v.z};
}

inline Mat2 transpose(const Mat2& A) {
  Mat2 R;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) R(i, j) = A(j, i);
  return R;
}

inline Mat3 transpose(const Mat3& A) {
  Mat3 R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) R(i, j) = A(j, i);
  return R;
}

inline double det(const Mat2& A) { return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0); }

inline double det(const Mat3& A) {
  return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
         A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
         A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
}

inline Mat2 inverse(const Mat2& A) {
  const double d = det(A);
  if (std::abs(d) < 1e-14)
    throw Error(ErrorKind::DegenerateLattice, "2x2 matrix not invertible");
  Mat2 R;
  R(0, 0) = A(1, 1) / d;
  R(0, 1) = -A(0, 1) / d;
  R(1, 0) = -A(1, 0) / d;
  R(1, 1) = A(0, 0) / d;
  return R;
}

inline Mat3 inverse(const Mat3& A) {
  const double d = det(A);
  if (std::abs(d) < 1e-14)
    throw Error(ErrorKind::DegenerateLattice, "3x3 matrix not invertible");
  Mat3 R;
  R(0, 0) = (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) / d;
  R(0, 1) = (A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2)) / d;
  R(0, 2) = (A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1)) / d;
  R(1, 0) = (A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2)) / d;
  R(1, 1) = (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) / d;
  R(1, 2) = (A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2)) / d;
  R(2, 0) = (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0)) / d;
  R(2, 1) = (A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1)) / d;
  R(2, 2) = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) / d;
  return R;
}

// Exact integer matrices for the SL(3,Z) generators and twists.
struct IMat3 {
  std::array<std::array<std::int64_t, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  static IMat3 identity() { return {}; }
  std::int64_t& operator()(int r, int c) { return m[r][c]; }
  std::int64_t operator()(int r, int c) const { return m[r][c]; }

  Mat3 to_real() const {
    Mat3 R;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) R(i, j) = static_cast<double>(m[i][j]);
    return R;
  }
};

struct IMat2 {
  std::array<std::array<std::int64_t, 2>, 2> m{{{1, 0}, {0, 1}}};

  static IMat2 identity() { return {}; }
  std::int64_t& operator()(int r, int c) { return m[r][c]; }
  std::int64_t operator()(int r, int c) const { return m[r][c]; }

  Mat2 to_real() const {
    Mat2 R;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) R(i, j) = static_cast<double>(m[i][j]);
    return R;
  }
};

inline IMat3 operator*(const IMat3& A, const IMat3& B) {
  IMat3 R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      R(i, j) = A(i, 0) * B(0, j) + A(i, 1) * B(1, j) + A(i, 2) * B(2, j);
  return R;
}

inline std::int64_t det(const IMat3& A) {
  return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
         A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
         A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
}

inline std::int64_t det(const IMat2& A) {
  return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
}

inline bool operator==(const IMat3& A, const IMat3& B) { return A.m == B.m; }

}  // namespace tg

#endif
