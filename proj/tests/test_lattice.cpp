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
#include <random>

#include "doctest.h"
#include "torus_greens/errors.hpp"
#include "torus_greens/json_io.hpp"

using namespace tg;

namespace {

double max_abs_diff(const Mat2& A, const Mat2& B) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(A(i, j) - B(i, j)));
  return m;
}

double max_abs_diff(const Mat3& A, const Mat3& B) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(A(i, j) - B(i, j)));
  return m;
}

}  // namespace

TEST_CASE("dual2 explicit values") {
  {
    const Lattice2 L(1.0, 0.0, 1.0);
    const Mat2 D = L.dual();
    CHECK(D(0, 0) == doctest::Approx(0.0));
    CHECK(D(0, 1) == doctest::Approx(1.0));
    CHECK(D(1, 0) == doctest::Approx(-1.0));
    CHECK(D(1, 1) == doctest::Approx(0.0));
  }
  {
    const Lattice2 L(2.0, 1.0, 3.0);
    const Mat2 D = L.dual();
    CHECK(D(0, 0) == doctest::Approx(0.0));
    CHECK(D(0, 1) == doctest::Approx(3.0 / 6.0));
    CHECK(D(1, 0) == doctest::Approx(-2.0 / 6.0));
    CHECK(D(1, 1) == doctest::Approx(-1.0 / 6.0));
  }
}

TEST_CASE("L2 dual satisfies L L_dual = sigma; L3 dual inverts L3") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> diag(0.1, 10.0), off(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Lattice2 L2(diag(gen), off(gen), diag(gen));
    CHECK(max_abs_diff(L2.matrix() * L2.dual(), Lattice2::sigma()) < 1e-14 *
              std::max(1.0, std::abs(L2.det())));
    const Lattice3 L3(diag(gen), off(gen), diag(gen), off(gen), off(gen),
                      diag(gen));
    CHECK(max_abs_diff(L3.matrix() * L3.dual(), Mat3::identity()) < 1e-12);
  }
}

TEST_CASE("dual3 equals the numerically inverted matrix") {
  const Lattice3 L(1.0, 0.0, 1.0, 0.0, 1.0, 1.0);
  CHECK(max_abs_diff(L.dual(), inverse(L.matrix())) < 1e-14);
  const Lattice3 Lg(1.3, 0.4, 0.9, -0.2, 0.7, 1.1);
  CHECK(max_abs_diff(Lg.dual(), inverse(Lg.matrix())) < 1e-13);
}

TEST_CASE("identity lattice dual is the identity") {
  const Lattice3 L(1, 0, 1, 0, 0, 1);
  CHECK(max_abs_diff(L.dual(), Mat3::identity()) < 1e-15);
}

TEST_CASE("char3 basic values and multiplicativity") {
  const Lattice3 L(1, 0, 1, 0, 0, 1);
  const Twist3 tw{Vec3{0.25, 0.0, 0.0}, IMat3::identity()};
  CHECK(std::abs(char3({0, 0, 0}, tw, L) - cplx(1.0)) < 1e-15);
  // n = (1,0,0), xi = (0.25,0,0): exp(i pi / 2) = i
  CHECK(std::abs(char3({1, 0, 0}, tw, L) - cplx(0.0, 1.0)) < 1e-14);

  std::mt19937_64 gen(3);
  std::uniform_int_distribution<std::int64_t> ni(-6, 6);
  std::uniform_real_distribution<double> xr(-1.0, 1.0);
  const Lattice3 Lg(1.2, 0.3, 0.8, -0.1, 0.5, 1.4);
  for (int i = 0; i < 200; ++i) {
    const Twist3 t2{Vec3{xr(gen), xr(gen), xr(gen)}, IMat3::identity()};
    std::array<std::int64_t, 3> n{ni(gen), ni(gen), ni(gen)};
    std::array<std::int64_t, 3> m{ni(gen), ni(gen), ni(gen)};
    std::array<std::int64_t, 3> nm{n[0] + m[0], n[1] + m[1], n[2] + m[2]};
    CHECK(std::abs(std::abs(char3(n, t2, Lg)) - 1.0) < 1e-15);
    CHECK(std::abs(char3(nm, t2, Lg) - char3(n, t2, Lg) * char3(m, t2, Lg)) <
          1e-13);
  }
}

TEST_CASE("sl3 generator matrices") {
  const Sl3Generators g = sl3_generators();
  const IMat3 w2_expect{{{{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}}}};
  const IMat3 w4_expect{{{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}}}};
  CHECK(g.w2 == w2_expect);
  CHECK(g.w4 == w4_expect);
  CHECK(g.w2 == g.P * g.O);
  CHECK(g.w4 == g.P * g.O * g.Q);
  CHECK(det(g.w1) == 1);
  CHECK(det(g.w2) == 1);
  CHECK(det(g.w3) == 1);
  CHECK(det(g.w4) == 1);
  CHECK(det(g.O) == 1);
}

TEST_CASE("modular_reduce: identity, w2 and w4") {
  const Lattice3 L(1.1, 0.3, 1.2, 0.1, -0.2, 0.9);

  SUBCASE("identity") {
    const ReducedLattice r = modular_reduce(IMat3::identity(), L);
    CHECK(r.alpha == doctest::Approx(1.0));
    CHECK(max_abs_diff(r.O, Mat3::identity()) < 1e-14);
    CHECK(r.lattice.a == doctest::Approx(L.a));
    CHECK(r.lattice.bx == doctest::Approx(L.bx));
    CHECK(r.lattice.c == doctest::Approx(L.c));
  }

  SUBCASE("w2: alpha = |gamma2| / |gamma1|, O = z rotation") {
    const Lattice3 Ls(1.1, 0.3, 1.2, 0.0, 0.0, 0.9);
    const Sl3Generators g = sl3_generators();
    const ReducedLattice r = modular_reduce(g.w2, Ls);
    const double expect =
        std::sqrt(Ls.b * Ls.b + Ls.bx * Ls.bx) / Ls.a;
    CHECK(r.alpha == doctest::Approx(expect).epsilon(1e-13));
    // rotation about z: last row/column of O are (0,0,1)
    CHECK(std::abs(r.O(2, 2) - 1.0) < 1e-13);
    CHECK(std::abs(r.O(0, 2)) < 1e-13);
    CHECK(std::abs(r.O(2, 0)) < 1e-13);
    const double angle =
        std::acos(dot(Ls.generator(0), Ls.generator(1)) /
                  (norm(Ls.generator(0)) * norm(Ls.generator(1))));
    const auto ang = euler_zyx(r.O);
    CHECK(std::abs(std::abs(ang[0]) - angle) < 1e-12);
  }

  SUBCASE("w4: alpha = |gamma3| / |gamma1|, zyx Euler composition") {
    const Sl3Generators g = sl3_generators();
    const ReducedLattice r = modular_reduce(g.w4, L);
    CHECK(r.alpha ==
          doctest::Approx(norm(L.generator(2)) / norm(L.generator(0)))
              .epsilon(1e-13));
    const auto ang = euler_zyx(r.O);
    const Mat3 rebuilt = rot_z(ang[0]) * rot_y(ang[1]) * rot_x(ang[2]);
    CHECK(max_abs_diff(rebuilt, r.O) < 1e-12);
    // reduced matrix is lower triangular with the original a restored
    CHECK(r.lattice.a == doctest::Approx(L.a).epsilon(1e-12));
  }
}

TEST_CASE("modular_reduce invariants over random lattices and generators") {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> diag(0.5, 2.0), off(-0.8, 0.8);
  const Sl3Generators g = sl3_generators();
  const IMat3 ws[] = {g.w1, g.w2, g.w3, g.w4, g.w2 * g.w4, g.w4 * g.w3 * g.w2};
  for (int i = 0; i < 200; ++i) {
    const Lattice3 L(diag(gen), off(gen), diag(gen), off(gen), off(gen),
                     diag(gen));
    const IMat3& w = ws[i % 6];
    const ReducedLattice r = modular_reduce(w, L);
    // O^T O = 1
    CHECK(max_abs_diff(transpose(r.O) * r.O, Mat3::identity()) < 1e-13);
    CHECK(det(r.O) == doctest::Approx(1.0).epsilon(1e-12));
    // L' = (1/alpha) w L O lower triangular
    const Mat3 Lp = r.lattice.matrix();
    Mat3 WLO = w.to_real() * L.matrix() * r.O;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) WLO(a, b) /= r.alpha;
    CHECK(max_abs_diff(Lp, WLO) < 1e-11);
    CHECK(std::abs(Lp(0, 1)) < 1e-12);
    CHECK(std::abs(Lp(0, 2)) < 1e-12);
    CHECK(std::abs(Lp(1, 2)) < 1e-12);
    // det L' alpha^3 = |det(w L)|
    CHECK(r.lattice.det() * std::pow(r.alpha, 3) ==
          doctest::Approx(std::abs(det(w.to_real() * L.matrix())))
              .epsilon(1e-11));
    CHECK(r.lattice.a == doctest::Approx(L.a).epsilon(1e-11));
  }
}

TEST_CASE("modular move invariants") {
  const Lattice3 L(1.0, 0.3, 1.2, 0.1, -0.2, 0.9);
  const Sl3Generators g = sl3_generators();
  for (const IMat3& w : {g.w1, g.w2, g.w3, g.w4}) {
    const ModularMove mv = make_modular_move(w, L);
    CHECK(mv.alpha > 0.0);
    CHECK(max_abs_diff(transpose(mv.O) * mv.O, Mat3::identity()) < 1e-13);
    CHECK(det(mv.O) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("reduction of a composed word equals composing reductions") {
  const Lattice3 L(1.0, 0.3, 1.2, 0.1, -0.2, 0.9);
  const Sl3Generators g = sl3_generators();
  // apply w3, then w4, then w2
  const ReducedLattice r1 = modular_reduce(g.w3, L);
  const ReducedLattice r2 = modular_reduce(g.w4, r1.lattice);
  const ReducedLattice r3_ = modular_reduce(g.w2, r2.lattice);
  const ReducedLattice direct = modular_reduce(g.w2 * g.w4 * g.w3, L);
  CHECK(r1.alpha * r2.alpha * r3_.alpha ==
        doctest::Approx(direct.alpha).epsilon(1e-12));
  CHECK(max_abs_diff(r3_.lattice.matrix(), direct.lattice.matrix()) < 1e-11);
}

TEST_CASE("json round trip for lattices and integer matrices") {
  const Lattice3 L(1.25, 0.3, 0.75, -0.1, 0.45, 1.6);
  nlohmann::json j = L;
  CHECK(j["a"] == 1.25);
  CHECK(j["cy"] == 0.45);
  const auto back = j.get<Lattice3>();
  CHECK(back.bx == L.bx);
  CHECK(back.c == L.c);

  const IMat3 w = sl3_generators().w4;
  nlohmann::json jw = w;
  CHECK(jw.is_array());
  CHECK(jw.size() == 9);
  CHECK(jw.get<IMat3>() == w);

  const Lattice2 L2(0.8, -0.2, 1.1);
  nlohmann::json j2 = L2;
  const auto back2 = j2.get<Lattice2>();
  CHECK(back2.a == L2.a);
  CHECK(back2.bx == L2.bx);
}

TEST_CASE("invalid inputs throw") {
  CHECK_THROWS_AS(Lattice2(0.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(Lattice3(1.0, 0.0, -1.0, 0, 0, 1.0), Error);
  IMat3 bad = IMat3::identity();
  bad(0, 0) = 2;
  CHECK_THROWS_AS(Twist3(Vec3{}, bad), Error);
  IMat3 notdet = IMat3::identity();
  notdet(1, 1) = 0;
  CHECK_THROWS_AS(modular_reduce(notdet, Lattice3(1, 0, 1, 0, 0, 1)), Error);
}
