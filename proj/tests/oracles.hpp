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

// Test-only oracles, kept independent of the Ewald implementation path:
//  * plain box-truncated brute-force sums,
//  * Richardson extrapolation of box sums in the known tail power,
//  * the theta-function quadrature form (direct Gaussian sums + a 1D
//    Gauss-Legendre t-integral; no Poisson step, no incomplete gammas),
//  * adaptive Simpson quadrature for defining integrals.

#ifndef TORUS_GREENS_TEST_ORACLES_HPP
#define TORUS_GREENS_TEST_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "torus_greens/lattice.hpp"

namespace tg::oracle {

inline cplx cpow(double base, cplx e) { return std::exp(e * std::log(base)); }

inline cplx phase(double a) { return {std::cos(a), std::sin(a)}; }

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

/// sum over the box |n_i| <= N of chi(n) / Q(x + L^T n)^s
inline cplx brute3(cplx s, const Mat3& G, Vec3 x, Vec3 eta, const Mat3& L,
                   int N) {
  const Mat3 LT = transpose(L);
  cplx tot = 0.0;
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2)
      for (int n3 = -N; n3 <= N; ++n3) {
        const Vec3 n{static_cast<double>(n1), static_cast<double>(n2),
                     static_cast<double>(n3)};
        const Vec3 v = x + LT * n;
        const double Q = dot(v, G * v);
        tot += phase(kTwoPi * dot(n, eta)) * cpow(Q, -s);
      }
  return tot;
}

inline cplx brute2(cplx s, const Mat2& G, Vec2 x, Vec2 eta, const Mat2& L,
                   int N) {
  const Mat2 LT = transpose(L);
  cplx tot = 0.0;
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2) {
      const Vec2 n{static_cast<double>(n1), static_cast<double>(n2)};
      const Vec2 v = x + LT * n;
      tot += phase(kTwoPi * dot(n, eta)) * cpow(dot(v, G * v), -s);
    }
  return tot;
}

/// Richardson extrapolation of box partial sums S_R = S + R^{p0}(a + b/R + ...).
/// radii ascending; solves the small Vandermonde-like system exactly.
inline cplx richardson(const std::vector<std::pair<int, cplx>>& sums,
                       double p0) {
  const int m = static_cast<int>(sums.size());
  // Gaussian elimination on the m x m system [1, R^{p0-j}] c = S_R
  std::vector<std::vector<cplx>> A(m, std::vector<cplx>(m + 1));
  for (int i = 0; i < m; ++i) {
    const double R = sums[i].first;
    A[i][0] = 1.0;
    for (int j = 1; j < m; ++j) A[i][j] = std::pow(R, p0 - (j - 1));
    A[i][m] = sums[i].second;
  }
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const cplx f = A[r][col] / A[col][col];
      for (int c2 = col; c2 <= m; ++c2) A[r][c2] -= f * A[col][c2];
    }
  }
  return A[0][m] / A[0][0];
}

/// Box partial sums of brute3 at the given radii (single sweep).
inline std::vector<std::pair<int, cplx>> box_sums3(
    cplx s, const Mat3& G, Vec3 x, Vec3 eta, const Mat3& L,
    const std::vector<int>& radii) {
  const Mat3 LT = transpose(L);
  const int N = radii.back();
  cplx acc = 0.0;
  std::vector<std::pair<int, cplx>> out;
  std::size_t next = 0;
  for (int r = 0; r <= N; ++r) {
    for (int n1 = -r; n1 <= r; ++n1)
      for (int n2 = -r; n2 <= r; ++n2)
        for (int n3 = -r; n3 <= r; ++n3) {
          if (std::max({std::abs(n1), std::abs(n2), std::abs(n3)}) != r)
            continue;
          const Vec3 n{static_cast<double>(n1), static_cast<double>(n2),
                       static_cast<double>(n3)};
          const Vec3 v = x + LT * n;
          acc += phase(kTwoPi * dot(n, eta)) * cpow(dot(v, G * v), -s);
        }
    if (next < radii.size() && r == radii[next]) {
      out.emplace_back(r, acc);
      ++next;
    }
  }
  return out;
}

inline std::vector<std::pair<int, cplx>> box_sums2(
    cplx s, const Mat2& G, Vec2 x, Vec2 eta, const Mat2& L,
    const std::vector<int>& radii) {
  const Mat2 LT = transpose(L);
  const int N = radii.back();
  cplx acc = 0.0;
  std::vector<std::pair<int, cplx>> out;
  std::size_t next = 0;
  for (int r = 0; r <= N; ++r) {
    for (int n1 = -r; n1 <= r; ++n1)
      for (int n2 = -r; n2 <= r; ++n2) {
        if (std::max(std::abs(n1), std::abs(n2)) != r) continue;
        const Vec2 n{static_cast<double>(n1), static_cast<double>(n2)};
        const Vec2 v = x + LT * n;
        acc += phase(kTwoPi * dot(n, eta)) * cpow(dot(v, G * v), -s);
      }
    if (next < radii.size() && r == radii[next]) {
      out.emplace_back(r, acc);
      ++next;
    }
  }
  return out;
}

/// theta(t) = sum_n chi(n) e^{-t Q(x + L^T n)} with the (Q, chi) pairs
/// enumerated once, sorted ascending in Q, so each t evaluation stops at the
/// exponent cutoff.
class Theta3 {
 public:
  Theta3(const Mat3& G, Vec3 x, Vec3 eta, const Mat3& L, double t_floor,
         double cutoff = 46.0)
      : cutoff_(cutoff) {
    const Mat3 LT = transpose(L);
    double qmin = 1e300;  // Gershgorin lower bound on the metric form
    for (int i = 0; i < 3; ++i) {
      double off = 0.0;
      for (int j = 0; j < 3; ++j)
        if (j != i) off += std::abs(G(i, j));
      qmin = std::min(qmin, G(i, i) - off);
    }
    qmin = std::max(qmin, 1e-3);
    double smin = 1e300;
    for (int i = 0; i < 3; ++i) smin = std::min(smin, norm(L.row(i)));
    const double rmax = std::sqrt(cutoff / (t_floor * qmin));
    const int N =
        static_cast<int>(std::ceil((rmax + norm(x) + 1.0) / smin)) + 1;
    const double q_keep = cutoff / t_floor;
    terms_.reserve(1 << 16);
    for (int n1 = -N; n1 <= N; ++n1)
      for (int n2 = -N; n2 <= N; ++n2)
        for (int n3 = -N; n3 <= N; ++n3) {
          const Vec3 n{static_cast<double>(n1), static_cast<double>(n2),
                       static_cast<double>(n3)};
          const Vec3 v = x + LT * n;
          const double Q = dot(v, G * v);
          if (Q > q_keep) continue;
          terms_.push_back({Q, phase(kTwoPi * dot(n, eta))});
        }
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.q < b.q; });
  }

  cplx operator()(double t) const {
    cplx tot = 0.0;
    for (const Term& tm : terms_) {
      const double e = t * tm.q;
      if (e > cutoff_) break;
      tot += tm.chi * std::exp(-e);
    }
    return tot;
  }

  double q_min() const { return terms_.front().q; }

 private:
  struct Term {
    double q;
    cplx chi;
  };
  std::vector<Term> terms_;
  double cutoff_;
};

/// R = (1/Gamma(s)) int_0^inf t^{s-1} theta(t) dt for a NONTRIVIAL twist
/// (theta vanishes superexponentially as t -> 0). Gauss-Legendre panels in
/// log t. The gamma value is supplied so the oracle does not depend on the
/// library's special-function module.
inline cplx r3_theta_quadrature(cplx s, const Mat3& G, Vec3 x, Vec3 eta,
                                const Mat3& L, cplx gamma_s,
                                double t_floor = 0.005) {
  static const double gx[10] = {
      0.0765265211334973, 0.2277858511416451, 0.3737060887154196,
      0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
      0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
      0.9931285991850949};
  static const double gw[10] = {
      0.1527533871307258, 0.1491729864726037, 0.1420961093183821,
      0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
      0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
      0.0176140071391521};

  const Theta3 theta(G, x, eta, L, t_floor);
  // scan down until theta is negligible (no dual-picture shortcuts here)
  double t_min = 0.5;
  while (t_min > t_floor && std::abs(theta(t_min)) > 1e-17) t_min *= 0.5;
  const double t_max = 50.0 / theta.q_min();

  cplx total = 0.0;
  double lo = t_min;
  while (lo < t_max) {
    const double hi = std::min(lo * 2.0, t_max);
    const double mid = 0.5 * (std::log(hi) + std::log(lo));
    const double half = 0.5 * (std::log(hi) - std::log(lo));
    for (int i = 0; i < 10; ++i) {
      for (double sgn : {+1.0, -1.0}) {
        const double u = mid + sgn * half * gx[i];
        total += gw[i] * half * std::exp(s * u) * theta(std::exp(u));
      }
    }
    lo = hi;
  }
  return total / gamma_s;
}

/// Adaptive Simpson quadrature for real-interval integrands.
inline cplx adaptive_simpson(const std::function<cplx(double)>& f, double a,
                             double b, double tol, int depth = 28) {
  struct Rec {
    static cplx go(const std::function<cplx(double)>& f, double a, double b,
                   cplx fa, cplx fm, cplx fb, cplx whole, double tol,
                   int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const cplx flm = f(lm), frm = f(rm);
      const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return go(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
             go(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
    }
  };
  const double m = 0.5 * (a + b);
  const cplx fa = f(a), fm = f(m), fb = f(b);
  const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec::go(f, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace tg::oracle

#endif
