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

#include "torus_greens/lattice_sum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "torus_greens/errors.hpp"
#include "torus_greens/special.hpp"

namespace tg {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
// exponent beyond which e^{-x} terms cannot affect double accumulation
constexpr double kExpCut = 760.0;

// Compensated (Kahan) accumulator; lattice terms span many magnitudes.
struct Kahan {
  cplx sum{0.0, 0.0};
  cplx comp{0.0, 0.0};

  void add(cplx x) {
    const cplx y = x - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

cplx cpow(double base, cplx e) {
  // base > 0
  return std::exp(e * std::log(base));
}

cplx unit_phase(double angle_2pi) {
  return {std::cos(angle_2pi), std::sin(angle_2pi)};
}

// 1/Gamma(s), entire: zero at the non-positive integers.
cplx inv_gamma(cplx s) {
  if (std::abs(s.imag()) < 1e-13) {
    const double r = s.real();
    if (r < 0.5 && std::abs(r - std::round(r)) < 1e-13) return {0.0, 0.0};
  }
  return 1.0 / gamma(s);
}

template <class F>
void for_shell3(int r, F&& f) {
  using I = std::int64_t;
  if (r == 0) {
    f(I{0}, I{0}, I{0});
    return;
  }
  const I R = r;
  for (I n2 = -R; n2 <= R; ++n2)
    for (I n3 = -R; n3 <= R; ++n3) {
      f(R, n2, n3);
      f(-R, n2, n3);
    }
  for (I n1 = -R + 1; n1 <= R - 1; ++n1)
    for (I n3 = -R; n3 <= R; ++n3) {
      f(n1, R, n3);
      f(n1, -R, n3);
    }
  for (I n1 = -R + 1; n1 <= R - 1; ++n1)
    for (I n2 = -R + 1; n2 <= R - 1; ++n2) {
      f(n1, n2, R);
      f(n1, n2, -R);
    }
}

template <class F>
void for_shell2(int r, F&& f) {
  using I = std::int64_t;
  if (r == 0) {
    f(I{0}, I{0});
    return;
  }
  const I R = r;
  for (I n2 = -R; n2 <= R; ++n2) {
    f(R, n2);
    f(-R, n2);
  }
  for (I n1 = -R + 1; n1 <= R - 1; ++n1) {
    f(n1, R);
    f(n1, -R);
  }
}

bool near_integer_vec(Vec3 v, Vec3& rounded, double tol = 1e-9) {
  rounded = {std::round(v.x), std::round(v.y), std::round(v.z)};
  return std::abs(v.x - rounded.x) < tol && std::abs(v.y - rounded.y) < tol &&
         std::abs(v.z - rounded.z) < tol;
}

bool near_integer_vec(Vec2 v, Vec2& rounded, double tol = 1e-9) {
  rounded = {std::round(v.x), std::round(v.y)};
  return std::abs(v.x - rounded.x) < tol && std::abs(v.y - rounded.y) < tol;
}

void check_singular3(Vec3 x, const Mat3& Lmat, double scale) {
  // nearest lattice point to -x
  const Mat3 LinvT = transpose(inverse(Lmat));
  const Vec3 f = LinvT * x;
  const Vec3 n{-std::round(f.x), -std::round(f.y), -std::round(f.z)};
  const Vec3 v = x + transpose(Lmat) * n;
  if (norm(v) < 1e-10 * scale)
    throw Error(ErrorKind::SingularPoint, "x lies on the lattice");
}

void check_singular2(Vec2 x, const Mat2& Lmat, double scale) {
  const Mat2 LinvT = transpose(inverse(Lmat));
  const Vec2 f = LinvT * x;
  const Vec2 n{-std::round(f.x), -std::round(f.y)};
  const Vec2 v = x + transpose(Lmat) * n;
  if (norm(v) < 1e-10 * scale)
    throw Error(ErrorKind::SingularPoint, "x lies on the lattice");
}

struct ShellStopper {
  double tol;
  int max_shells;
  int consecutive = 0;
  int min_shells = 2;

  // returns true when the truncation rule is satisfied
  bool update(int r, double shell_mag, double acc_mag) {
    if (shell_mag < tol * std::max(acc_mag, 1e-300))
      ++consecutive;
    else
      consecutive = 0;
    return r >= min_shells && consecutive >= 3;
  }
};

}  // namespace

void EvalConfig::validate() const {
  if (!(tol > 0.0) || tol > 1e-2)
    throw Error(ErrorKind::DomainError, "tol must lie in (0, 1e-2]");
  if (max_shells < 1)
    throw Error(ErrorKind::DomainError, "max_shells must be >= 1");
  if (split_lambda < 0.0)
    throw Error(ErrorKind::DomainError, "split_lambda must be positive");
}

namespace detail {

cplx t_kernel_integral(cplx a, double A, double B, double lo, double hi) {
  // 16-point Gauss-Legendre on log-t octave panels.
  static const double gl_x[8] = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
      0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
      0.9445750230732326, 0.9894009349916499};
  static const double gl_w[8] = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
      0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
      0.0622535239386479, 0.0271524594117541};

  auto integrand = [&](double u) -> cplx {
    // t = e^u ; integrand in u is t^a e^{-A t - B/t}
    const double t = std::exp(u);
    const double expo = A * t + (B > 0.0 ? B / t : 0.0);
    if (expo > kExpCut) return {0.0, 0.0};
    return std::exp(a * u - expo);
  };
  auto panel = [&](double u0, double u1) -> cplx {
    const double mid = 0.5 * (u0 + u1);
    const double half = 0.5 * (u1 - u0);
    cplx acc{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
      acc += gl_w[i] * (integrand(mid + half * gl_x[i]) +
                        integrand(mid - half * gl_x[i]));
    }
    return half * acc;
  };

  // anchor panels near the saddle t* = sqrt(B/A) (or 1/A when B = 0)
  double t_anchor = (B > 0.0) ? std::sqrt(B / A) : 1.0 / A;
  t_anchor = std::max(t_anchor, 1e-290);
  cplx total{0.0, 0.0};

  if (hi < std::numeric_limits<double>::infinity()) {
    // finite upper end (the [0, lambda] dual pieces): descend from hi
    double top = hi;
    const double floor_t =
        (B > 0.0) ? std::max(1e-290, B / kExpCut) : hi * 1e-18;
    int guard = 0;
    while (top > std::max(lo, floor_t) && guard++ < 4000) {
      const double bot = std::max(lo, top * 0.5);
      total += panel(std::log(bot), std::log(top));
      if (bot <= lo || bot <= floor_t) break;
      top = bot;
    }
    return total;
  }

  // [lo, inf): ascend; start from lo, finish when e^{-A t} kills the tail
  double bot = std::max(lo, 1e-290);
  const double ceil_t = kExpCut / A;
  int guard = 0;
  while (bot < ceil_t && guard++ < 4000) {
    const double top = std::min(bot * 2.0, ceil_t * 1.0000001);
    total += panel(std::log(bot), std::log(top));
    bot = top;
  }
  return total;
}

SeriesValue eval3(cplx s, const Mat3& G, Vec3 x, Vec3 eta, const Mat3& Lmat,
                  const EvalConfig& cfg) {
  cfg.validate();
  const double detL = std::abs(tg::det(Lmat));
  const double detG = tg::det(G);
  const double scale = std::cbrt(detL);
  check_singular3(x, Lmat, scale);

  const Mat3 LT = transpose(Lmat);
  const Mat3 Linv = inverse(Lmat);
  const Mat3 Ginv = inverse(G);

  Vec3 nu0;
  const bool trivial = near_integer_vec(eta, nu0);

  SeriesValue out;
  out.strategy = cfg.strategy;

  if (cfg.strategy == Strategy::direct) {
    if (!(s.real() > 1.5))
      throw Error(ErrorKind::DomainError,
                  "direct strategy requires Re(s) > 3/2");
    Kahan acc;
    ShellStopper stop{cfg.tol, cfg.max_shells};
    bool converged = false;
    for (int r = 0; r <= cfg.max_shells; ++r) {
      Kahan shell;
      for_shell3(r, [&](std::int64_t n1, std::int64_t n2, std::int64_t n3) {
        const Vec3 n{static_cast<double>(n1), static_cast<double>(n2),
                     static_cast<double>(n3)};
        const Vec3 v = x + LT * n;
        const double Q = dot(v, G * v);
        const cplx chi = unit_phase(kTwoPi * dot(n, eta));
        shell.add(chi * cpow(Q, -s));
      });
      acc.add(shell.sum);
      out.shells_used = r;
      out.last_shell_magnitude = std::abs(shell.sum);
      if (stop.update(r, out.last_shell_magnitude, std::abs(acc.sum))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw Error(ErrorKind::NotConverged,
                  "direct shell budget exhausted at " +
                      std::to_string(cfg.max_shells) + " shells");
    out.value = cfg.c0 * acc.sum;
    return out;
  }

  // Ewald strategy
  const double lam = cfg.split_lambda > 0.0
                         ? cfg.split_lambda
                         : kPi / std::pow(detL * std::sqrt(detG), 2.0 / 3.0);
  if (trivial && std::abs(s - cplx(1.5)) < 1e-8)
    throw Error(ErrorKind::PoleAtS, "zero mode pole at s = 3/2");
  out.pole_flag = trivial;

  const cplx dual_order = cplx(1.5) - s;
  const double pref = std::pow(kPi, 1.5) / (std::sqrt(detG) * detL);

  Kahan direct, dual;
  ShellStopper stop{cfg.tol, cfg.max_shells};
  bool converged = false;
  for (int r = 0; r <= cfg.max_shells; ++r) {
    Kahan shell_d, shell_f;
    for_shell3(r, [&](std::int64_t n1, std::int64_t n2, std::int64_t n3) {
      const Vec3 n{static_cast<double>(n1), static_cast<double>(n2),
                   static_cast<double>(n3)};
      {
        const Vec3 v = x + LT * n;
        const double Q = dot(v, G * v);
        if (lam * Q < kExpCut) {
          const cplx chi = unit_phase(kTwoPi * dot(n, eta));
          shell_d.add(chi * upper_incomplete_gamma(s, lam * Q) * cpow(Q, -s));
        }
      }
      {
        const Vec3 d{eta.x - n.x, eta.y - n.y, eta.z - n.z};
        if (trivial && n.x == nu0.x && n.y == nu0.y && n.z == nu0.z) {
          shell_f.add(cpow(lam, s - 1.5) / (s - 1.5));
          return;
        }
        const Vec3 k = Linv * d;
        const double K = dot(k, Ginv * k);
        const double B = kPi * kPi * K;
        if (B / lam < kExpCut) {
          const cplx phase = unit_phase(-kTwoPi * dot(x, k));
          shell_f.add(phase * cpow(B, s - 1.5) *
                      upper_incomplete_gamma(dual_order, B / lam));
        }
      }
    });
    direct.add(shell_d.sum);
    dual.add(shell_f.sum);
    const double shell_mag = std::abs(shell_d.sum) + pref * std::abs(shell_f.sum);
    const double acc_mag = std::abs(direct.sum + pref * dual.sum);
    out.shells_used = r;
    out.last_shell_magnitude = shell_mag;
    if (stop.update(r, shell_mag, acc_mag)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Error(ErrorKind::NotConverged,
                "ewald shell budget exhausted at " +
                    std::to_string(cfg.max_shells) + " shells");
  out.value = cfg.c0 * (direct.sum + pref * dual.sum) * inv_gamma(s);
  return out;
}

SeriesValue eval2(cplx s, const Mat2& G, Vec2 x, Vec2 eta, const Mat2& Lmat,
                  double offset, const EvalConfig& cfg) {
  cfg.validate();
  const double detL = std::abs(tg::det(Lmat));
  const double detG = tg::det(G);
  const double scale = std::sqrt(detL);
  if (offset == 0.0) check_singular2(x, Lmat, scale);

  const Mat2 LT = transpose(Lmat);
  const Mat2 Linv = inverse(Lmat);
  const Mat2 Ginv = inverse(G);

  Vec2 nu0;
  const bool trivial = near_integer_vec(eta, nu0);

  SeriesValue out;
  out.strategy = cfg.strategy;

  if (cfg.strategy == Strategy::direct) {
    if (!(s.real() > 1.0))
      throw Error(ErrorKind::DomainError, "direct strategy requires Re(s) > 1");
    Kahan acc;
    ShellStopper stop{cfg.tol, cfg.max_shells};
    bool converged = false;
    for (int r = 0; r <= cfg.max_shells; ++r) {
      Kahan shell;
      for_shell2(r, [&](std::int64_t n1, std::int64_t n2) {
        const Vec2 n{static_cast<double>(n1), static_cast<double>(n2)};
        const Vec2 v = x + LT * n;
        const double Q = dot(v, G * v) + offset;
        shell.add(unit_phase(kTwoPi * dot(n, eta)) * cpow(Q, -s));
      });
      acc.add(shell.sum);
      out.shells_used = r;
      out.last_shell_magnitude = std::abs(shell.sum);
      if (stop.update(r, out.last_shell_magnitude, std::abs(acc.sum))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw Error(ErrorKind::NotConverged, "direct shell budget exhausted");
    out.value = cfg.c0 * acc.sum;
    return out;
  }

  const double lam = cfg.split_lambda > 0.0
                         ? cfg.split_lambda
                         : kPi / (detL * std::sqrt(detG));
  if (trivial && offset == 0.0 && std::abs(s - cplx(1.0)) < 1e-8)
    throw Error(ErrorKind::PoleAtS, "zero mode pole at s = 1");
  if (trivial && offset > 0.0) {
    // poles of the continued zero mode sit at s - 1 = 0, -1, -2, ...
    const cplx sm1 = s - 1.0;
    if (std::abs(sm1.imag()) < 1e-8 && sm1.real() < 0.5 &&
        std::abs(sm1.real() - std::round(sm1.real())) < 1e-8)
      throw Error(ErrorKind::PoleAtS, "zero mode pole of the offset series");
  }
  out.pole_flag = trivial;

  const cplx dual_order = cplx(1.0) - s;
  const double pref = kPi / (std::sqrt(detG) * detL);

  Kahan direct, dual;
  ShellStopper stop{cfg.tol, cfg.max_shells};
  bool converged = false;
  for (int r = 0; r <= cfg.max_shells; ++r) {
    Kahan shell_d, shell_f;
    for_shell2(r, [&](std::int64_t n1, std::int64_t n2) {
      const Vec2 n{static_cast<double>(n1), static_cast<double>(n2)};
      {
        const Vec2 v = x + LT * n;
        const double Q = dot(v, G * v) + offset;
        if (lam * Q < kExpCut) {
          const cplx chi = unit_phase(kTwoPi * dot(n, eta));
          shell_d.add(chi * upper_incomplete_gamma(s, lam * Q) * cpow(Q, -s));
        }
      }
      {
        const Vec2 d{eta.x - n.x, eta.y - n.y};
        const bool is_zero_mode =
            trivial && n.x == nu0.x && n.y == nu0.y;
        if (is_zero_mode) {
          if (offset == 0.0) {
            shell_f.add(cpow(lam, s - 1.0) / (s - 1.0));
          } else {
            // int_0^lam t^{s-2} e^{-A t} dt = A^{1-s} (Gamma(s-1) - Gamma(s-1, A lam))
            shell_f.add(cpow(offset, 1.0 - s) *
                        (gamma(s - 1.0) -
                         upper_incomplete_gamma(s - 1.0, offset * lam)));
          }
          return;
        }
        const Vec2 k = Linv * d;
        const double K = dot(k, Ginv * k);
        const double B = kPi * kPi * K;
        if (offset == 0.0) {
          if (B / lam < kExpCut) {
            const cplx phase = unit_phase(-kTwoPi * dot(x, k));
            shell_f.add(phase * cpow(B, s - 1.0) *
                        upper_incomplete_gamma(dual_order, B / lam));
          }
        } else {
          const double saddle = std::sqrt(B / offset);
          const double min_expo = (saddle <= lam)
                                      ? 2.0 * std::sqrt(B * offset)
                                      : offset * lam + B / lam;
          if (min_expo < kExpCut) {
            const cplx phase = unit_phase(-kTwoPi * dot(x, k));
            shell_f.add(phase *
                        t_kernel_integral(s - 1.0, offset, B, 0.0, lam));
          }
        }
      }
    });
    direct.add(shell_d.sum);
    dual.add(shell_f.sum);
    const double shell_mag = std::abs(shell_d.sum) + pref * std::abs(shell_f.sum);
    const double acc_mag = std::abs(direct.sum + pref * dual.sum);
    out.shells_used = r;
    out.last_shell_magnitude = shell_mag;
    if (stop.update(r, shell_mag, acc_mag)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Error(ErrorKind::NotConverged, "ewald shell budget exhausted");
  out.value = cfg.c0 * (direct.sum + pref * dual.sum) * inv_gamma(s);
  return out;
}

SeriesValue eval_icont(cplx s, Vec2 x, Vec2 eta, double y, const Mat2& Lmat,
                       const EvalConfig& cfg) {
  cfg.validate();
  const double detL = std::abs(tg::det(Lmat));
  const double scale = std::sqrt(detL);
  if (y == 0.0) check_singular2(x, Lmat, scale);

  const Mat2 LT = transpose(Lmat);
  const Mat2 Linv = inverse(Lmat);
  const double By = kPi * kPi * y * y;
  const double sqrt_pi = std::sqrt(kPi);

  Vec2 nu0;
  const bool trivial = near_integer_vec(eta, nu0);

  SeriesValue out;
  out.strategy = cfg.strategy;

  // a term with Q = 0 (x exactly on the lattice, y != 0) continues to
  //   J(a, 0, B) = B^a Gamma(-a); the poles there sit at half-integer s
  const auto near_nonneg_int = [](cplx a) {
    return std::abs(a.imag()) < 1e-8 && a.real() > -0.5 &&
           std::abs(a.real() - std::round(a.real())) < 1e-8;
  };

  if (cfg.strategy == Strategy::direct) {
    if (y == 0.0 && !(s.real() > 1.5))
      throw Error(ErrorKind::DomainError,
                  "direct strategy at y = 0 requires Re(s) > 3/2");
    const cplx a = s - 0.5;
    const cplx gamma_a = (y == 0.0) ? gamma(a) : cplx(0.0);
    Kahan acc;
    ShellStopper stop{cfg.tol, cfg.max_shells};
    bool converged = false;
    for (int r = 0; r <= cfg.max_shells; ++r) {
      Kahan shell;
      for_shell2(r, [&](std::int64_t n1, std::int64_t n2) {
        const Vec2 n{static_cast<double>(n1), static_cast<double>(n2)};
        const Vec2 v = x + LT * n;
        const double Q = dot(v, v);
        const cplx chi = unit_phase(kTwoPi * dot(n, eta));
        if (y == 0.0) {
          shell.add(chi * gamma_a * cpow(Q, -a));
        } else if (Q < 1e-30) {
          if (near_nonneg_int(a))
            throw Error(ErrorKind::PoleAtS,
                        "on-lattice term pole at half-integer s");
          shell.add(chi * cpow(By, a) * gamma(-a));
        } else {
          if (2.0 * std::sqrt(Q * By) < kExpCut)
            shell.add(chi * t_kernel_integral(
                                a, Q, By, 0.0,
                                std::numeric_limits<double>::infinity()));
        }
      });
      acc.add(shell.sum);
      out.shells_used = r;
      out.last_shell_magnitude = sqrt_pi * std::abs(shell.sum);
      if (stop.update(r, std::abs(shell.sum), std::abs(acc.sum))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw Error(ErrorKind::NotConverged, "icont direct budget exhausted");
    out.value = cfg.c0 * sqrt_pi * acc.sum;
    return out;
  }

  const double lam =
      cfg.split_lambda > 0.0 ? cfg.split_lambda : kPi / detL;
  if (trivial && y == 0.0 && std::abs(s - cplx(1.5)) < 1e-8)
    throw Error(ErrorKind::PoleAtS, "zero mode pole at s = 3/2");
  out.pole_flag = trivial && y == 0.0;

  const cplx a = s - 0.5;
  const cplx dual_order = cplx(1.5) - s;
  const double pref = std::pow(kPi, 1.5) / detL;

  Kahan direct, dual;
  ShellStopper stop{cfg.tol, cfg.max_shells};
  bool converged = false;
  for (int r = 0; r <= cfg.max_shells; ++r) {
    Kahan shell_d, shell_f;
    for_shell2(r, [&](std::int64_t n1, std::int64_t n2) {
      const Vec2 n{static_cast<double>(n1), static_cast<double>(n2)};
      {
        const Vec2 v = x + LT * n;
        const double Q = dot(v, v);
        if (By > 0.0 && Q < 1e-30) {
          // J_upper(a, 0, B; lam) = B^a (Gamma(-a) - Gamma(-a, B/lam))
          if (near_nonneg_int(a))
            throw Error(ErrorKind::PoleAtS,
                        "on-lattice term pole at half-integer s");
          const cplx chi = unit_phase(kTwoPi * dot(n, eta));
          shell_d.add(chi * cpow(By, a) *
                      (gamma(-a) - upper_incomplete_gamma(-a, By / lam)));
        } else {
          const double saddle = (By > 0.0) ? std::sqrt(By / Q) : 0.0;
          const double min_expo = (saddle >= lam)
                                      ? 2.0 * std::sqrt(Q * By)
                                      : Q * lam + (By > 0.0 ? By / lam : 0.0);
          if (min_expo < kExpCut) {
            const cplx chi = unit_phase(kTwoPi * dot(n, eta));
            if (By == 0.0) {
              shell_d.add(chi * upper_incomplete_gamma(a, lam * Q) *
                          cpow(Q, -a));
            } else {
              shell_d.add(chi *
                          t_kernel_integral(
                              a, Q, By, lam,
                              std::numeric_limits<double>::infinity()));
            }
          }
        }
      }
      {
        const Vec2 d{eta.x - n.x, eta.y - n.y};
        if (trivial && y == 0.0 && n.x == nu0.x && n.y == nu0.y) {
          shell_f.add(cpow(lam, s - 1.5) / (s - 1.5));
          return;
        }
        const Vec2 k = Linv * d;
        const double W = y * y + dot(k, k);
        const double BW = kPi * kPi * W;
        if (BW / lam < kExpCut) {
          const cplx phase = unit_phase(-kTwoPi * dot(x, k));
          shell_f.add(phase * cpow(BW, s - 1.5) *
                      upper_incomplete_gamma(dual_order, BW / lam));
        }
      }
    });
    direct.add(shell_d.sum);
    dual.add(shell_f.sum);
    const double shell_mag =
        sqrt_pi * std::abs(shell_d.sum) + pref * std::abs(shell_f.sum);
    const double acc_mag =
        std::abs(sqrt_pi * direct.sum + pref * dual.sum);
    out.shells_used = r;
    out.last_shell_magnitude = shell_mag;
    if (stop.update(r, shell_mag, acc_mag)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Error(ErrorKind::NotConverged, "icont ewald budget exhausted");
  out.value = cfg.c0 * (sqrt_pi * direct.sum + pref * dual.sum);
  return out;
}

}  // namespace detail

SeriesValue r3(cplx s, const Metric3& M, Vec3 x, const Twist3& twist,
               const Lattice3& L, const EvalConfig& cfg) {
  const Mat3 G = M.M * transpose(M.M);
  const Vec3 eta = reduced_twist(twist, L);
  return detail::eval3(s, G, x, eta, L.matrix(), cfg);
}

SeriesValue r2(cplx s, const Metric2& M, Vec2 x, const Twist2& twist,
               const Lattice2& L, const EvalConfig& cfg) {
  const Mat2 G = M.M * transpose(M.M);
  const Vec2 eta = reduced_twist(twist, L);
  return detail::eval2(s, G, x, eta, L.matrix(), 0.0, cfg);
}

SeriesValue icont(cplx s, Vec2 xi, Vec2 x, double y, const Lattice2& L,
                  const EvalConfig& cfg) {
  const Vec2 eta = reduced_twist(Twist2{xi, IMat2::identity()}, L);
  return detail::eval_icont(s, x, eta, y, L.matrix(), cfg);
}

SeriesValue green3(Vec3 x, const Twist3& twist, const Lattice3& L,
                   GreenMode mode, const EvalConfig& cfg) {
  if (mode == GreenMode::ewald) {
    EvalConfig c = cfg;
    c.strategy = Strategy::ewald;
    return r3(cplx(0.5), Metric3{}, x, twist, L, c);
  }

  cfg.validate();
  const Mat3 Lmat = L.matrix();
  const double detL = std::abs(det(Lmat));
  check_singular3(x, Lmat, std::cbrt(detL));

  const Mat3 Linv = inverse(Lmat);
  const Vec3 eta = reduced_twist(twist, L);
  Vec3 nu0;
  const bool trivial = near_integer_vec(eta, nu0);

  SeriesValue out;
  out.strategy = Strategy::ewald;  // dual-space mode tag reuse
  out.pole_flag = trivial;         // zero mode excluded: zero-mean Green function

  // The 1/k^2 tail converges only through oscillation; max_shells acts as
  // the documented truncation rather than a convergence failure.
  Kahan acc;
  ShellStopper stop{cfg.tol, cfg.max_shells};
  stop.min_shells = 8;
  for (int r = 0; r <= cfg.max_shells; ++r) {
    Kahan shell;
    for_shell3(r, [&](std::int64_t n1, std::int64_t n2, std::int64_t n3) {
      const Vec3 n{static_cast<double>(n1), static_cast<double>(n2),
                   static_cast<double>(n3)};
      if (trivial && n.x == nu0.x && n.y == nu0.y && n.z == nu0.z) return;
      const Vec3 k = Linv * Vec3{eta.x - n.x, eta.y - n.y, eta.z - n.z};
      const double K = dot(k, k);
      shell.add(unit_phase(-kTwoPi * dot(x, k)) / K);
    });
    acc.add(shell.sum);
    out.shells_used = r;
    out.last_shell_magnitude = std::abs(shell.sum) / (kPi * detL);
    if (stop.update(r, std::abs(shell.sum), std::abs(acc.sum))) break;
  }
  out.value = cfg.c0 * acc.sum / (kPi * detL);
  return out;
}

SeriesValue i_from_r(cplx s, const SeriesValue& r) {
  SeriesValue out = r;
  out.value = gamma(s) * r.value;  // throws PoleAtNonPositiveInteger at poles
  return out;
}

SeriesValue r2_complex(cplx s, cplx xi, cplx w, double p, cplx tau,
                       const EvalConfig& cfg) {
  if (!(tau.imag() > 0.0))
    throw Error(ErrorKind::DomainError, "tau must have positive imaginary part");
  const double S = tau.imag();
  const Lattice2 L(1.0, tau.real(), tau.imag());
  const Vec2 x{w.real(), w.imag()};
  // chi(gamma, xi) = exp((pi/S)(gamma conj(xi) - conj(gamma) xi)) = e^{2 pi i n.eta}
  const Vec2 eta{-xi.imag() / S, (tau * std::conj(xi)).imag() / S};
  const double offset = (p * S) * (p * S);
  return detail::eval2(s, Mat2::identity(), x, eta, L.matrix(), offset, cfg);
}

}  // namespace tg
