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

#include "torus_greens/special.hpp"

#include <cmath>
#include <limits>

#include "torus_greens/errors.hpp"

namespace tg {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Lanczos g = 7, n = 9 (Godfrey coefficients). Good to ~1e-15 on Re(s) > 0.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

bool is_nonpositive_integer(cplx s, double tol = 1e-13) {
  if (std::abs(s.imag()) > tol) return false;
  const double r = s.real();
  return r < 0.5 && std::abs(r - std::round(r)) < tol;
}

cplx lanczos_gamma_pos(cplx s) {
  // valid for Re(s) > 0
  s -= 1.0;
  cplx a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (s + static_cast<double>(i));
  const cplx t = s + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, s + 0.5) * std::exp(-t) * a;
}

// Lower incomplete gamma by the standard series,
//   gamma(s,x) = x^s e^{-x} sum_k x^k / (s (s+1) ... (s+k)).
// Requires s away from the non-positive integers.
cplx lower_gamma_series(cplx s, double x) {
  cplx term = 1.0 / s;
  cplx sum = term;
  for (int k = 1; k < 600; ++k) {
    term *= x / (s + static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::pow(cplx(x), s) * std::exp(-x) * sum;
}

// Continued fraction for the upper incomplete gamma (modified Lentz),
//   Gamma(s,x) = e^{-x} x^s / (x + 1 - s - 1(1-s)/(x + 3 - s - ...)).
cplx upper_gamma_cf(cplx s, double x) {
  const double tiny = 1e-300;
  cplx b = x + 1.0 - s;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 2000; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cplx delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x) * std::pow(cplx(x), s) * h;
}

// Exact-integer-order fallback: Gamma(-n, x) via E1 and the finite sum
//   Gamma(-n,x) = (-1)^n/n! * ( E1(x) - e^{-x} sum_{k=0}^{n-1} (-1)^k k! x^{-k-1} ).
double exp_int_e1(double x) {
  // E1 = Gamma(0, x), x > 0; series for small x, CF otherwise.
  if (x <= 1.0) {
    // E1(x) = -gamma_E - ln x + sum (-1)^{k+1} x^k / (k k!)
    const double euler = 0.57721566490153286060651209008240243;
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 80; ++k) {
      term *= -x / k;
      const double add = -term / k;
      sum += add;
      if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(sum))) break;
    }
    return -euler - std::log(x) + sum;
  }
  return upper_gamma_cf(cplx(0.0), x).real();
}

cplx upper_gamma_nonpositive_int(int n, double x) {
  // order a = -n, n >= 0
  if (n == 0) return cplx(exp_int_e1(x));
  double fact = 1.0;
  double sum = 0.0, kfact = 1.0, xpow = 1.0 / x;
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      kfact *= k;
      xpow /= x;
    }
    sum += ((k % 2 == 0) ? 1.0 : -1.0) * kfact * xpow;
    fact *= (k + 1);
  }
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  return sgn / fact * (exp_int_e1(x) - std::exp(-x) * sum);
}

}  // namespace

cplx gamma(cplx s) {
  if (is_nonpositive_integer(s))
    throw Error(ErrorKind::PoleAtNonPositiveInteger, "gamma pole");
  if (s.real() >= 0.5) return lanczos_gamma_pos(s);
  // recurrence extension: Gamma(s) = Gamma(s+n) / prod_{k=0}^{n-1} (s+k)
  const int n = static_cast<int>(std::ceil(0.5 - s.real()));
  cplx prod = 1.0;
  for (int k = 0; k < n; ++k) prod *= (s + static_cast<double>(k));
  return lanczos_gamma_pos(s + static_cast<double>(n)) / prod;
}

cplx log_gamma(cplx s) {
  if (is_nonpositive_integer(s))
    throw Error(ErrorKind::PoleAtNonPositiveInteger, "log_gamma pole");
  if (s.real() >= 0.5) {
    cplx z = s - 1.0;
    cplx a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
  }
  const int n = static_cast<int>(std::ceil(0.5 - s.real()));
  cplx logprod = 0.0;
  for (int k = 0; k < n; ++k) logprod += std::log(s + static_cast<double>(k));
  return log_gamma(s + static_cast<double>(n)) - logprod;
}

cplx upper_incomplete_gamma(cplx s, double x) {
  if (x < 0.0) throw Error(ErrorKind::DomainError, "upper gamma needs x >= 0");
  if (x == 0.0) {
    if (s.real() <= 0.0)
      throw Error(ErrorKind::DomainError, "Gamma(s,0) requires Re(s) > 0");
    return gamma(s);
  }
  if (x > 745.0 && s.real() < 300.0) return cplx(0.0);  // e^{-x} underflow

  // integer fallback when the order sits on (or hugs) a non-positive integer
  if (std::abs(s.imag()) < 1e-13 && s.real() < 0.5) {
    const double r = std::round(s.real());
    if (std::abs(s.real() - r) < 1e-12 && r <= 0.0)
      return upper_gamma_nonpositive_int(static_cast<int>(-r), x);
  }

  if (x >= std::abs(s) + 1.0) return upper_gamma_cf(s, x);

  if (s.real() > 0.0 && !is_nonpositive_integer(s))
    return gamma(s) - lower_gamma_series(s, x);

  // small x, Re(s) <= 0: climb to a safe order and recurse downward with
  //   Gamma(a, x) = ( Gamma(a+1, x) - x^a e^{-x} ) / a.
  const int n = static_cast<int>(std::ceil(0.5 - s.real()));
  const cplx stop = s + static_cast<double>(n);  // Re in (0.5, 1.5]
  cplx val = gamma(stop) - lower_gamma_series(stop, x);
  for (int k = n - 1; k >= 0; --k) {
    const cplx a = s + static_cast<double>(k);
    val = (val - std::pow(cplx(x), a) * std::exp(-x)) / a;
  }
  return val;
}

}  // namespace tg
