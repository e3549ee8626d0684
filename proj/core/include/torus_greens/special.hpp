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

#ifndef TORUS_GREENS_SPECIAL_HPP
#define TORUS_GREENS_SPECIAL_HPP

#include <complex>

namespace tg {

using cplx = std::complex<double>;

/// Gamma function for complex order.
///
/// Lanczos approximation for Re(s) > 0, extended to the left half plane by
/// the recurrence Gamma(s) = Gamma(s+n) / (s (s+1) ... (s+n-1)).
/// Relative error below 1e-12 for |s| <= 30.
/// Throws PoleAtNonPositiveInteger at s = 0, -1, -2, ...
cplx gamma(cplx s);

/// log Gamma on the principal branch, same validity as gamma().
cplx log_gamma(cplx s);

/// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for
/// complex order s and real x >= 0. Entire in s for x > 0.
///
/// Series for small x, continued fraction for large x, downward recurrence
/// near the non-positive-integer orders where the series form degenerates.
/// x = 0 requires Re(s) > 0 (DomainError otherwise). Underflow of e^{-x}
/// yields exact 0.
cplx upper_incomplete_gamma(cplx s, double x);

}  // namespace tg

#endif
