// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lzero/interval.hpp"

namespace lzero {

// zeta(sigma) for real sigma > 1 by Euler-Maclaurin with four correction
// terms and N = max(20, ceil(10/(sigma-1))) summands. Monotone, so an
// interval argument is handled through its endpoints.
Interval zeta_real(const Interval& sigma);
Interval log_zeta_real(const Interval& sigma);

struct StirlingEnclosure {
    Interval value;   // includes the error radius
    double radius = 0; // the Stirling remainder bound alone
};

// Im ln Gamma(x + iy) for x > -2, y > 0 through the twice-shifted Stirling
// formula with one correction term.
StirlingEnclosure im_lngamma(const Interval& x, const Interval& y);

// g(a,T) = (T/pi) log(q/pi) + (2/pi) Im lnGamma(1/4 + a/2 + iT/2) - main(T),
// i.e. the gamma-factor deviation from the main term, for T >= 5/7.
// Evaluated from a closed form whose pieces are monotone in T.
Interval g_of(int a, const Interval& T);
// Same quantity straight from im_lngamma; looser on wide T, kept as a check.
Interval g_direct(int a, const Interval& T);
// T * g(a, T) written in u = 1/T, defined on u in [0, 7/5] (u = 0 is the
// limit T -> infinity).
Interval tg_scaled(int a, const Interval& u);

// The majorant E(a,d,T) for the variation of Im ln Gamma((sigma+a+iT)/2)
// over sigma in [1/2-d, 1/2+d]; 0 <= d < 9/2, T >= 5/7.
Interval E_of(int a, const Interval& d, const Interval& T);
// T * E(a,d,T) in u = 1/T, u in [0, 7/5].
Interval te_scaled(int a, const Interval& d, const Interval& u);
// The quantity E majorizes, computed from the multi-term complex lnGamma.
Interval calE_exact(int a, const Interval& d, const Interval& T);

// Largest T-width evaluated in one piece by g_of and E_of.
inline constexpr double kMaxTPiece = 0.25;

} // namespace lzero
