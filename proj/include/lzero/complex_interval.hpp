// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lzero/interval.hpp"

namespace lzero {

// Rectangular complex interval.
struct CInterval {
    Interval re;
    Interval im;

    CInterval() = default;
    CInterval(Interval r) : re(r), im(0.0) {} // NOLINT
    CInterval(Interval r, Interval i) : re(r), im(i) {}

    [[nodiscard]] bool contains_zero() const { return re.contains(0.0) && im.contains(0.0); }
    [[nodiscard]] bool contains(const CInterval& o) const { return re.contains(o.re) && im.contains(o.im); }
    [[nodiscard]] double max_width() const { return std::max(re.width(), im.width()); }
};

inline CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
inline CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
inline CInterval operator-(const CInterval& a) { return {-a.re, -a.im}; }
inline CInterval operator*(const CInterval& a, const CInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CInterval operator*(const Interval& s, const CInterval& z) { return {s * z.re, s * z.im}; }
inline CInterval operator*(const CInterval& z, const Interval& s) { return {s * z.re, s * z.im}; }
inline CInterval& operator+=(CInterval& a, const CInterval& b) { return a = a + b; }
inline CInterval conj(const CInterval& z) { return {z.re, -z.im}; }
inline Interval norm(const CInterval& z) { return sqr(z.re) + sqr(z.im); }
inline Interval abs(const CInterval& z) { return sqrt(norm(z)); }
CInterval operator/(const CInterval& a, const CInterval& b);
inline CInterval hull(const CInterval& a, const CInterval& b) { return {hull(a.re, b.re), hull(a.im, b.im)}; }

// e^{i theta}
CInterval expi(const Interval& theta);
CInterval exp(const CInterval& z);
// Principal logarithm; the box must avoid the non-positive real axis.
CInterval log(const CInterval& z);
// Principal argument; same restriction as log.
Interval arg(const CInterval& z);

// Enclosure of ln Gamma(z) via the Stirling series after shifting to
// Re z >= 10, with a rigorous remainder. Principal branch for Re z > 0; for
// boxes off the real axis, the branch continuous along horizontal lines.
CInterval lngamma(const CInterval& z);
// ln |Gamma(z)| for any z off the non-positive integers.
Interval ln_abs_gamma(const CInterval& z);

// B_{2k} / (2k)! as an enclosure, k >= 1.
Interval bernoulli_over_factorial(int k);

} // namespace lzero
