// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "lzero/error.hpp"

namespace lzero {

// Directed rounding emulated on top of round-to-nearest. The basic
// operations use error-free transformations, so exact results stay exact
// and inexact ones move by a single ulp in the safe direction.
namespace rnd {

inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double dmax = std::numeric_limits<double>::max();
// Below this magnitude fma residuals may be inexact; nudge unconditionally.
inline constexpr double tiny = 0x1p-960;

// Next representable double upward; +inf and NaN are fixed points.
inline double succ(double x) {
    if (std::isnan(x) || x == inf)
        return x;
    if (x == 0)
        return std::numeric_limits<double>::denorm_min();
    auto bits = std::bit_cast<std::uint64_t>(x);
    bits = x > 0 ? bits + 1 : bits - 1;
    return std::bit_cast<double>(bits);
}
inline double pred(double x) { return -succ(-x); }

// libm results (glibc: at most 1 ulp off for the functions used here).
inline double pred2(double x) { return std::isinf(x) ? x : pred(pred(x)); }
inline double succ2(double x) { return std::isinf(x) ? x : succ(succ(x)); }

inline double add_down(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s))
        return (s > 0 && std::isfinite(a) && std::isfinite(b)) ? dmax : s;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return err < 0 ? pred(s) : s;
}
inline double add_up(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s))
        return (s < 0 && std::isfinite(a) && std::isfinite(b)) ? -dmax : s;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return err > 0 ? succ(s) : s;
}

inline double mul_down(double a, double b) {
    if (a == 0 || b == 0)
        return 0.0;
    const double p = a * b;
    if (std::isinf(p))
        return (p > 0 && std::isfinite(a) && std::isfinite(b)) ? dmax : p;
    if (std::fabs(p) < tiny)
        return pred(p);
    return std::fma(a, b, -p) < 0 ? pred(p) : p;
}
inline double mul_up(double a, double b) {
    if (a == 0 || b == 0)
        return 0.0;
    const double p = a * b;
    if (std::isinf(p))
        return (p < 0 && std::isfinite(a) && std::isfinite(b)) ? -dmax : p;
    if (std::fabs(p) < tiny)
        return succ(p);
    return std::fma(a, b, -p) > 0 ? succ(p) : p;
}

inline double div_down(double a, double b) {
    if (a == 0 || std::isinf(b))
        return 0.0;
    const double q = a / b;
    if (std::isinf(q))
        return (q > 0 && std::isfinite(a)) ? dmax : q;
    if (std::fabs(q) < tiny || std::fabs(a) < tiny)
        return pred(q);
    const double r = std::fma(-q, b, a);
    return ((r < 0) != (b < 0) && r != 0) ? pred(q) : q;
}
inline double div_up(double a, double b) {
    if (a == 0 || std::isinf(b))
        return 0.0;
    const double q = a / b;
    if (std::isinf(q))
        return (q < 0 && std::isfinite(a)) ? -dmax : q;
    if (std::fabs(q) < tiny || std::fabs(a) < tiny)
        return succ(q);
    const double r = std::fma(-q, b, a);
    return ((r > 0) == (b > 0) && r != 0) ? succ(q) : q;
}

inline double sqrt_down(double x) {
    const double r = std::sqrt(x);
    if (std::isinf(r) || r == 0)
        return r;
    return std::fma(r, r, -x) > 0 ? pred(r) : r;
}
inline double sqrt_up(double x) {
    const double r = std::sqrt(x);
    if (std::isinf(r) || r == 0)
        return r;
    return std::fma(r, r, -x) < 0 ? succ(r) : r;
}

} // namespace rnd

class Interval {
  public:
    constexpr Interval() = default;
    // Point interval. Implicit so integer and dyadic constants mix freely;
    // decimal literals such as 0.1 are NOT exact and must go through ratio().
    constexpr Interval(double x) : lo_(x), hi_(x) {} // NOLINT
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) [[unlikely]]
            invalid(lo, hi);
    }

    [[nodiscard]] double lo() const { return lo_; }
    [[nodiscard]] double hi() const { return hi_; }
    [[nodiscard]] double mid() const {
        if (lo_ == hi_)
            return lo_;
        if (std::isinf(lo_) || std::isinf(hi_))
            return std::isinf(lo_) && std::isinf(hi_) ? 0.0 : (std::isinf(lo_) ? -rnd::dmax : rnd::dmax);
        return lo_ + (hi_ - lo_) / 2;
    }
    [[nodiscard]] double width() const { return rnd::add_up(hi_, -lo_); }
    [[nodiscard]] double rad() const { return width() / 2; }
    [[nodiscard]] double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    [[nodiscard]] double mig() const { return contains(0.0) ? 0.0 : std::min(std::fabs(lo_), std::fabs(hi_)); }
    [[nodiscard]] bool is_point() const { return lo_ == hi_; }
    [[nodiscard]] bool contains(double x) const { return lo_ <= x && x <= hi_; }
    [[nodiscard]] bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    [[nodiscard]] bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    static Interval ratio(std::int64_t p, std::int64_t q);
    static Interval entire() { return {-rnd::inf, rnd::inf}; }
    static Interval pi() { return {M_PI, rnd::succ(M_PI)}; }
    static Interval half_pi() { return {M_PI_2, rnd::succ(M_PI_2)}; }
    static Interval two_pi() { return {2 * M_PI, rnd::succ(2 * M_PI)}; }
    static Interval e() { return {M_E, rnd::succ(M_E)}; }
    static Interval ln2() { return {M_LN2, rnd::succ(M_LN2)}; }
    static Interval sqrt2() { return {rnd::pred(M_SQRT2), M_SQRT2}; }

    Interval operator-() const { return {-hi_, -lo_}; }
    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);

    friend bool operator==(const Interval&, const Interval&) = default;

  private:
    [[noreturn, gnu::cold, gnu::noinline]] static void invalid(double lo, double hi);
    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return {rnd::add_down(a.lo(), b.lo()), rnd::add_up(a.hi(), b.hi())};
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return {rnd::add_down(a.lo(), -b.hi()), rnd::add_up(a.hi(), -b.lo())};
}
namespace detail {
// a >= 0
inline Interval mul_nonneg(const Interval& a, const Interval& b) {
    if (b.lo() >= 0)
        return {rnd::mul_down(a.lo(), b.lo()), rnd::mul_up(a.hi(), b.hi())};
    if (b.hi() <= 0)
        return {rnd::mul_down(a.hi(), b.lo()), rnd::mul_up(a.lo(), b.hi())};
    return {rnd::mul_down(a.hi(), b.lo()), rnd::mul_up(a.hi(), b.hi())};
}
} // namespace detail

inline Interval operator*(const Interval& a, const Interval& b) {
    if (a.lo() >= 0)
        return detail::mul_nonneg(a, b);
    if (b.lo() >= 0)
        return detail::mul_nonneg(b, a);
    if (a.hi() <= 0)
        return -detail::mul_nonneg(-a, b);
    if (b.hi() <= 0)
        return -detail::mul_nonneg(-b, a);
    const double l = std::min({rnd::mul_down(a.lo(), b.lo()), rnd::mul_down(a.lo(), b.hi()),
                               rnd::mul_down(a.hi(), b.lo()), rnd::mul_down(a.hi(), b.hi())});
    const double h = std::max({rnd::mul_up(a.lo(), b.lo()), rnd::mul_up(a.lo(), b.hi()), rnd::mul_up(a.hi(), b.lo()),
                               rnd::mul_up(a.hi(), b.hi())});
    return {l, h};
}
Interval operator/(const Interval& a, const Interval& b);

inline Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
inline Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
inline Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
inline Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}
// Throws DomainError when the intersection is empty.
Interval intersect(const Interval& a, const Interval& b);

// Certain comparisons: true only if the relation holds for every pair of members.
inline bool certainly_lt(const Interval& a, const Interval& b) { return a.hi() < b.lo(); }
inline bool certainly_le(const Interval& a, const Interval& b) { return a.hi() <= b.lo(); }
inline bool certainly_gt(const Interval& a, const Interval& b) { return a.lo() > b.hi(); }
inline bool certainly_ge(const Interval& a, const Interval& b) { return a.lo() >= b.hi(); }

Interval sqr(const Interval& x);
Interval pow_int(const Interval& x, int n);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval expm1(const Interval& x);
Interval log(const Interval& x);
Interval log1p(const Interval& x);
Interval abs(const Interval& x);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval atan(const Interval& x);
Interval acos(const Interval& x);
Interval asin(const Interval& x);
// Principal argument of x + iy for a box that avoids the non-positive real axis.
Interval atan2(const Interval& y, const Interval& x);

// atan(z)/z and log1p(w)/w, both monotone decreasing on the non-negative axis
// and continuous at 0, so wide arguments still give exact ranges.
Interval atanc(const Interval& z);
Interval log1pc(const Interval& w);

// Algebraic two-sided brackets usable as alternate evaluators; valid for x >= 0.
Interval atan_bracket(const Interval& x);
Interval log1p_bracket(const Interval& x);

// Floor of a real known to lie in the interval; throws if it straddles an integer.
std::int64_t certain_floor(const Interval& x);

std::ostream& operator<<(std::ostream& os, const Interval& x);
std::string to_string(const Interval& x);

} // namespace lzero
