// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/interval.hpp"

#include <sstream>

namespace lzero {

using rnd::pred;
using rnd::pred2;
using rnd::succ;
using rnd::succ2;

namespace {

Interval from_int(std::int64_t v) {
    const auto d = static_cast<double>(v);
    if (static_cast<std::int64_t>(d) == v && std::fabs(d) < 0x1p62)
        return d;
    return {pred(d), succ(d)};
}

} // namespace

Interval Interval::ratio(std::int64_t p, std::int64_t q) { return from_int(p) / from_int(q); }

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains(0.0))
        throw DomainError("division by an interval containing zero");
    const double l = std::min({rnd::div_down(a.lo(), b.lo()), rnd::div_down(a.lo(), b.hi()),
                               rnd::div_down(a.hi(), b.lo()), rnd::div_down(a.hi(), b.hi())});
    const double h = std::max({rnd::div_up(a.lo(), b.lo()), rnd::div_up(a.lo(), b.hi()), rnd::div_up(a.hi(), b.lo()),
                               rnd::div_up(a.hi(), b.hi())});
    return {l, h};
}

Interval intersect(const Interval& a, const Interval& b) {
    if (!a.intersects(b))
        throw DomainError("empty intersection");
    return {std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

void Interval::invalid(double lo, double hi) {
    throw DomainError("invalid interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

Interval sqr(const Interval& x) { return pow_int(x, 2); }

Interval pow_int(const Interval& x, int n) {
    if (n < 0)
        return Interval(1.0) / pow_int(x, -n);
    if (n == 0)
        return 1.0;
    // Power of a non-negative interval by repeated directed multiplication.
    auto pos_pow = [n](double lo, double hi) {
        double l = 1.0, h = 1.0;
        for (int i = 0; i < n; ++i) {
            l = rnd::mul_down(l, lo);
            h = rnd::mul_up(h, hi);
        }
        // an underflowing mul_down can step below zero
        return Interval(std::max(0.0, l), h);
    };
    if (x.lo() >= 0)
        return pos_pow(x.lo(), x.hi());
    if (x.hi() <= 0) {
        const Interval p = pos_pow(-x.hi(), -x.lo());
        return n % 2 == 0 ? p : -p;
    }
    if (n % 2 == 0)
        return {0.0, pos_pow(0.0, x.mag()).hi()};
    return {-pos_pow(0.0, -x.lo()).hi(), pos_pow(0.0, x.hi()).hi()};
}

Interval sqrt(const Interval& x) {
    if (x.lo() < 0)
        throw DomainError("sqrt of negative interval");
    return {rnd::sqrt_down(x.lo()), rnd::sqrt_up(x.hi())};
}

Interval exp(const Interval& x) {
    const double l = x.lo() == 0 ? 1.0 : std::max(0.0, pred2(std::exp(x.lo())));
    const double h = x.hi() == 0 ? 1.0 : succ2(std::exp(x.hi()));
    return {l, h};
}

Interval expm1(const Interval& x) {
    const double l = x.lo() == 0 ? 0.0 : std::max(-1.0, pred2(std::expm1(x.lo())));
    const double h = x.hi() == 0 ? 0.0 : succ2(std::expm1(x.hi()));
    return {l, h};
}

Interval log(const Interval& x) {
    if (x.lo() <= 0)
        throw DomainError("log of non-positive interval");
    const double l = x.lo() == 1 ? 0.0 : pred2(std::log(x.lo()));
    const double h = x.hi() == 1 ? 0.0 : succ2(std::log(x.hi()));
    return {l, h};
}

Interval log1p(const Interval& x) {
    if (x.lo() <= -1)
        throw DomainError("log1p of interval reaching -1");
    const double l = x.lo() == 0 ? 0.0 : pred2(std::log1p(x.lo()));
    const double h = x.hi() == 0 ? 0.0 : succ2(std::log1p(x.hi()));
    return {l, h};
}

Interval abs(const Interval& x) {
    if (x.lo() >= 0)
        return x;
    if (x.hi() <= 0)
        return -x;
    return {0.0, x.mag()};
}

Interval min(const Interval& a, const Interval& b) { return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())}; }
Interval max(const Interval& a, const Interval& b) { return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())}; }

namespace {

// Range of cos(x + shift) where the extrema of the shifted function sit at
// multiples of pi. k-candidates are widened so a rounding slip can only add
// an extremum, never drop one.
Interval periodic_range(const Interval& x, double offset_over_pi, double (*f)(double)) {
    if (std::isinf(x.lo()) || std::isinf(x.hi()) || x.width() >= 2 * M_PI)
        return {-1.0, 1.0};
    const double slack = 1e-9;
    const double ka = std::ceil(x.lo() / M_PI - offset_over_pi - slack);
    const double kb = std::floor(x.hi() / M_PI - offset_over_pi + slack);
    const double fa = f(x.lo());
    const double fb = f(x.hi());
    double l = std::min(pred2(fa), pred2(fb));
    double h = std::max(succ2(fa), succ2(fb));
    if (kb >= ka) {
        const bool has_even = kb > ka || std::fmod(ka, 2.0) == 0;
        const bool has_odd = kb > ka || std::fmod(ka, 2.0) != 0;
        if (has_even)
            h = 1.0;
        if (has_odd)
            l = -1.0;
    }
    return {std::max(-1.0, l), std::min(1.0, h)};
}

double cos_fn(double v) { return std::cos(v); }
double sin_fn(double v) { return std::sin(v); }

} // namespace

Interval cos(const Interval& x) {
    if (x.is_point() && x.lo() == 0)
        return 1.0;
    return periodic_range(x, 0.0, cos_fn);
}

Interval sin(const Interval& x) {
    if (x.is_point() && x.lo() == 0)
        return 0.0;
    // sin has maxima at pi/2 + 2k pi: shift candidates by one half.
    return periodic_range(x, 0.5, sin_fn);
}

Interval atan(const Interval& x) {
    const Interval hp = Interval::half_pi();
    const double l = x.lo() == 0 ? 0.0 : std::max(-hp.hi(), pred2(std::atan(x.lo())));
    const double h = x.hi() == 0 ? 0.0 : std::min(hp.hi(), succ2(std::atan(x.hi())));
    return {l, h};
}

Interval acos(const Interval& x) {
    if (x.lo() < -1 || x.hi() > 1)
        throw DomainError("acos argument outside [-1, 1]");
    const double l = x.hi() == 1 ? 0.0 : std::max(0.0, pred2(std::acos(x.hi())));
    const double h = x.lo() == -1 ? Interval::pi().hi() : std::min(Interval::pi().hi(), succ2(std::acos(x.lo())));
    return {l, h};
}

Interval asin(const Interval& x) {
    if (x.lo() < -1 || x.hi() > 1)
        throw DomainError("asin argument outside [-1, 1]");
    const Interval hp = Interval::half_pi();
    const double l = x.lo() == 0 ? 0.0 : std::max(-hp.hi(), pred2(std::asin(x.lo())));
    const double h = x.hi() == 0 ? 0.0 : std::min(hp.hi(), succ2(std::asin(x.hi())));
    return {l, h};
}

Interval atan2(const Interval& y, const Interval& x) {
    if (x.lo() > 0)
        return atan(y / x);
    if (y.lo() > 0)
        return Interval::half_pi() - atan(x / y);
    if (y.hi() < 0)
        return -Interval::half_pi() - atan(x / y);
    throw DomainError("argument undefined: box meets the non-positive real axis");
}

namespace {

Interval atanc_point(double z) {
    z = std::fabs(z);
    if (std::isinf(z))
        return 0.0;
    if (z < 1e-4) {
        const Interval z2 = sqr(Interval(z));
        return {(1.0 - z2 / 3.0).lo(), (1.0 - z2 / 3.0 + sqr(z2) / 5.0).hi()};
    }
    return atan(Interval(z)) / z;
}

Interval log1pc_point(double w) {
    if (std::isinf(w))
        return 0.0;
    if (w < 1e-4) {
        const Interval wi(w);
        return {(1.0 - wi / 2.0).lo(), (1.0 - wi / 2.0 + sqr(wi) / 3.0).hi()};
    }
    return log1p(Interval(w)) / w;
}

} // namespace

Interval atanc(const Interval& z) {
    const Interval az = abs(z);
    return {atanc_point(az.hi()).lo(), atanc_point(az.lo()).hi()};
}

Interval log1pc(const Interval& w) {
    if (w.lo() < 0)
        throw DomainError("log1pc expects a non-negative argument");
    return {log1pc_point(w.hi()).lo(), log1pc_point(w.lo()).hi()};
}

Interval atan_bracket(const Interval& x) {
    if (x.lo() < 0)
        throw DomainError("atan_bracket expects x >= 0");
    // Three half-angle reductions bring the argument below tan(pi/16); there
    // the algebraic lower bound 3t/(1+2 sqrt(1+t^2)) and the alternating
    // series upper bound t - t^3/3 + t^5/5 are both sharp.
    auto reduce = [](const Interval& t) { return t / (1.0 + sqrt(1.0 + sqr(t))); };
    auto small = [&](double v) { return reduce(reduce(reduce(Interval(v)))); };
    auto lower = [&](double v) {
        const Interval t = small(v);
        return (8.0 * (3.0 * t / (1.0 + 2.0 * sqrt(1.0 + sqr(t))))).lo();
    };
    auto upper = [&](double v) {
        const Interval t = small(v);
        const Interval t2 = sqr(t);
        return (8.0 * (t * (1.0 - t2 / 3.0 + sqr(t2) / 5.0))).hi();
    };
    if (std::isinf(x.hi()))
        return {lower(x.lo()), Interval::half_pi().hi()};
    return {lower(x.lo()), upper(x.hi())};
}

Interval log1p_bracket(const Interval& x) {
    if (x.lo() < 0)
        throw DomainError("log1p_bracket expects x >= 0");
    const Interval a(x.lo());
    const Interval b(x.hi());
    return {(2.0 * a / (2.0 + a)).lo(), (b * (6.0 + b) / (6.0 + 4.0 * b)).hi()};
}

std::int64_t certain_floor(const Interval& x) {
    const double fl = std::floor(x.lo());
    if (std::floor(x.hi()) != fl)
        throw DomainError("enclosure " + to_string(x) + " straddles an integer");
    return static_cast<std::int64_t>(fl);
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
    std::ostringstream s;
    s.precision(17);
    s << '[' << x.lo() << ", " << x.hi() << ']';
    return os << s.str();
}

std::string to_string(const Interval& x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

} // namespace lzero
