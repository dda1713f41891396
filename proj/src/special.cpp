// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/special.hpp"

#include <optional>
#include <vector>

#include "lzero/complex_interval.hpp"
#include "lzero/rational.hpp"

namespace lzero {

namespace {

constexpr long kZetaMaxTerms = 4'000'000;

Interval zeta_point(double s) {
    if (!(s > 1))
        throw DomainError("zeta_real requires sigma > 1");
    const double nd = std::max(20.0, std::ceil(10.0 / (s - 1.0)));
    if (nd > kZetaMaxTerms)
        throw DomainError("zeta_real: sigma too close to 1");
    const long N = static_cast<long>(nd);
    const Interval S(s);
    Interval sum = 1.0;
    for (long n = 2; n < N; ++n)
        sum += exp(-S * log(Interval(static_cast<double>(n))));
    const Interval ln = log(Interval(static_cast<double>(N)));
    const Interval Ns = exp(-S * ln); // N^{-s}
    sum += Interval(static_cast<double>(N)) * Ns / (S - 1.0);
    sum += Ns / 2.0;
    // sum_{k=1}^{4} B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
    Interval poch = S; // (s)_{2k-1}
    Interval npow = Ns / static_cast<double>(N);
    for (int k = 1; k <= 4; ++k) {
        sum += bernoulli_over_factorial(k) * poch * npow;
        poch = poch * (S + (2 * k - 1)) * (S + 2 * k);
        npow = npow / (static_cast<double>(N) * static_cast<double>(N));
    }
    // |R| <= 4 |(s)_8| / (2 pi)^8 * N^{-s-7} / (s + 7); poch now holds (s)_9.
    const Interval poch8 = poch / (S + 8.0);
    const Interval r = 4.0 * poch8 / pow_int(Interval::two_pi(), 8) * Ns * pow_int(Interval(static_cast<double>(N)), -7) /
                       (S + 7.0);
    return sum + Interval(-r.hi(), r.hi());
}

} // namespace

Interval zeta_real(const Interval& sigma) {
    if (!(sigma.lo() > 1))
        throw DomainError("zeta_real requires sigma > 1, got " + to_string(sigma));
    if (std::isinf(sigma.hi()))
        return {1.0, zeta_point(sigma.lo()).hi()};
    if (sigma.is_point())
        return zeta_point(sigma.lo());
    return {zeta_point(sigma.hi()).lo(), zeta_point(sigma.lo()).hi()};
}

Interval log_zeta_real(const Interval& sigma) {
    const Interval z = zeta_real(sigma);
    return log(Interval(std::max(1.0, z.lo()), z.hi()));
}

StirlingEnclosure im_lngamma(const Interval& x, const Interval& y) {
    if (!(y.lo() > 0) || !(x.lo() > -2))
        throw DomainError("im_lngamma requires x > -2 and y > 0");
    const Interval x2 = x + 2.0;
    const Interval r2 = sqr(x2) + sqr(y);
    Interval v = y * (log(y) - 1.0) + Interval::half_pi() * (x - 0.5) - (x + 1.5) * atan(x2 / y) - (y / 12.0) / r2 +
                 (y / 2.0) * log1p(sqr(x2 / y)) + atan(x / y) + atan((x + 1.0) / y);
    const Interval rad = (4.0 + 3.0 * Interval::pi()) / 1440.0 / (r2 * sqrt(r2));
    const double rh = rad.hi();
    return {v + Interval(-rh, rh), rh};
}

namespace {

void check_a(int a) {
    if (a != 0 && a != 1)
        throw DomainError("parity a must be 0 or 1");
}

void check_T(const Interval& T) {
    if (T.lo() < Interval::ratio(5, 7).lo())
        throw DomainError("T must be at least 5/7, got " + to_string(T));
}

// Splits T into pieces of width at most kMaxTPiece and hulls f over them.
// Pieces are also kept below T/256 so the relative spread of T stays small.
template <class F>
Interval over_T_pieces(const Interval& T, F&& f) {
    auto piece_width = [](double t) { return std::min(kMaxTPiece, t / 256.0); };
    if (T.width() <= piece_width(T.lo()) || std::isinf(T.hi()))
        return f(T);
    Interval out;
    bool first = true;
    double a = T.lo();
    while (a < T.hi()) {
        const double b = std::min(T.hi(), a + piece_width(a));
        const Interval piece = f(Interval(a, b));
        out = first ? piece : hull(out, piece);
        first = false;
        a = b;
    }
    return out;
}

} // namespace

namespace {

// Value and u-derivative, for centered forms f(U) in f(m) + f'(U)(U - m).
// The second differences in the gamma-factor expressions cancel heavily,
// so plain interval evaluation over a u-box is far too wide.
struct Dual {
    Interval v, d;
};
Dual operator+(const Dual& x, const Dual& y) { return {x.v + y.v, x.d + y.d}; }
Dual operator-(const Dual& x, const Dual& y) { return {x.v - y.v, x.d - y.d}; }
Dual operator+(const Dual& x, const Interval& c) { return {x.v + c, x.d}; }
Dual operator+(const Interval& c, const Dual& x) { return {c + x.v, x.d}; }
Dual operator-(const Dual& x, const Interval& c) { return {x.v - c, x.d}; }
Dual operator*(const Dual& x, const Dual& y) { return {x.v * y.v, x.d * y.v + x.v * y.d}; }
Dual operator*(const Interval& c, const Dual& x) { return {c * x.v, c * x.d}; }
Dual operator*(const Dual& x, const Interval& c) { return {x.v * c, x.d * c}; }
Dual operator/(const Dual& x, const Interval& c) { return {x.v / c, x.d / c}; }
Dual operator/(const Dual& x, const Dual& y) {
    const Interval q = x.v / y.v;
    return {q, (x.d - q * y.d) / y.v};
}
Dual operator/(const Interval& c, const Dual& y) {
    const Interval q = c / y.v;
    return {q, -q * y.d / y.v};
}
Dual& operator+=(Dual& x, const Dual& y) { return x = x + y; }
Dual& operator-=(Dual& x, const Dual& y) { return x = x - y; }
Dual sqr(const Dual& x) { return {sqr(x.v), 2.0 * x.v * x.d}; }
Dual sqrt(const Dual& x) {
    const Interval r = sqrt(x.v);
    return {r, x.d / (2.0 * r)};
}

// Hull of f over the parts of x below and above +-cut (both f variants are
// valid everywhere; the split only picks the tighter one).
template <class Near, class Far>
Interval split_at(const Interval& x, double cut, Near&& near, Far&& far) {
    std::optional<Interval> out;
    auto add = [&](const Interval& v) { out = out ? hull(*out, v) : v; };
    if (x.lo() < -cut)
        add(far(Interval(x.lo(), std::min(x.hi(), -cut))));
    if (x.hi() >= -cut && x.lo() <= cut)
        add(near(Interval(std::max(x.lo(), -cut), std::min(x.hi(), cut))));
    if (x.hi() > cut)
        add(far(Interval(std::max(x.lo(), cut), x.hi())));
    return *out;
}

// d/dx atan(x)/x. Near 0 the alternating series -2x/3 + 4x^3/5 - ... is
// bracketed by its first two partial sums.
Interval atanc_deriv(const Interval& x) {
    return split_at(
        x, 0.5, [](const Interval& y) { return -2.0 / 3.0 * y + Interval(-0.8, 0.8) * pow_int(abs(y), 3); },
        [](const Interval& y) { return (1.0 / (1.0 + sqr(y)) - atanc(y)) / y; });
}

// d/dw log(1+w)/w for w >= 0, with the series -1/2 + 2w/3 - ... near 0.
Interval log1pc_deriv(const Interval& w) {
    return split_at(
        w, 0.5, [](const Interval& y) { return -0.5 + Interval(0.0, 2.0 / 3.0) * abs(y); },
        [](const Interval& y) { return (1.0 / (1.0 + y) - log1pc(y)) / y; });
}

Interval atanc_any(const Interval& x) { return atanc(x); }
Dual atanc_any(const Dual& x) { return {atanc(x.v), atanc_deriv(x.v) * x.d}; }
Interval log1pc_any(const Interval& x) { return log1pc(x); }
Dual log1pc_any(const Dual& x) { return {log1pc(x.v), log1pc_deriv(x.v) * x.d}; }

// Evaluates body over u: directly at a point, otherwise as the intersection
// of the direct and the centered enclosures.
template <class Body>
Interval centered(const Interval& u, Body&& body) {
    const Interval direct = body(u);
    if (u.is_point() || std::isinf(u.hi()))
        return direct;
    const double m = u.mid();
    const Interval c = body(Interval(m));
    const Dual dd = body(Dual{u, Interval(1.0)});
    return intersect(direct, c + dd.d * (u - m));
}

template <class Num>
Num tg_main(int a, const Num& u) {
    const Interval pi = Interval::pi();
    const Interval k1 = Interval(2 * a + 1) / 2.0;
    const Interval k2 = Interval(2 * a + 5) / 2.0;
    const Interval k3 = Interval(2 * a + 9) / 2.0;
    const Interval c3 = Interval(2 * a + 7) / 4.0; // a/2 + 7/4
    const Num w = sqr(k3 * u);
    return 2.0 / pi * (k1 * atanc_any(k1 * u) + k2 * atanc_any(k2 * u) - c3 * k3 * atanc_any(k3 * u)) +
           sqr(k3) / (2.0 * pi) * log1pc_any(w) - (1.0 / (3.0 * pi)) / (w + 1.0);
}

} // namespace

Interval tg_scaled(int a, const Interval& u) {
    check_a(a);
    if (u.lo() < 0)
        throw DomainError("tg_scaled requires u >= 0");
    const Interval pi = Interval::pi();
    const Interval k3 = Interval(2 * a + 9) / 2.0;
    const Interval w = sqr(k3 * u);
    const Interval main = centered(u, [a](const auto& x) { return tg_main(a, x); });
    const Interval err = 2.0 / pi * (8.0 + 6.0 * pi) / 45.0 * sqr(u) / (8.0 * (1.0 + w) * sqrt(1.0 + w));
    return main + Interval(-err.hi(), err.hi());
}

Interval g_of(int a, const Interval& T) {
    check_a(a);
    check_T(T);
    return over_T_pieces(T, [a](const Interval& t) {
        if (std::isinf(t.hi()))
            return tg_scaled(a, Interval(0.0, 1.0 / t.lo())) / t;
        return tg_scaled(a, 1.0 / t) / t;
    });
}

Interval g_direct(int a, const Interval& T) {
    check_a(a);
    check_T(T);
    return over_T_pieces(T, [a](const Interval& t) {
        const Interval x = Interval(2 * a + 1) / 4.0;
        const Interval im = im_lngamma(x, t / 2.0).value;
        return 2.0 / Interval::pi() * im - t / Interval::pi() * (log(t / 2.0) - 1.0) - Interval(2 * a - 1) / 4.0;
    });
}

namespace {

Interval E_piece(int a, const Interval& d, const Interval& T) {
    const Interval pi = Interval::pi();
    const Interval K = (8.0 + 6.0 * pi) / 45.0;
    const Interval A = Interval(2 * a + 17);
    const Interval Ap = A + 2.0 * d;
    const Interval Am = A - 2.0 * d;
    const Interval T2 = 4.0 * sqr(T);
    const Interval DA = sqr(A) + T2, DP = sqr(Ap) + T2, DM = sqr(Am) + T2;
    Interval e = (2.0 * T / 3.0) / DP + (2.0 * T / 3.0) / DM - (4.0 * T / 3.0) / DA;
    e += T / 2.0 * log1p(sqr(A) / T2) - T / 4.0 * log1p(sqr(Ap) / T2) - T / 4.0 * log1p(sqr(Am) / T2);
    e += K / (DP * sqrt(DP)) + K / (DM * sqrt(DM)) + 2.0 * K / (DA * sqrt(DA));
    const Interval twoT = 2.0 * T;
    for (int n : {1, 5, 9, 13}) {
        const Interval c = Interval(2 * a + n);
        e += 2.0 * atan(c / twoT) - atan((c + 2.0 * d) / twoT) - atan((c - 2.0 * d) / twoT);
    }
    e += (Interval(2 * a + 15) + 2.0 * d) / 4.0 * atan(Ap / twoT);
    e += (Interval(2 * a + 15) - 2.0 * d) / 4.0 * atan(Am / twoT);
    e -= Interval(2 * a + 15) / 2.0 * atan(A / twoT);
    return e;
}

void check_d(const Interval& d) {
    if (d.lo() < 0 || d.hi() >= 4.5)
        throw DomainError("d must lie in [0, 9/2), got " + to_string(d));
}

} // namespace

Interval E_of(int a, const Interval& d, const Interval& T) {
    check_a(a);
    check_d(d);
    check_T(T);
    if (std::isinf(T.hi()))
        return te_scaled(a, d, Interval(0.0, (1.0 / Interval(T.lo())).hi())) * Interval(0.0, (1.0 / Interval(T.lo())).hi());
    return over_T_pieces(T, [&](const Interval& t) { return E_piece(a, d, t); });
}

namespace {

template <class Num>
Num te_body(int a, const Interval& d, const Num& u) {
    const Interval pi = Interval::pi();
    const Interval K = (8.0 + 6.0 * pi) / 45.0;
    const Interval A = Interval(2 * a + 17);
    const Interval Ap = A + 2.0 * d;
    const Interval Am = A - 2.0 * d;
    const Num u2 = sqr(u);
    auto rat = [&](const Interval& m) { return sqr(m) * u2 + 4.0; }; // (m^2 + 4T^2) u^2
    // T * atan(n / 2T) = (n/2) atanc(n u / 2)
    auto tat = [&](const Interval& n) { return n / 2.0 * atanc_any(n * u / 2.0); };
    // T * (T/2) log(1 + m^2/4T^2) = (m^2/8) log1pc(m^2 u^2 / 4)
    auto tlog = [&](const Interval& m) { return sqr(m) / 8.0 * log1pc_any(sqr(m) * u2 / 4.0); };
    // T * K / (m^2 + 4T^2)^{3/2} = K u^2 / (m^2 u^2 + 4)^{3/2}
    auto terr = [&](const Interval& m) {
        const Num r = rat(m);
        return K * u2 / (r * sqrt(r));
    };
    Num e = Interval(2.0 / 3.0) / rat(Ap) + Interval(2.0 / 3.0) / rat(Am) - Interval(4.0 / 3.0) / rat(A);
    e += tlog(A) - tlog(Ap) / 2.0 - tlog(Am) / 2.0;
    e += terr(Ap) + terr(Am) + Interval(2.0) * terr(A);
    for (int n : {1, 5, 9, 13}) {
        const Interval c = Interval(2 * a + n);
        e += Interval(2.0) * tat(c) - tat(c + 2.0 * d) - tat(c - 2.0 * d);
    }
    e += (Interval(2 * a + 15) + 2.0 * d) / 4.0 * tat(Ap);
    e += (Interval(2 * a + 15) - 2.0 * d) / 4.0 * tat(Am);
    e -= Interval(2 * a + 15) / 2.0 * tat(A);
    return e;
}

} // namespace

Interval te_scaled(int a, const Interval& d, const Interval& u) {
    check_a(a);
    check_d(d);
    if (u.lo() < 0)
        throw DomainError("te_scaled requires u >= 0");
    return centered(u, [a, &d](const auto& x) { return te_body(a, d, x); });
}

Interval calE_exact(int a, const Interval& d, const Interval& T) {
    check_a(a);
    auto im = [&](const Interval& sigma) { return lngamma(CInterval((sigma + a) / 2.0, T / 2.0)).im; };
    const Interval mid = im(Interval(0.5));
    return abs(im(0.5 + d) - mid + im(0.5 - d) - mid);
}

} // namespace lzero
