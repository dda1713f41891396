// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/bound.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include "lzero/complex_interval.hpp"
#include "lzero/lfunction.hpp"
#include "lzero/special.hpp"

namespace lzero {

using nlohmann::ordered_json;

namespace {

const Interval kHalf(0.5);

ordered_json ij(const Interval& x) { return ordered_json::array({x.lo(), x.hi()}); }

Interval five_sevenths() { return Interval::ratio(5, 7); }

void check_a(int a) {
    if (a != 0 && a != 1)
        throw DomainError("character sign must be 0 or 1");
}

void check_qT(const Interval& q, const Interval& T) {
    if (!(q.lo() > 1))
        throw DomainError("conductor must exceed 1");
    if (T.hi() < five_sevenths().lo())
        throw DomainError("T must be at least 5/7, got " + to_string(T));
}

// Nearest integer, ties toward 0.
long nearest(double x) { return nearest_int_toward_zero(x); }

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v)
        s += (s.empty() ? "" : "; ") + x;
    return s;
}

} // namespace

Interval theorem_error(const Interval& ell) {
    return Interval::ratio(22737, 100000) * ell + 2.0 * log1p(ell) - 0.5;
}

EllMain ell_main_term(const Interval& q, const Interval& T, int a) {
    check_a(a);
    check_qT(q, T);
    const Interval two_pi = Interval::two_pi();
    EllMain r;
    r.ell = log(q * (T + 2.0) / two_pi);
    r.main = T / Interval::pi() * (log(q * T / two_pi) - 1.0) - Interval(1 - 2 * a) / 4.0;
    return r;
}

Interval counting_main_terms(const Interval& q, const Interval& T, int a) {
    check_a(a);
    check_qT(q, T);
    const Interval pi = Interval::pi();
    const Interval x = Interval(2 * a + 1) / 4.0;
    return T / pi * log(q / pi) + 2.0 / pi * lngamma(CInterval(x, T / 2.0)).im;
}

std::string to_string(Regime r) {
    switch (r) {
    case Regime::large:
        return "large";
    case Regime::middle:
        return "middle";
    case Regime::table:
        return "table";
    case Regime::custom:
        return "custom";
    }
    return "?";
}

std::string to_string(BacklundMode m) { return m == BacklundMode::simple ? "simple" : "inelegant"; }

ordered_json BoundParams::to_json() const {
    ordered_json j;
    j["q"] = ij(q);
    j["T"] = ij(T);
    j["a"] = a;
    j["regime"] = to_string(regime);
    j["mode"] = to_string(mode);
    if (c_exact)
        j["c_exact"] = c_exact->str();
    if (r_exact)
        j["r_exact"] = r_exact->str();
    j["c"] = ij(c);
    j["r"] = ij(r);
    j["eta"] = ij(eta);
    j["sigma1"] = ij(sigma1);
    j["delta"] = ij(delta);
    j["ell"] = ij(ell);
    j["J1"] = J1;
    j["J2"] = J2;
    return j;
}

BoundParams params_for_ell(const Interval& ell, Regime regime, BacklundMode mode, const Interval& c, const Interval& r) {
    BoundParams p;
    p.ell = ell;
    p.regime = regime;
    p.mode = mode;
    p.eta = 18.0 / (10.0 + 9.0 * ell);
    switch (regime) {
    case Regime::large:
        if (ell.lo() < Interval::ratio(2702, 100).hi())
            throw RegimeMismatch("large-l parameters need l >= 27.02, got " + to_string(ell));
        p.c = 1.0 + 391.0 / (74.0 * ell + 683.0);
        p.r = Interval(149.0) / 140.0 + 769.0 / (30.0 * ell + 512.0);
        break;
    case Regime::middle:
        if (ell.lo() < Interval::ratio(598, 100).hi() || ell.hi() > 28)
            throw RegimeMismatch("middle-l parameters need 5.98 <= l <= 28, got " + to_string(ell));
        p.c = 1.0 + 505.0 / (111.0 * ell + 430.0);
        p.r = Interval(149.0) / 140.0 + 747.0 / (36.0 * ell + 283.0);
        break;
    default:
        p.c = c;
        p.r = r;
    }
    if (mode == BacklundMode::simple)
        p.sigma1 = p.c + sqr(p.c - kHalf) / p.r;
    else
        p.sigma1 = kHalf + Interval::sqrt2() * (p.c - kHalf);
    p.delta = 2.0 * p.c - p.sigma1 - kHalf;
    return p;
}

std::optional<std::pair<int, int>> table_cr(int a, const Interval& T, int k) {
    // Rows k = 5..9; columns (T, a) for T = 5/7, 1, 2. Zero marks a blank.
    static const int kTable[5][6][2] = {
        {{2822, 5006}, {2896, 5176}, {2886, 5212}, {2961, 5388}, {0, 0}, {0, 0}},
        {{2719, 4694}, {2770, 4836}, {2778, 4902}, {2831, 5046}, {2956, 5481}, {0, 0}},
        {{2640, 4447}, {2677, 4566}, {2694, 4651}, {2734, 4771}, {2861, 5221}, {2906, 5346}},
        {{2577, 4246}, {2606, 4348}, {2628, 4444}, {2660, 4546}, {2785, 5001}, {2822, 5107}},
        {{2527, 4081}, {2550, 4168}, {2575, 4272}, {2600, 4358}, {2723, 4812}, {2753, 4904}},
    };
    if (k < 5 || k > 9 || (a != 0 && a != 1))
        return std::nullopt;
    int col = -1;
    if (T == five_sevenths())
        col = 0;
    else if (T == Interval(1.0))
        col = 1;
    else if (T == Interval(2.0))
        col = 2;
    if (col < 0)
        return std::nullopt;
    const auto& e = kTable[k - 5][2 * col + a];
    if (e[0] == 0)
        return std::nullopt;
    return std::make_pair(e[0], e[1]);
}

BoundParams select_params(const Interval& q, const Interval& T, int a, Regime regime, int k, std::optional<Rational> c,
                          std::optional<Rational> r, BacklundMode custom_mode) {
    const EllMain em = ell_main_term(q, T, a);
    BoundParams p;
    switch (regime) {
    case Regime::large:
    case Regime::middle:
        p = params_for_ell(em.ell, regime, BacklundMode::simple);
        break;
    case Regime::table: {
        const auto cr = table_cr(a, T, k);
        if (!cr)
            throw RegimeMismatch("no stored (c, r) for a = " + std::to_string(a) + ", T = " + to_string(T) +
                                 ", k = " + std::to_string(k));
        c = Rational(cr->first, 2048);
        r = Rational(cr->second, 2048);
        p = params_for_ell(em.ell, regime, BacklundMode::inelegant, c->to_interval(), r->to_interval());
        break;
    }
    case Regime::custom:
        if (!c || !r)
            throw DomainError("custom parameters need both c and r");
        p = params_for_ell(em.ell, regime, custom_mode, c->to_interval(), r->to_interval());
        break;
    }
    p.c_exact = c;
    p.r_exact = r;
    p.q = q;
    p.T = T;
    p.a = a;
    return p;
}

std::vector<std::string> check_jensen_chain(const BoundParams& p) {
    std::vector<std::string> bad;
    auto need = [&](bool ok, const char* what) {
        if (!ok)
            bad.emplace_back(what);
    };
    need(p.eta.lo() > 0 && p.eta.hi() <= 0.5, "0 < eta <= 1/2");
    need(certainly_le(1.0 + p.eta, p.c), "1 + eta <= c");
    need(certainly_lt(p.c, p.r - p.eta), "c < r - eta");
    need(certainly_lt(p.c - p.r, kHalf), "c - r < 1/2");
    need(certainly_lt(p.c, p.sigma1) && certainly_lt(p.sigma1, p.c + p.r), "c < sigma1 < c + r");
    return bad;
}

std::vector<std::string> check_mode(const BoundParams& p) {
    std::vector<std::string> bad;
    auto need = [&](bool ok, const char* what) {
        if (!ok)
            bad.emplace_back(what);
    };
    if (p.mode == BacklundMode::simple) {
        need(p.c.lo() > 1, "c > 1");
        need(certainly_lt(p.c, p.r), "c < r");
        need(p.delta.lo() >= 0 && p.delta.hi() < 4.5, "0 <= delta < 9/2");
    } else {
        need(certainly_gt(p.r, (1.0 + Interval::sqrt2()) * (p.c - kHalf)), "r > (1 + sqrt2)(c - 1/2)");
        need(p.c.lo() > 1, "c > 1");
        need(p.delta.lo() >= 0.25, "delta >= 1/4");
        need(certainly_lt(p.delta, p.sigma1), "delta < sigma1");
        need(p.sigma1.hi() < 4.5, "sigma1 < 9/2");
    }
    return bad;
}

Interval theta_sigma(const Interval& sigma, const Interval& c, const Interval& r) {
    if (!(r.lo() > 0))
        throw DomainError("theta_sigma needs r > 0");
    const Interval x = (sigma - c) / r;
    if (x.lo() >= 1)
        return Interval(0.0);
    if (x.hi() <= -1)
        return Interval::pi();
    return acos(Interval(std::max(-1.0, x.lo()), std::min(1.0, x.hi())));
}

namespace {

// log of ((j + sigma)^2 + (t + T)^2) / (T + 2)^2
Interval Lj(int j, const Interval& sigma, const Interval& t, const Interval& T) {
    return log(sqr(sigma + static_cast<double>(j)) + sqr(t + T)) - 2.0 * log(T + 2.0);
}

// d/dtheta of Lj given dsigma and dt
Interval dLj(int j, const Interval& sigma, const Interval& t, const Interval& T, const Interval& ds,
             const Interval& dt) {
    const Interval a = sigma + static_cast<double>(j), b = t + T;
    return 2.0 * (a * ds + b * dt) / (sqr(a) + sqr(b));
}

enum class Branch { right, middle, left };

// Pieces of F on a sigma sub-box known to lie in one branch (and, for the
// left branch, one value n of [sigma]).
struct BranchEval {
    const BoundParams& p;
    Interval log_zeta_1eta;

    // The part of F that is monotone along the circle: log zeta(sigma),
    // log zeta(1+eta) or log zeta(1-sigma).
    [[nodiscard]] Interval mono(Branch b, const Interval& sigma) const {
        switch (b) {
        case Branch::right:
            return log_zeta_real(sigma);
        case Branch::middle:
            return log_zeta_1eta;
        case Branch::left:
            return log_zeta_real(1.0 - sigma);
        }
        return {};
    }
    // The rest of F.
    [[nodiscard]] Interval smooth(Branch b, long n, const Interval& sigma, const Interval& t) const {
        switch (b) {
        case Branch::right:
            return Interval(0.0);
        case Branch::middle: {
            const Interval w = 1.0 + p.eta - sigma;
            return w * (p.ell / 2.0 + Lj(1, sigma, t, p.T) / 4.0);
        }
        case Branch::left: {
            const Interval w = 1.0 - 2.0 * sigma;
            Interval v = w / 2.0 * p.ell + (w + 2.0 * static_cast<double>(n)) / 4.0 * Lj(static_cast<int>(1 - n), sigma, t, p.T);
            Interval s = 0.0;
            for (long k = 1; k <= -n; ++k)
                s += Lj(static_cast<int>(k - 1), sigma, t, p.T);
            return v + s / 2.0;
        }
        }
        return {};
    }
    // d/dtheta of smooth(), with sigma' = -r sin, t' = r cos on [0, pi].
    [[nodiscard]] Interval dsmooth(Branch b, long n, const Interval& sigma, const Interval& t, const Interval& ds,
                                   const Interval& dt) const {
        switch (b) {
        case Branch::right:
            return Interval(0.0);
        case Branch::middle: {
            const Interval w = 1.0 + p.eta - sigma;
            return -ds * (p.ell / 2.0 + Lj(1, sigma, t, p.T) / 4.0) + w / 4.0 * dLj(1, sigma, t, p.T, ds, dt);
        }
        case Branch::left: {
            const int j = static_cast<int>(1 - n);
            const Interval w = 1.0 - 2.0 * sigma + 2.0 * static_cast<double>(n);
            Interval v = -ds * p.ell - ds / 2.0 * Lj(j, sigma, t, p.T) + w / 4.0 * dLj(j, sigma, t, p.T, ds, dt);
            Interval s = 0.0;
            for (long k = 1; k <= -n; ++k)
                s += dLj(static_cast<int>(k - 1), sigma, t, p.T, ds, dt);
            return v + s / 2.0;
        }
        }
        return {};
    }

    // Every (branch, n, sigma sub-box) touched by the sigma enclosure.
    template <class Fn>
    void for_each_branch(const Interval& sigma, Fn&& fn) const {
        const Interval one_eta = 1.0 + p.eta;
        if (sigma.hi() >= one_eta.lo())
            fn(Branch::right, 0L, Interval(std::max(sigma.lo(), one_eta.lo()), sigma.hi()));
        const Interval neg_eta = -p.eta;
        if (sigma.hi() >= neg_eta.lo() && sigma.lo() <= one_eta.hi())
            fn(Branch::middle, 0L,
               Interval(std::max(sigma.lo(), neg_eta.lo()), std::min(sigma.hi(), one_eta.hi())));
        if (sigma.lo() <= neg_eta.hi()) {
            const Interval sl(sigma.lo(), std::min(sigma.hi(), neg_eta.hi()));
            for (long n = nearest(sl.hi()); n >= nearest(sl.lo()); --n) {
                const double lo = std::max(sl.lo(), static_cast<double>(n) - 0.5);
                const double hi = std::min(sl.hi(), static_cast<double>(n) + 0.5);
                if (lo <= hi)
                    fn(Branch::left, std::min(n, 0L), Interval(lo, hi));
            }
        }
    }
};

BranchEval make_eval(const BoundParams& p) { return BranchEval{p, log_zeta_real(1.0 + p.eta)}; }

void require_chain(const BoundParams& p) {
    const auto bad = check_jensen_chain(p);
    if (!bad.empty())
        throw DomainError("parameter chain violated: " + join(bad));
}

} // namespace

Interval F_theta(const Interval& theta, const BoundParams& p) {
    require_chain(p);
    const BranchEval ev = make_eval(p);
    const Interval th = abs(theta);
    const Interval sigma = p.c + p.r * cos(th);
    const Interval t = p.r * abs(sin(th));
    std::optional<Interval> out;
    ev.for_each_branch(sigma, [&](Branch b, long n, const Interval& s) {
        const Interval v = ev.mono(b, s) + ev.smooth(b, n, s, t);
        out = out ? hull(*out, v) : v;
    });
    return *out;
}

Interval Kappas::k6_sum() const {
    Interval s = 0.0;
    for (const auto& x : k6)
        s += x;
    return s;
}

namespace {

// Trigonometric polynomial sum_k C_k cos(k theta) + S_k sin(k theta).
struct TrigPoly {
    static constexpr int D = 8;
    std::array<Interval, D + 1> C{}, S{};

    static TrigPoly constant(const Interval& x) {
        TrigPoly p;
        p.C[0] = x;
        return p;
    }
    static TrigPoly cosine(const Interval& x) {
        TrigPoly p;
        p.C[1] = x;
        return p;
    }
    static TrigPoly sine(const Interval& x) {
        TrigPoly p;
        p.S[1] = x;
        return p;
    }
    TrigPoly operator+(const TrigPoly& o) const {
        TrigPoly p;
        for (int k = 0; k <= D; ++k) {
            p.C[k] = C[k] + o.C[k];
            p.S[k] = S[k] + o.S[k];
        }
        return p;
    }
    TrigPoly operator*(const Interval& x) const {
        TrigPoly p;
        for (int k = 0; k <= D; ++k) {
            p.C[k] = C[k] * x;
            p.S[k] = S[k] * x;
        }
        return p;
    }
    TrigPoly operator*(const TrigPoly& o) const {
        TrigPoly p;
        auto addc = [&](int k, const Interval& v) { p.C[std::abs(k)] += v; };
        auto adds = [&](int k, const Interval& v) {
            if (k > 0)
                p.S[k] += v;
            else if (k < 0)
                p.S[-k] -= v;
        };
        for (int i = 0; i <= D; ++i) {
            for (int j = 0; j <= D; ++j) {
                const bool ci = C[i] != Interval(0.0), si = S[i] != Interval(0.0);
                const bool cj = o.C[j] != Interval(0.0), sj = o.S[j] != Interval(0.0);
                if (!(ci || si) || !(cj || sj))
                    continue;
                if (i + j > D)
                    throw DomainError("trigonometric polynomial degree overflow");
                if (ci && cj) {
                    const Interval v = C[i] * o.C[j] / 2.0;
                    addc(i - j, v);
                    addc(i + j, v);
                }
                if (si && sj) {
                    const Interval v = S[i] * o.S[j] / 2.0;
                    addc(i - j, v);
                    addc(i + j, -v);
                }
                if (ci && sj) { // cos(i) sin(j) = (sin(i+j) - sin(i-j)) / 2
                    const Interval v = C[i] * o.S[j] / 2.0;
                    adds(i + j, v);
                    adds(i - j, -v);
                }
                if (si && cj) { // sin(i) cos(j) = (sin(i+j) + sin(i-j)) / 2
                    const Interval v = S[i] * o.C[j] / 2.0;
                    adds(i + j, v);
                    adds(i - j, v);
                }
            }
        }
        return p;
    }
    // Exact integral over [A, B], enclosed over all endpoints in A and B.
    [[nodiscard]] Interval integrate(const Interval& A, const Interval& B) const {
        Interval v = C[0] * (B - A);
        for (int k = 1; k <= D; ++k) {
            if (C[k] == Interval(0.0) && S[k] == Interval(0.0))
                continue;
            const double kd = k;
            v += (C[k] * (sin(kd * B) - sin(kd * A)) - S[k] * (cos(kd * B) - cos(kd * A))) / kd;
        }
        return v;
    }
};

// L*_j = 2t - 4 + (7/19)((j + sigma)^2 + (t - 2)^2), sigma = c + r cos, t = r sin.
TrigPoly Lstar(int j, const BoundParams& p) {
    const TrigPoly a = TrigPoly::constant(p.c + static_cast<double>(j)) + TrigPoly::cosine(p.r);
    const TrigPoly b = TrigPoly::constant(Interval(-2.0)) + TrigPoly::sine(p.r);
    const Interval k = Interval::ratio(7, 19);
    return TrigPoly::sine(2.0 * p.r) + TrigPoly::constant(Interval(-4.0)) + (a * a + b * b) * k;
}

TrigPoly sigma_poly(const BoundParams& p) { return TrigPoly::constant(p.c) + TrigPoly::cosine(p.r); }

} // namespace

Kappas kappas(const BoundParams& p) {
    if (p.J1 < 1 || p.J2 < 1)
        throw DomainError("J1 and J2 must be positive");
    require_chain(p);
    const Interval pi = Interval::pi();
    const Interval th_1eta = theta_sigma(1.0 + p.eta, p.c, p.r);
    const Interval th_meta = theta_sigma(-p.eta, p.c, p.r);
    const Interval th_half = theta_sigma(Interval(-0.5), p.c, p.r);
    const Interval th_1c = theta_sigma(1.0 - p.c, p.c, p.r);
    Kappas k;
    k.k1 = (th_meta - th_1eta) * (1.0 + p.eta - p.c) / 2.0 - (pi - th_meta) * (p.c - kHalf) +
           p.r * (sin(th_meta) + sin(th_1eta)) / 2.0;

    Interval s2 = 0.0;
    for (int j = 1; j < p.J1; ++j)
        s2 += log_zeta_real(p.c + p.r * cos(pi * static_cast<double>(j) / (2.0 * p.J1)));
    k.k2 = pi / (4.0 * p.J1) * (log_zeta_real(p.c + p.r) + 2.0 * s2);

    Interval s3 = 0.0;
    for (int j = 1; j < p.J2; ++j) {
        const Interval f = Interval(static_cast<double>(j)) / static_cast<double>(p.J2);
        s3 += log_zeta_real(1.0 - p.c - p.r * cos(pi * f + (1.0 - f) * th_1c));
    }
    k.k3 = (pi - th_1c) / (2.0 * p.J2) * (log_zeta_real(1.0 - p.c + p.r) + 2.0 * s3);

    const TrigPoly sig = sigma_poly(p);
    const TrigPoly L1 = Lstar(1, p);
    const TrigPoly w4 = TrigPoly::constant(1.0 + p.eta) + sig * Interval(-1.0);
    k.k4 = (w4 * L1).integrate(th_1eta, th_meta) / 4.0;
    const TrigPoly w5 = TrigPoly::constant(Interval(1.0)) + sig * Interval(-2.0);
    k.k5 = (w5 * L1).integrate(th_meta, th_half) / 4.0;
    for (int j = 1;; ++j) {
        // kappa_{6,j} vanishes once -j + 1/2 <= c - r.
        if (certainly_le(Interval(0.5 - j), p.c - p.r))
            break;
        if (j > 64)
            throw DomainError("kappa_6 series does not terminate");
        const TrigPoly w = TrigPoly::constant(Interval(1.0 - 2.0 * j)) + sig * Interval(-2.0);
        TrigPoly integrand = w * Lstar(j + 1, p);
        for (int kk = 1; kk <= j; ++kk)
            integrand = integrand + Lstar(kk - 1, p) * Interval(2.0);
        const Interval A = theta_sigma(Interval(0.5 - j), p.c, p.r);
        const Interval B = theta_sigma(Interval(-0.5 - j), p.c, p.r);
        k.k6.push_back(integrand.integrate(A, B) / 4.0);
    }
    return k;
}

namespace {

std::vector<std::string> lemma_preconditions(const BoundParams& p) {
    auto bad = check_jensen_chain(p);
    if (!certainly_lt(p.c - p.r, 1.0 - p.c) || !certainly_lt(1.0 - p.c, -p.eta))
        bad.emplace_back("c - r < 1 - c < -eta");
    if (theta_sigma(1.0 + p.eta, p.c, p.r).hi() > 2.1)
        bad.emplace_back("theta_{1+eta} <= 2.1");
    if (!certainly_gt(p.r, 2.0 * p.c - 1.0))
        bad.emplace_back("r > 2c - 1");
    return bad;
}

// Lemma-path bound without the (kappa4 + kappa5 + sum kappa6)/(T+2) term.
Interval lemma_fixed(const BoundParams& p, const Kappas& k) {
    const auto bad = lemma_preconditions(p);
    if (!bad.empty())
        throw PreconditionFailure("lemma path: " + join(bad));
    const Interval pi = Interval::pi();
    const Interval th_1eta = theta_sigma(1.0 + p.eta, p.c, p.r);
    const Interval th_meta = theta_sigma(-p.eta, p.c, p.r);
    const Interval th_1c = theta_sigma(1.0 - p.c, p.c, p.r);
    const Interval lz1 = log_zeta_real(1.0 + p.eta);
    const Interval lzc = log_zeta_real(p.c);
    const Interval avg = (lz1 + lzc) / 2.0;
    const Interval right = avg * (th_1eta - pi / 2.0) + pi / (4.0 * p.J1) * lzc + k.k2;
    const Interval left = avg * (th_1c - th_meta) + (pi - th_1c) / (2.0 * p.J2) * lzc + k.k3;
    return k.k1 * p.ell + (th_meta - th_1eta) * lz1 + right + left;
}

} // namespace

Interval jensen_lemmas(const BoundParams& p, const Kappas& k) {
    if (p.T.lo() < five_sevenths().lo())
        throw PreconditionFailure("lemma path needs T >= 5/7");
    return lemma_fixed(p, k) + (k.k4 + k.k5 + k.k6_sum()) / (p.T + 2.0);
}

Interval jensen_quadrature(const BoundParams& p, double tol, long max_pieces, long* pieces_out) {
    require_chain(p);
    const BranchEval ev = make_eval(p);
    const Interval zero(0.0);

    struct Piece {
        double a, b;
        Interval enc;
    };
    auto integrate = [&](double a, double b) {
        const Interval box(a, b);
        const Interval w = Interval(b) - Interval(a);
        const Interval sigma = p.c + p.r * cos(box);
        const Interval t = p.r * abs(sin(box));
        int branches = 0;
        ev.for_each_branch(sigma, [&](Branch, long, const Interval&) { ++branches; });
        if (branches != 1) // straddles a branch boundary: plain range bound
            return w * F_theta(box, p);
        Interval out;
        ev.for_each_branch(sigma, [&](Branch br, long n, const Interval&) {
            // Monotone part: sigma is decreasing in theta, so its range is
            // spanned by the endpoint values.
            const Interval sa = p.c + p.r * cos(Interval(a)), sb = p.c + p.r * cos(Interval(b));
            const Interval mono = br == Branch::middle ? ev.log_zeta_1eta : hull(ev.mono(br, sa), ev.mono(br, sb));
            // Smooth part: midpoint value plus a mean-value remainder,
            // |int S'(xi)(theta - m)| <= wid(S'(box)) w^2 / 8.
            const double m = a + (b - a) / 2;
            const Interval mi(m);
            const Interval sm = ev.smooth(br, n, p.c + p.r * cos(mi), p.r * abs(sin(mi)));
            const Interval ds = -p.r * sin(box), dt = p.r * cos(box);
            const Interval d = ev.dsmooth(br, n, sigma, t, ds, dt);
            const Interval rem = Interval(d.width()) * sqr(w) / 8.0;
            out = w * (mono + sm) + Interval(-rem.hi(), rem.hi());
        });
        return out;
    };

    auto cmp = [](const Piece& x, const Piece& y) { return x.enc.width() < y.enc.width(); };
    std::priority_queue<Piece, std::vector<Piece>, decltype(cmp)> queue(cmp);
    std::vector<double> cuts{0.0, M_PI};
    for (const Interval& s : {1.0 + p.eta, -p.eta})
        cuts.push_back(theta_sigma(s, p.c, p.r).mid());
    for (int j = 0; j < 64 && !certainly_le(Interval(-0.5 - j), p.c - p.r); ++j)
        cuts.push_back(theta_sigma(Interval(-0.5 - j), p.c, p.r).mid());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total_width = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        constexpr int kInitial = 16;
        for (int k = 0; k < kInitial; ++k) {
            const double a = cuts[i] + (cuts[i + 1] - cuts[i]) * k / kInitial;
            const double b = k + 1 == kInitial ? cuts[i + 1] : cuts[i] + (cuts[i + 1] - cuts[i]) * (k + 1) / kInitial;
            if (!(a < b))
                continue;
            Piece pc{a, b, integrate(a, b)};
            total_width += pc.enc.width();
            queue.push(pc);
        }
    }
    long n = static_cast<long>(queue.size());
    while (total_width > tol && n < max_pieces) {
        Piece pc = queue.top();
        const double m = pc.a + (pc.b - pc.a) / 2;
        if (!(pc.a < m && m < pc.b))
            break;
        queue.pop();
        Piece l{pc.a, m, integrate(pc.a, m)}, r{m, pc.b, integrate(m, pc.b)};
        total_width += l.enc.width() + r.enc.width() - pc.enc.width();
        queue.push(l);
        queue.push(r);
        ++n;
    }
    Interval sum = zero;
    while (!queue.empty()) {
        sum += queue.top().enc;
        queue.pop();
    }
    if (pieces_out)
        *pieces_out = n;
    if (sum.width() > tol)
        throw BudgetExceeded("Jensen quadrature reached " + std::to_string(n) + " pieces with width " +
                             std::to_string(sum.width()));
    return sum;
}

JensenResult jensen_integral(const BoundParams& p, double tol, bool try_quadrature) {
    require_chain(p);
    JensenResult res;
    try {
        res.lemmas = jensen_lemmas(p, kappas(p));
    } catch (const PreconditionFailure& e) {
        res.lemma_failure = e.what();
    }
    if (try_quadrature && p.T.width() == 0)
        res.quadrature = jensen_quadrature(p, tol, 2'000'000, &res.pieces);
    if (res.quadrature && (!res.lemmas || res.quadrature->hi() <= res.lemmas->hi())) {
        res.value = *res.quadrature;
        res.path = "quadrature";
    } else if (res.lemmas) {
        res.value = *res.lemmas;
        res.path = "lemmas";
    } else {
        throw PreconditionFailure("no valid Jensen integral path: " + res.lemma_failure);
    }
    return res;
}

Interval S_limit_bound(const BoundParams& p, const Interval& jensen) {
    return log_zeta_real(p.c) - log_zeta_real(2.0 * p.c) + jensen / Interval::pi();
}

ArgBound arg_segment_bound(const BoundParams& p, const Interval& S) {
    const auto bad = check_mode(p);
    if (!bad.empty())
        throw PreconditionFailure(to_string(p.mode) + " Backlund bound: " + join(bad));
    ArgBound out;
    out.log_ratio = log(p.r / (p.c - kHalf));
    out.E_delta = E_of(p.a, p.delta, p.T);
    out.value = Interval::pi() * S / (2.0 * out.log_ratio) + out.E_delta / 2.0;
    out.E_sigma1_minus_E_delta = Interval(0.0);
    if (p.mode == BacklundMode::inelegant) {
        out.E_sigma1_minus_E_delta = E_of(p.a, p.sigma1 - kHalf, p.T) - out.E_delta;
        out.value += out.E_sigma1_minus_E_delta / 2.0 * (1.0 - log(1.0 + Interval::sqrt2()) / out.log_ratio);
    }
    return out;
}

ordered_json BoundReport::to_json() const {
    ordered_json j;
    j["params"] = params.to_json();
    ordered_json k;
    k["kappa1"] = ij(kappa.k1);
    k["kappa2"] = ij(kappa.k2);
    k["kappa3"] = ij(kappa.k3);
    k["kappa4"] = ij(kappa.k4);
    k["kappa5"] = ij(kappa.k5);
    k["kappa6"] = ordered_json::array();
    for (const auto& x : kappa.k6)
        k["kappa6"].push_back(ij(x));
    j["kappas"] = k;
    ordered_json jj;
    jj["value"] = ij(jensen.value);
    jj["path"] = jensen.path;
    if (jensen.quadrature)
        jj["quadrature"] = ij(*jensen.quadrature);
    if (jensen.lemmas)
        jj["lemmas"] = ij(*jensen.lemmas);
    if (!jensen.lemma_failure.empty())
        jj["lemma_failure"] = jensen.lemma_failure;
    jj["pieces"] = jensen.pieces;
    j["jensen_integral"] = jj;
    j["log_zeta_ratio"] = ij(log_zeta_ratio);
    j["S_bound"] = ij(S_bound);
    j["E_delta"] = ij(arg.E_delta);
    j["E_sigma1_minus_E_delta"] = ij(arg.E_sigma1_minus_E_delta);
    j["log_r_over_c_half"] = ij(arg.log_ratio);
    j["arg_bound"] = ij(arg.value);
    j["first_two_terms"] = ij(first_two);
    j["two_over_pi_log_zeta_sigma1"] = ij(two_over_pi_log_zeta_sigma1);
    j["linear_const"] = ij(linear_const);
    j["linear_coef"] = ij(linear_coef);
    j["main_term"] = ij(main_term);
    j["g_abs"] = ij(g_abs);
    j["two_sided"] = ij(two_sided);
    j["total"] = ij(total);
    if (floor_k)
        j["floor_k"] = *floor_k;
    else
        j["floor_k"] = nullptr;
    if (!floor_note.empty())
        j["floor_note"] = floor_note;
    return j;
}

BoundReport assemble_N_bound(const BoundParams& p, double quad_tol) {
    std::vector<std::string> bad = check_jensen_chain(p);
    for (auto& b : check_mode(p))
        bad.push_back(b);
    if (!bad.empty())
        throw PreconditionFailure("parameter audit failed: " + join(bad));
    const Interval pi = Interval::pi();
    BoundReport rep;
    rep.params = p;
    rep.kappa = kappas(p);
    rep.jensen = jensen_integral(p, quad_tol);
    rep.log_zeta_ratio = log_zeta_real(p.c) - log_zeta_real(2.0 * p.c);
    rep.S_bound = rep.log_zeta_ratio + rep.jensen.value / pi;
    rep.arg = arg_segment_bound(p, rep.S_bound);
    rep.first_two = counting_main_terms(p.q, p.T, p.a);
    rep.two_over_pi_log_zeta_sigma1 = 2.0 / pi * log_zeta_real(p.sigma1);
    rep.linear_coef = 1.0 / rep.arg.log_ratio;
    Interval extra = rep.arg.E_delta / 2.0;
    if (p.mode == BacklundMode::inelegant)
        extra += rep.arg.E_sigma1_minus_E_delta / 2.0 * (1.0 - log(1.0 + Interval::sqrt2()) / rep.arg.log_ratio);
    rep.linear_const = rep.first_two + rep.two_over_pi_log_zeta_sigma1 + 2.0 / pi * extra;
    rep.main_term = ell_main_term(p.q, p.T, p.a).main;
    rep.g_abs = abs(rep.first_two - rep.main_term);
    rep.two_sided = rep.g_abs + rep.two_over_pi_log_zeta_sigma1 + 2.0 / pi * rep.arg.value;
    rep.total = rep.first_two + rep.two_over_pi_log_zeta_sigma1 + 2.0 / pi * rep.arg.value;
    const double lo = std::floor(rep.total.lo()), hi = std::floor(rep.total.hi());
    if (lo == hi) {
        rep.floor_k = static_cast<long>(hi);
    } else {
        std::ostringstream os;
        os << "bound enclosure " << rep.total << " straddles " << hi << "; no floor emitted";
        rep.floor_note = os.str();
    }
    return rep;
}

TheoremBound theorem_bound(const Interval& q, const Interval& T, int a) {
    const EllMain em = ell_main_term(q, T, a);
    TheoremBound tb;
    tb.ell = em.ell;
    tb.main = em.main;
    if (em.ell.hi() <= small_ell_limit().lo()) {
        tb.N_zero = true;
        tb.lower = tb.upper = Interval(0.0);
        return tb;
    }
    const Interval err = theorem_error(em.ell);
    tb.upper = em.main + err;
    tb.lower = max(Interval(0.0), em.main - err);
    tb.N_min = static_cast<long>(std::ceil(tb.lower.lo()));
    return tb;
}

namespace {

// sup over l >= 1.567, w = T/(T+2) in [5/19, 1) of
// err(l) + 1/4 - C1 (l + log 2 pi + log w).
Interval large_slack(const Box& b, const Interval& C1) {
    const Interval ell = b[0], w = b[1];
    return theorem_error(ell) + 0.25 - C1 * (ell + log(Interval::two_pi()) + log(w));
}

// l <= 1.567: N = 0, so the slack is |(T/pi)(log(qT/2pi) - 1)| - C1 log qT,
// with log(qT) = l + log 2 pi + log(T/(T+2)). Boxes with q < 2 throughout are
// infeasible.
Interval small_slack(const Box& b, const Interval& C1) {
    const Interval ell = b[0], T = b[1];
    if (T.lo() > (Interval::pi() * exp(ell)).hi() - 2.0)
        return Interval(-1e300);
    const Interval lw = log(T / (T + 2.0));
    const Interval lqT = ell + log(Interval::two_pi()) + lw;
    return abs(T / Interval::pi() * (ell + lw - 1.0)) - C1 * lqT;
}

} // namespace

C2Result derive_C2(double C1, std::size_t budget, const Rational& T_min) {
    const Interval c1(C1);
    const Interval slope = Interval::ratio(22737, 100000);
    if (!(c1.lo() > slope.hi()))
        throw DomainError("C1 must exceed 0.22737");
    if (T_min < Rational(5, 7))
        throw DomainError("T_min must be at least 5/7");
    const Interval t_min = T_min.to_interval();
    C2Result res;
    // Past l* = 2/(C1 - 0.22737) - 1 the large-l slack decreases, so a finite
    // l range suffices.
    res.ell_star = (2.0 / (c1 - slope) - 1.0).hi();
    double ell_top = std::max(2 * res.ell_star + 2, 10.0);
    while (!certainly_lt(slope - c1 + 2.0 / (1.0 + Interval(ell_top)), Interval(0.0)))
        ell_top *= 2;
    const Interval w_lo = t_min / (t_min + 2.0);
    const Box large_dom{Interval(small_ell_limit().lo(), ell_top), Interval(w_lo.lo(), 1.0)};
    const double T_top = (Interval::pi() * exp(small_ell_limit())).hi() - 2.0;
    const double ell_bottom = log(Interval(2.0) * (2.0 + t_min) / Interval::two_pi()).lo();
    const Box small_dom{Interval(ell_bottom, small_ell_limit().hi()), Interval(t_min.lo(), std::max(t_min.lo(), T_top))};

    // Numerical supremum: the large regime peaks at (l*, w = 5/19); the small
    // regime is sampled.
    double est = -1e300;
    const double ls = std::clamp(res.ell_star, small_ell_limit().hi(), ell_top);
    for (double l : {small_ell_limit().hi(), ls, ell_top})
        est = std::max(est, large_slack(Box{Interval(l), Interval(w_lo.lo())}, c1).hi());
    for (int i = 0; i <= 400; ++i) {
        const double l = ell_bottom + (small_ell_limit().hi() - ell_bottom) * i / 400;
        for (int j = 0; j <= 400; ++j) {
            const double T = t_min.lo() + std::max(0.0, T_top - t_min.lo()) * j / 400;
            est = std::max(est, small_slack(Box{Interval(l), Interval(T)}, c1).hi());
        }
    }
    res.estimate = est;
    // Certify the smallest 1e-6 grid value above the estimate that proves.
    double cand = std::ceil(est * 1e6) / 1e6;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const Interval g(cand);
        res.large_proof = prove_upper_bound([&](const Box& b) { return std::make_pair(large_slack(b, c1), g); },
                                            large_dom, budget);
        res.small_proof = prove_upper_bound([&](const Box& b) { return std::make_pair(small_slack(b, c1), g); },
                                            small_dom, budget);
        if (res.large_proof.status == ProofStatus::proved && res.small_proof.status == ProofStatus::proved) {
            res.C2 = cand;
            return res;
        }
        cand += 1e-6 * std::pow(10.0, attempt);
    }
    throw BudgetExceeded("could not certify C2 for C1 = " + std::to_string(C1));
}

Interval assembled_bound(const Interval& ell, const Interval& u, Regime regime) {
    const BoundParams p = params_for_ell(ell, regime, BacklundMode::simple);
    std::vector<std::string> bad = lemma_preconditions(p);
    for (auto& b : check_mode(p))
        bad.push_back(b);
    if (!bad.empty())
        throw PreconditionFailure(join(bad));
    const Interval pi = Interval::pi();
    const Kappas k = kappas(p);
    const Interval lr = log(p.r / (p.c - kHalf));
    const Interval inv_T2 = u / (1.0 + 2.0 * u); // 1/(T+2)
    const Interval J = lemma_fixed(p, k) + (k.k4 + k.k5 + k.k6_sum()) * inv_T2;
    const Interval common = 2.0 / pi * log_zeta_real(p.sigma1) +
                            (log_zeta_real(p.c) - log_zeta_real(2.0 * p.c)) / lr + J / (pi * lr);
    Interval worst;
    for (int a : {0, 1}) {
        const Interval g = abs(tg_scaled(a, u)) * u;
        const Interval E = te_scaled(a, p.delta, u) * u;
        const Interval v = g + E / pi + common;
        worst = a == 0 ? v : max(worst, v);
    }
    return worst;
}

namespace {

PairFunction assembly_pair(Regime reg) {
    return [reg](const Box& b) { return std::make_pair(assembled_bound(b[0], b[1], reg), theorem_error(b[0])); };
}

} // namespace

AssemblyOutcome verify_assembly(double ell_lo, double ell_hi, std::size_t budget) {
    if (!(ell_lo >= 5.98) || !(ell_hi > ell_lo) || !std::isfinite(ell_hi))
        throw DomainError("verify_assembly needs 5.98 <= ell_lo < ell_hi < infinity");
    AssemblyOutcome out;
    out.covered = Interval(ell_lo, ell_hi);
    const Interval u_dom(0.0, Interval::ratio(7, 5).hi());
    bool ok = true;
    const double large_lo = Interval::ratio(2702, 100).hi();
    if (ell_lo < 28) {
        out.middle_domain = Box{Interval(ell_lo, std::min(ell_hi, 28.0)), u_dom};
        out.middle = prove_upper_bound(assembly_pair(Regime::middle), *out.middle_domain, budget);
        ok = ok && out.middle.status == ProofStatus::proved;
    } else {
        out.middle.status = ProofStatus::proved;
        out.middle.reason = "range not used";
    }
    if (ell_hi > large_lo) {
        out.large_domain = Box{Interval(std::max(ell_lo, large_lo), ell_hi), u_dom};
        out.large = prove_upper_bound(assembly_pair(Regime::large), *out.large_domain, budget);
        ok = ok && out.large.status == ProofStatus::proved;
    } else {
        out.large.status = ProofStatus::proved;
        out.large.reason = "range not used";
    }
    out.proved = ok;
    std::ostringstream os;
    os << "covered l in [" << ell_lo << ", " << ell_hi << "] and T >= 5/7; middle-l parameters on l <= 28, large-l "
       << "parameters on l >= 27.02; larger l is not covered";
    out.note = os.str();
    return out;
}

std::string check_assembly_certificate(const AssemblyOutcome& out) {
    std::string err;
    if (out.middle_domain)
        err = check_certificate(out.middle, assembly_pair(Regime::middle), *out.middle_domain);
    if (err.empty() && out.large_domain)
        err = check_certificate(out.large, assembly_pair(Regime::large), *out.large_domain);
    return err;
}

} // namespace lzero
