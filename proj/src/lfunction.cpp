// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/lfunction.hpp"

#include <algorithm>
#include <cmath>

#include "lzero/special.hpp"

namespace lzero {

namespace {

constexpr int kEmTerms = 25;

// Number of direct summands per residue class for |s| <= smax: the
// Euler-Maclaurin ratio |s + 2M| / (2 pi N) stays below 1/2.
long em_cutoff(double smax) { return static_cast<long>(std::ceil((smax + 2 * kEmTerms) / M_PI)) + 1; }

CInterval disk(double r) { return {Interval(-r, r), Interval(-r, r)}; }

CInterval cpow_neg(const CInterval& s, const Interval& log_base) {
    // base^{-s} for a positive real base given by its logarithm
    return exp(CInterval(-s.re * log_base, -s.im * log_base));
}

// |(s)_{2M}| <= prod_k (|s| + k)
Interval poch_abs_bound(double sabs, int n) {
    Interval p = 1.0;
    for (int k = 0; k < n; ++k)
        p = p * (Interval(sabs) + k);
    return p;
}

bool may_be_one(const CInterval& s) { return s.re.contains(1.0) && s.im.contains(0.0); }

// (e^z - 1) / z by its power series with a geometric tail bound.
CInterval phi_series(const CInterval& z) {
    const double zm = abs(z).hi();
    const int K = std::max(30, static_cast<int>(std::ceil(3 * zm)) + 20);
    CInterval sum(Interval(0.0));
    CInterval term(Interval(1.0)); // z^k / (k+1)!
    for (int k = 0; k < K; ++k) {
        sum += term;
        term = term * z * (Interval(1.0) / Interval(k + 2));
    }
    // |remaining| <= |z|^K/(K+1)! / (1 - |z|/(K+2))
    const double t = abs(term).hi();
    const Interval rem = Interval(t) / (1.0 - Interval(zm) / Interval(K + 2));
    return sum + disk(rem.hi());
}

} // namespace

CInterval hurwitz_zeta(const CInterval& s, const Interval& x) {
    if (may_be_one(s))
        throw PoleProximity("hurwitz_zeta: s may equal 1");
    if (!(x.lo() > 0))
        throw DomainError("hurwitz_zeta requires x > 0");
    const int M = kEmTerms;
    if (!(s.re.lo() + 2 * M - 1 > 0))
        throw DomainError("hurwitz_zeta: real part too negative");
    const double smax = abs(s).hi();
    const long N = em_cutoff(smax);
    CInterval sum(Interval(0.0));
    for (long k = 0; k < N; ++k)
        sum += cpow_neg(s, log(x + Interval(static_cast<double>(k))));
    const Interval w = x + Interval(static_cast<double>(N));
    const Interval lw = log(w);
    const CInterval ws = cpow_neg(s, lw);
    sum += w * ws / (s - CInterval(Interval(1.0)));
    sum += ws * Interval(0.5);
    CInterval poch = s;
    Interval wpow = 1.0 / w;
    for (int j = 1; j <= M; ++j) {
        sum += (bernoulli_over_factorial(j) * wpow) * (poch * ws);
        poch = poch * (s + CInterval(Interval(2 * j - 1))) * (s + CInterval(Interval(2 * j)));
        wpow = wpow / sqr(w);
    }
    const Interval r = 4.0 * poch_abs_bound(smax, 2 * M) / pow_int(Interval::two_pi(), 2 * M) *
                       exp(-(s.re.lo() + Interval(2 * M - 1)) * lw) / (s.re.lo() + Interval(2 * M - 1));
    return sum + disk(r.hi());
}

struct LFunction::Expansion {
    double sc = 0, tc = 0, r = 0;
    int K = 0;
    long N = 0;
    bool pole_path = false;
    std::vector<CInterval> main;
    double main_rem = 0;
    // Group 0 carries weight y/q with factor 1/(s-1), group 1 weight 1/2,
    // group 1+j weight (q/y)^{2j-1} with factor B_2j/(2j)! (s)_{2j-1}.
    std::vector<std::vector<CInterval>> grp;
    std::vector<double> grp_rem;
    double em_rem = 0;
};

LFunction::LFunction(const DirichletCharacter& chi) : chi_(chi), q_(chi.modulus()) {
    if (q_ <= 1 || !chi.is_primitive())
        throw NotPrimitive("L-function evaluation needs a primitive character of modulus > 1, got " + chi.label());
    root_ = gauss_root(chi);
    const auto L = static_cast<std::int64_t>(chi.exponent_base());
    angle_.reserve(L);
    for (std::int64_t e = 0; e < L; ++e)
        angle_.push_back(Interval::two_pi() * Interval::ratio(e, L));
    logs_.push_back(Interval(0.0)); // unused slot for m = 0
    halfp_.push_back(Interval(0.0));
}

const Interval& LFunction::log_of(std::uint64_t m) const {
    while (logs_.size() <= m)
        logs_.push_back(log(Interval(static_cast<double>(logs_.size()))));
    return logs_[m];
}

const Interval& LFunction::half_power(std::uint64_t m) const {
    while (halfp_.size() <= m)
        halfp_.push_back(Interval(1.0) / sqrt(Interval(static_cast<double>(halfp_.size()))));
    return halfp_[m];
}

LFunction::Expansion LFunction::expand(double sc, double tc, double r) const {
    ++evals_;
    Expansion ex;
    ex.sc = sc;
    ex.tc = tc;
    ex.r = r;
    const double smax = std::hypot(sc, tc) + r;
    const double sig_lo = sc - r;
    const int M = kEmTerms;
    if (!(sig_lo + 2 * M - 1 > 1))
        throw DomainError("L evaluation: real part too negative");
    ex.N = em_cutoff(smax);
    const std::uint64_t Q = q_;
    const std::uint64_t top = Q * static_cast<std::uint64_t>(ex.N);
    const double xmax = r * std::log(static_cast<double>(top + Q)) * (1 + 1e-12);
    if (r > 0) {
        // smallest K with x^{K+1}/(K+1)! e^x below 1e-17 (capped)
        double term = xmax * std::exp(xmax);
        int K = 0;
        while (K < 40 && term > 1e-17) {
            ++K;
            term *= xmax / (K + 1);
        }
        ex.K = K;
    }
    const int K = ex.K;
    ex.pole_path = std::hypot(sc - 1, tc) - r < 0.5;
    std::vector<Interval> inv(K + 1, Interval(1.0));
    for (int k = 1; k <= K; ++k)
        inv[k] = Interval(1.0) / Interval(k);

    const Interval S(sc), Tt(tc);
    ex.main.assign(K + 1, CInterval(Interval(0.0)));
    Interval msum = 0.0;
    std::vector<CInterval> tk(K + 1);
    auto taylor = [&](const Interval& mag, const Interval& ang, const Interval& lm) {
        tk[0] = mag * expi(ang);
        const Interval nl = -lm;
        for (int k = 1; k <= K; ++k)
            tk[k] = tk[k - 1] * (nl * inv[k]);
    };
    for (std::uint64_t m = 1; m < top; ++m) {
        const auto e = chi_.exponent(m);
        if (!e)
            continue;
        const Interval& lm = log_of(m);
        const Interval mag = sc == 0.5 ? half_power(m) : exp(-S * lm);
        taylor(mag, angle_[*e] - Tt * lm, lm);
        for (int k = 0; k <= K; ++k)
            ex.main[k] += tk[k];
        if (r > 0)
            msum += mag * pow_int(lm, K + 1);
    }
    const int G = 2 + M;
    ex.grp.assign(G, std::vector<CInterval>(K + 1, CInterval(Interval(0.0))));
    std::vector<Interval> gsum(G, Interval(0.0));
    Interval emsum = 0.0;
    const Interval qI(static_cast<double>(Q));
    for (std::uint64_t a = 1; a <= Q; ++a) {
        const auto e = chi_.exponent(a);
        if (!e)
            continue;
        const std::uint64_t y = top + a;
        const Interval& ly = log_of(y);
        const Interval mag = sc == 0.5 ? half_power(y) : exp(-S * ly);
        taylor(mag, angle_[*e] - Tt * ly, ly);
        const Interval yI(static_cast<double>(y));
        const Interval qy = qI / yI;
        const Interval qy2 = sqr(qy);
        Interval w = qy;
        Interval w_last = qy; // (q/y)^{2M-1}
        const Interval lyk = r > 0 ? pow_int(ly, K + 1) : Interval(0.0);
        for (int g = 0; g < G; ++g) {
            Interval wg;
            if (g == 0)
                wg = yI / qI;
            else if (g == 1)
                wg = 0.5;
            else {
                wg = w;
                w_last = w;
                w = w * qy2;
            }
            if (g == 0 && ex.pole_path)
                continue;
            for (int k = 0; k <= K; ++k)
                ex.grp[g][k] += wg * tk[k];
            if (r > 0)
                gsum[g] += wg * mag * lyk;
        }
        emsum += exp(-Interval(sig_lo) * ly) * w_last;
    }
    if (r > 0) {
        // r^{K+1}/(K+1)! e^{xmax}
        Interval f = exp(Interval(xmax));
        for (int k = 1; k <= K + 1; ++k)
            f = f * Interval(r) / Interval(k);
        ex.main_rem = (msum * f).hi();
        ex.grp_rem.resize(G);
        for (int g = 0; g < G; ++g)
            ex.grp_rem[g] = (gsum[g] * f).hi();
    } else {
        ex.grp_rem.assign(G, 0.0);
    }
    const Interval em = 4.0 * poch_abs_bound(smax, 2 * M) / pow_int(Interval::two_pi(), 2 * M) * emsum /
                        (Interval(sig_lo) + Interval(2 * M - 1));
    ex.em_rem = em.hi();
    return ex;
}

CInterval LFunction::eval(const Expansion& ex, const CInterval& delta) const {
    auto horner = [&](const std::vector<CInterval>& c, double rem) {
        CInterval p = c.back();
        for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k)
            p = p * delta + c[k];
        return rem > 0 ? p + disk(rem) : p;
    };
    const CInterval s = CInterval(Interval(ex.sc), Interval(ex.tc)) + delta;
    CInterval v = horner(ex.main, ex.main_rem);
    if (ex.pole_path) {
        // sum_a chi(a) (y/q) y^{-s} / (s-1) = -(1/q) sum_a chi(a) log y phi((1-s) log y),
        // using sum_a chi(a) = 0.
        CInterval pole(Interval(0.0));
        const std::uint64_t top = q_ * static_cast<std::uint64_t>(ex.N);
        const CInterval one_minus_s = CInterval(Interval(1.0)) - s;
        for (std::uint64_t a = 1; a <= q_; ++a) {
            const auto e = chi_.exponent(a);
            if (!e)
                continue;
            const Interval& ly = log_of(top + a);
            pole += expi(angle_[*e]) * (ly * phi_series(one_minus_s * ly));
        }
        v = v - pole * (Interval(1.0) / Interval(static_cast<double>(q_)));
    } else {
        v += horner(ex.grp[0], ex.grp_rem[0]) / (s - CInterval(Interval(1.0)));
    }
    v += horner(ex.grp[1], ex.grp_rem[1]);
    CInterval poch = s;
    for (int j = 1; j <= kEmTerms; ++j) {
        v += (bernoulli_over_factorial(j) * poch) * horner(ex.grp[1 + j], ex.grp_rem[1 + j]);
        poch = poch * (s + CInterval(Interval(2 * j - 1))) * (s + CInterval(Interval(2 * j)));
    }
    return v + disk(ex.em_rem);
}

CInterval LFunction::value(const CInterval& s) const {
    const double sc = s.re.mid(), tc = s.im.mid();
    const CInterval delta = s - CInterval(Interval(sc), Interval(tc));
    const double r = abs(delta).hi();
    return eval(expand(sc, tc, r), delta);
}

LFunction::Segment LFunction::segment(double sigma_lo, double sigma_hi, double t) const {
    if (!(sigma_lo <= sigma_hi))
        throw DomainError("segment: empty sigma range");
    const double sc = sigma_lo + (sigma_hi - sigma_lo) / 2;
    const Interval dl = Interval(sigma_lo) - Interval(sc);
    const Interval dr = Interval(sigma_hi) - Interval(sc);
    const double r = std::max(-dl.lo(), dr.hi());
    const Expansion ex = expand(sc, t, r);
    Segment seg;
    seg.box = eval(ex, CInterval(Interval(dl.lo(), dr.hi()), Interval(0.0)));
    seg.left = eval(ex, CInterval(dl, Interval(0.0)));
    seg.right = eval(ex, CInterval(dr, Interval(0.0)));
    return seg;
}

Interval LFunction::theta(const Interval& t) const {
    const int a = chi_.parity();
    const Interval x = Interval(2 * a + 1) / 4.0;
    const Interval q = Interval(static_cast<double>(q_));
    return -root_.epsilon_arg / 2.0 + t / 2.0 * log(q / Interval::pi()) + lngamma(CInterval(x, t / 2.0)).im;
}

LFunction::Rotated LFunction::hardy_full(const Interval& t) const {
    const CInterval L = value(CInterval(Interval(0.5), t));
    const CInterval z = expi(theta(t)) * L;
    return {z.re, z.im};
}

Interval LFunction::hardy_Z(const Interval& t) const {
    const Rotated z = hardy_full(t);
    if (!z.im.contains(0.0))
        throw Error("ConsistencyFailure", "Hardy Z has nonzero imaginary part at t = " + to_string(t) + " for " +
                                              chi_.label());
    return z.re;
}

CInterval l_value(const CInterval& s, const DirichletCharacter& chi) { return LFunction(chi).value(s); }

CInterval completed_l(const CInterval& s, const DirichletCharacter& chi) {
    const Interval q = Interval(static_cast<double>(chi.modulus()));
    const CInterval half_s(s.re / 2.0, s.im / 2.0);
    const CInterval g = lngamma(half_s + CInterval(Interval(chi.parity()) / 2.0));
    const CInterval f = exp(half_s * log(q / Interval::pi()) + g);
    return f * l_value(s, chi);
}

Interval hardy_Z(const Interval& t, const DirichletCharacter& chi) { return LFunction(chi).hardy_Z(t); }

long nearest_int_toward_zero(double x) {
    const double f = std::floor(x);
    const double d = x - f;
    if (d < 0.5)
        return static_cast<long>(f);
    if (d > 0.5)
        return static_cast<long>(f) + 1;
    return x > 0 ? static_cast<long>(f) : static_cast<long>(f) + 1;
}

Interval l_upper_bound(double sigma, double t, std::uint64_t q, double eta) {
    if (!(eta > 0 && eta <= 0.5))
        throw DomainError("eta must lie in (0, 1/2]");
    if (q <= 1)
        throw DomainError("modulus must exceed 1");
    const Interval S(sigma), E(eta);
    const Interval s1 = sqrt(sqr(S + 1.0) + sqr(Interval(t)));
    const Interval qc = Interval(static_cast<double>(q)) / Interval::two_pi();
    auto pw = [](const Interval& base, const Interval& ex) { return exp(ex * log(base)); };
    if (sigma >= 1 + eta)
        return zeta_real(S);
    if (sigma >= -eta)
        return zeta_real(1.0 + E) * pw(qc * s1, (1.0 + E - S) / 2.0);
    if (sigma >= -0.5)
        return zeta_real(1.0 - S) * pw(qc * s1, 0.5 - S);
    const long k = nearest_int_toward_zero(sigma); // negative here
    Interval prod = 1.0;
    for (long j = 1; j <= -k; ++j)
        prod = prod * sqrt(sqr(S + Interval(static_cast<double>(j - 1))) + sqr(Interval(t)));
    const Interval shifted = sqrt(sqr(S - Interval(static_cast<double>(k)) + 1.0) + sqr(Interval(t)));
    const Interval ex = 0.5 - S + Interval(static_cast<double>(k));
    const Interval shifted_pow = ex.is_point() && ex.lo() == 0 ? Interval(1.0) : pw(shifted, ex);
    return zeta_real(1.0 - S) * pw(qc, 0.5 - S) * shifted_pow * prod;
}

} // namespace lzero
