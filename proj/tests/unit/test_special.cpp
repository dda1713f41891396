// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "lzero/complex_interval.hpp"
#include "lzero/prover.hpp"
#include "lzero/special.hpp"

using namespace lzero;

// Reference values from tests/oracles/special_values.py (mpmath, 40 digits).

TEST_CASE("zeta_real reference values") {
    CHECK(zeta_real(Interval(2.0)).contains(M_PI * M_PI / 6));
    const Interval pi2 = sqr(Interval::pi()) / 6.0;
    CHECK(zeta_real(Interval(2.0)).intersects(pi2));
    CHECK(zeta_real(Interval(3.0)).contains(1.2020569031595942));
    CHECK(zeta_real(Interval(1.5)).contains(2.6123753486854883));
    CHECK(zeta_real(Interval(12.0)).contains(1.000246086553308));
    const Interval z11 = zeta_real(Interval::ratio(11, 10));
    CHECK(z11.contains(10.584448464950810));
    CHECK(z11.width() <= 1e-10);
    CHECK(zeta_real(Interval(3.0)).width() <= 1e-13);
}

TEST_CASE("zeta_real domain and monotone interval argument") {
    CHECK_THROWS_AS(zeta_real(Interval(1.0)), DomainError);
    CHECK_THROWS_AS(zeta_real(Interval(0.5, 2.0)), DomainError);
    const Interval z = zeta_real(Interval(2.0, 3.0));
    CHECK(z.contains(1.2020569031595942));
    CHECK(z.contains(1.6449340668482264));
    // Log ratio that shows up in the bound assembly tends to 0 for large c.
    const Interval lr = log_zeta_real(Interval(12.0)) - log_zeta_real(Interval(24.0));
    CHECK(lr.lo() >= 0);
    CHECK(lr.hi() <= 1e-3);
}

TEST_CASE("zeta_real cross-check against direct summation at random sigma") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(1.1, 20.0);
    for (int i = 0; i < 100; ++i) {
        const double s = u(gen);
        // Brute-force oracle: partial sum plus the integral tail bracket.
        long double sum = 0;
        const long n0 = 20000;
        for (long n = n0 - 1; n >= 1; --n)
            sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
        const long double tail_lo = std::pow(static_cast<long double>(n0), 1.0L - s) / (s - 1.0L);
        const long double tail_hi = tail_lo + std::pow(static_cast<long double>(n0), -static_cast<long double>(s));
        const Interval z = zeta_real(Interval(s));
        CHECK(z.hi() >= static_cast<double>(sum + tail_lo) * (1 - 1e-15));
        CHECK(z.lo() <= static_cast<double>(sum + tail_hi) * (1 + 1e-15));
        CHECK(z.width() < 1e-10);
    }
}

TEST_CASE("im_lngamma shifted Stirling") {
    const auto r = im_lngamma(Interval(0.25), Interval(0.5));
    CHECK(r.value.contains(-1.1951830098875903));
    CHECK(r.radius < 1e-3);
    const auto r2 = im_lngamma(Interval(0.75), Interval(5.0));
    CHECK(r2.value.contains(3.4419731963545312));
    CHECK_THROWS_AS(im_lngamma(Interval(0.25), Interval(0.0)), DomainError);
}

TEST_CASE("multi-term complex lngamma") {
    const CInterval z = lngamma(CInterval(Interval(2.5), Interval(3.0)));
    CHECK(z.re.contains(-1.4709546103488417));
    CHECK(z.im.contains(2.8226156382607995));
    CHECK(z.max_width() < 1e-12);
    const CInterval w = lngamma(CInterval(Interval(-1.3), Interval(0.7)));
    CHECK(w.im.contains(-5.230630550265983));
    CHECK_THROWS_AS(lngamma(CInterval(Interval(-1.0), Interval(0.0))), DomainError);
}

TEST_CASE("g_of against reference values") {
    struct Ref {
        int a;
        Interval T;
        double value;
    };
    const Ref refs[] = {{0, Interval::ratio(5, 7), 0.054721131883538799}, {0, 1.0, 0.028068350644203806},
                        {0, 2.0, 0.0073326175618792261},                 {0, 10.0, 0.0013270673286976987},
                        {0, 1000.0, 1.3262912697994718e-05},             {1, Interval::ratio(5, 7), -0.012530966026123127},
                        {1, 1.0, 0.00057462164312931895},                {1, 2.0, 0.0061437679770836776},
                        {1, 10.0, 0.0013270673286832404}};
    for (const auto& r : refs) {
        const Interval g = g_of(r.a, r.T);
        INFO(r.a << " " << r.T);
        CHECK(g.contains(r.value));
        CHECK(g.width() < 2e-3);
        CHECK(g_direct(r.a, r.T).contains(r.value));
    }
    CHECK_THROWS_AS(g_of(0, Interval(0.7)), DomainError);
}

TEST_CASE("T g(a,T) tends to 1/(24 pi) for a = 0") {
    const Interval t0 = tg_scaled(0, Interval(0.0));
    CHECK(t0.contains(1.0 / (24 * M_PI)));
    CHECK(t0.width() < 1e-14);
}

TEST_CASE("T g(0,T) on [1, 129/128]") {
    const auto r = enclose_range([](const Box& b) { return b[0] * g_of(0, b[0]); },
                                 Box{Interval(1.0, 129.0 / 128.0)}, 1e-4, 10000);
    CHECK(r.enclosure.lo() >= 0.0213);
    CHECK(r.enclosure.hi() <= 0.0358);
}

TEST_CASE("E against reference values and the quantity it majorizes") {
    struct Ref {
        int a;
        Interval d, T;
        double E, calE;
    };
    const Ref refs[] = {{0, Interval::ratio(3, 10), 1.0, 0.067476343900320308, 0.066998474102798408},
                        {0, 0.5, 1.0, 0.17569927407988379, 0.17521780804719452},
                        {1, 0.25, Interval::ratio(5, 7), 0.021136210628405770, 0.020790401099369107},
                        {0, 2.0, 3.0, 0.62927939233975850, 0.62879628641543295},
                        {1, 4.0, 50.0, 0.15983733060887938, 0.15983506890012840}};
    for (const auto& r : refs) {
        INFO(r.a << " " << r.d << " " << r.T);
        const Interval e = E_of(r.a, r.d, r.T);
        CHECK(e.contains(r.E));
        CHECK(e.width() < 1e-12);
        CHECK(calE_exact(r.a, r.d, r.T).contains(r.calE));
        CHECK(certainly_le(calE_exact(r.a, r.d, r.T), e));
        const Interval te = te_scaled(r.a, r.d, 1.0 / r.T);
        CHECK((te / r.T).contains(r.E));
    }
    // d = 0 closed form: 4 (8 + 6 pi)/45 ((2a+17)^2 + 4T^2)^{-3/2}
    for (int a : {0, 1}) {
        const Interval T(1.7);
        const Interval D = sqr(Interval(2 * a + 17)) + 4.0 * sqr(T);
        const Interval expect = 4.0 * (8.0 + 6.0 * Interval::pi()) / 45.0 / (D * sqrt(D));
        CHECK(E_of(a, Interval(0.0), T).intersects(expect));
        CHECK(E_of(a, Interval(0.0), T).width() < 1e-12);
    }
    CHECK_THROWS_AS(E_of(0, Interval(4.5), Interval(1.0)), DomainError);
}

TEST_CASE("E is monotone in d and dominates the exact variation on a grid") {
    for (int a : {0, 1}) {
        for (double T : {5.0 / 7.0, 1.0, 2.0, 7.5, 40.0, 300.0}) {
            CHECK(certainly_le(E_of(a, Interval(0.3), Interval(T)), E_of(a, Interval(0.5), Interval(T))));
            for (double d : {0.05, 0.5, 1.3, 2.9, 4.4}) {
                const Interval e = E_of(a, Interval(d), Interval(T));
                CHECK(e.lo() > 0);
                CHECK(certainly_le(calE_exact(a, Interval(d), Interval(T)), e));
            }
        }
    }
}

TEST_CASE("g_of subdivides wide T intervals") {
    const Interval g = g_of(0, Interval(1.0, 3.0));
    CHECK(g.contains(0.0073326175618792261));
    CHECK(g.contains(0.028068350644203806));
    CHECK(g.hi() < 0.035);
}
