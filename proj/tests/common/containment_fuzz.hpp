// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Containment fuzzing against MPFR at 256 bits: for a random box X, a random
// point x in X and a primitive f, the correctly rounded value of f(x) must lie
// in f(X). Shared by the unit tests and the acceptance run.

#include <cstdint>
#include <random>
#include <string>

#include <mpfr.h>

#include "lzero/interval.hpp"

namespace fuzz {

struct Report {
    std::uint64_t samples = 0;
    std::uint64_t failures = 0;
    std::string first_failure;
};

class Mp {
  public:
    Mp() { mpfr_init2(v, 256); }
    ~Mp() { mpfr_clear(v); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    mpfr_t v;
};

inline bool inside(const mpfr_t x, const lzero::Interval& y) {
    return mpfr_cmp_d(x, y.lo()) >= 0 && mpfr_cmp_d(x, y.hi()) <= 0;
}

inline Report run(std::uint64_t samples, std::uint64_t seed) {
    using namespace lzero;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto rand_box = [&](double lo, double hi) {
        double a = lo + (hi - lo) * unit(gen);
        double b = lo + (hi - lo) * unit(gen);
        if (unit(gen) < 0.3)
            b = a + (hi - lo) * 1e-6 * unit(gen);
        if (a > b)
            std::swap(a, b);
        b = std::min(b, hi);
        return Interval(a, b);
    };
    auto rand_in = [&](const Interval& x) {
        const double t = unit(gen);
        double v = x.lo() + (x.hi() - x.lo()) * t;
        return std::clamp(v, x.lo(), x.hi());
    };
    Report rep;
    Mp a, b, r;
    const char* names[] = {"add", "sub", "mul", "div", "sqrt", "exp", "log", "pow_int", "abs", "min", "max",
                           "sin", "cos", "atan", "log1p", "acos", "asin", "atanc", "log1pc", "sqr"};
    constexpr int nops = 20;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const int op = static_cast<int>(i % nops);
        Interval X, Y, out;
        double x = 0, y = 0;
        int n = 0;
        switch (op) {
        case 0: case 1: case 2: case 9: case 10:
            X = rand_box(-1e3, 1e3); Y = rand_box(-1e3, 1e3); break;
        case 3:
            X = rand_box(-1e3, 1e3); Y = rand_box(0.01, 1e3); if (unit(gen) < 0.5) Y = -Y; break;
        case 4: case 6: X = rand_box(1e-8, 1e4); break;
        case 5: X = rand_box(-700, 700); break;
        case 7: X = rand_box(-3, 3); n = static_cast<int>(gen() % 9) - 2; if (n < 0 && X.contains(0.0)) n = 3; break;
        case 8: case 19: X = rand_box(-50, 50); break;
        case 11: case 12: X = rand_box(-1e4, 1e4); if (unit(gen) < 0.5) X = Interval(X.lo(), std::min(X.hi(), X.lo() + 7 * unit(gen))); break;
        case 13: case 17: X = rand_box(-1e3, 1e3); break;
        case 14: X = rand_box(-0.999, 1e4); break;
        case 15: case 16: X = rand_box(-1, 1); break;
        case 18: X = rand_box(0, 1e3); if (unit(gen) < 0.3) X = rand_box(0, 1e-3); break;
        }
        x = rand_in(X);
        y = rand_in(Y);
        mpfr_set_d(a.v, x, MPFR_RNDN);
        mpfr_set_d(b.v, y, MPFR_RNDN);
        switch (op) {
        case 0: out = X + Y; mpfr_add(r.v, a.v, b.v, MPFR_RNDN); break;
        case 1: out = X - Y; mpfr_sub(r.v, a.v, b.v, MPFR_RNDN); break;
        case 2: out = X * Y; mpfr_mul(r.v, a.v, b.v, MPFR_RNDN); break;
        case 3: out = X / Y; mpfr_div(r.v, a.v, b.v, MPFR_RNDN); break;
        case 4: out = sqrt(X); mpfr_sqrt(r.v, a.v, MPFR_RNDN); break;
        case 5: out = exp(X); mpfr_exp(r.v, a.v, MPFR_RNDN); break;
        case 6: out = log(X); mpfr_log(r.v, a.v, MPFR_RNDN); break;
        case 7:
            out = pow_int(X, n);
            if (n >= 0) mpfr_pow_ui(r.v, a.v, static_cast<unsigned long>(n), MPFR_RNDN);
            else mpfr_pow_si(r.v, a.v, n, MPFR_RNDN);
            break;
        case 8: out = abs(X); mpfr_abs(r.v, a.v, MPFR_RNDN); break;
        case 9: out = min(X, Y); mpfr_min(r.v, a.v, b.v, MPFR_RNDN); break;
        case 10: out = max(X, Y); mpfr_max(r.v, a.v, b.v, MPFR_RNDN); break;
        case 11: out = sin(X); mpfr_sin(r.v, a.v, MPFR_RNDN); break;
        case 12: out = cos(X); mpfr_cos(r.v, a.v, MPFR_RNDN); break;
        case 13: out = atan(X); mpfr_atan(r.v, a.v, MPFR_RNDN); break;
        case 14: out = log1p(X); mpfr_log1p(r.v, a.v, MPFR_RNDN); break;
        case 15: out = acos(X); mpfr_acos(r.v, a.v, MPFR_RNDN); break;
        case 16: out = asin(X); mpfr_asin(r.v, a.v, MPFR_RNDN); break;
        case 17:
            out = atanc(X);
            if (x == 0) mpfr_set_ui(r.v, 1, MPFR_RNDN);
            else { mpfr_atan(r.v, a.v, MPFR_RNDN); mpfr_div(r.v, r.v, a.v, MPFR_RNDN); }
            break;
        case 18:
            out = log1pc(X);
            if (x == 0) mpfr_set_ui(r.v, 1, MPFR_RNDN);
            else { mpfr_log1p(r.v, a.v, MPFR_RNDN); mpfr_div(r.v, r.v, a.v, MPFR_RNDN); }
            break;
        case 19: out = sqr(X); mpfr_sqr(r.v, a.v, MPFR_RNDN); break;
        }
        ++rep.samples;
        if (!inside(r.v, out)) {
            if (rep.failures++ == 0)
                rep.first_failure = std::string(names[op]) + " X=" + to_string(X) + " x=" + std::to_string(x) +
                                    " out=" + to_string(out);
        }
    }
    return rep;
}

} // namespace fuzz
