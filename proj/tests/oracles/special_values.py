# Copyright (c) lzero contributors.
# SPDX-License-Identifier: Apache-2.0
"""Independent high-precision reference values for the special-function tests.

Run with mpmath; the printed numbers are frozen into tests/unit/test_special.cpp.
"""
from mpmath import mp, mpf, zeta, loggamma, im, log, atan, pi, e, catalan

mp.dps = 40


def g(a, T):
    T = mpf(T)
    return 2 / pi * im(loggamma(mpf(1) / 4 + mpf(a) / 2 + 1j * T / 2)) - T / pi * log(T / (2 * e)) - (2 * mpf(a) - 1) / 4


def E(a, d, T):
    a, d, T = mpf(a), mpf(d), mpf(T)
    A = 2 * a + 17
    D = lambda m: m**2 + 4 * T**2
    K = (8 + 6 * pi) / 45
    v = (2 * T / 3) / D(A + 2 * d) + (2 * T / 3) / D(A - 2 * d) - (4 * T / 3) / D(A) + T / 2 * log(1 + A**2 / (4 * T**2))
    v += -T / 4 * log(1 + (A + 2 * d)**2 / (4 * T**2)) - T / 4 * log(1 + (A - 2 * d)**2 / (4 * T**2))
    v += K / D(A + 2 * d)**1.5 + K / D(A - 2 * d)**1.5 + 2 * K / D(A)**1.5
    for n in [1, 5, 9, 13]:
        v += 2 * atan((2 * a + n) / (2 * T)) - atan((2 * a + 2 * d + n) / (2 * T)) - atan((2 * a - 2 * d + n) / (2 * T))
    v += (2 * a + 2 * d + 15) / 4 * atan((2 * a + 2 * d + 17) / (2 * T))
    v += (2 * a - 2 * d + 15) / 4 * atan((2 * a - 2 * d + 17) / (2 * T))
    v -= (2 * a + 15) / 2 * atan((2 * a + 17) / (2 * T))
    return v


def calE(a, d, T):
    f = lambda s: im(loggamma((s + a + 1j * mpf(T)) / 2))
    return abs(f(mpf(1) / 2 + d) - f(mpf(1) / 2) + f(mpf(1) / 2 - d) - f(mpf(1) / 2))


print("zeta(3)", zeta(3))
print("zeta(1.1)", zeta(mpf("1.1")))
print("zeta(1.5)", zeta(mpf("1.5")))
print("zeta(12)", zeta(12))
print("Im lnGamma(1/4+i/2)", im(loggamma(mpf(1) / 4 + 0.5j)))
print("Im lnGamma(3/4+5i)", im(loggamma(mpf(3) / 4 + 5j)))
print("Im lnGamma(-1.3+0.7i)", im(loggamma(mpf("-1.3") + mpf("0.7") * 1j)))
print("lnGamma(2.5+3i)", loggamma(mpf("2.5") + 3j))
for a in (0, 1):
    for T in ("0.7142857142857142857142857", "1", "2", "10", "1000"):
        print("g", a, T, g(a, T))
for a, d, T in [(0, "0.3", 1), (0, "0.5", 1), (1, "0.25", "0.7142857142857142857"), (0, "2", 3), (1, "4", 50)]:
    print("E", a, d, T, E(a, mpf(d), mpf(T)), calE(a, mpf(d), mpf(T)))
print("catalan", catalan)
