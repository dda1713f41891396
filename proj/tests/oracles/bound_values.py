# Copyright (c) lzero contributors.
# SPDX-License-Identifier: Apache-2.0
# Reference values for the bound engine (mpmath, 30 digits).
from mpmath import mp, mpf, zeta, log, loggamma, im, pi, sqrt, atan, cos, sin, quad, acos, floor, ceil

mp.dps = 30


def nearest(x):
    f = floor(x)
    d = x - f
    if d > mpf(1) / 2:
        return int(f) + 1
    if d < mpf(1) / 2:
        return int(f)
    return int(f) if x > 0 else int(f) + 1  # tie: toward 0


def E(a, d, T):
    a, d, T = mpf(a), mpf(d), mpf(T)
    A, P, M = 2 * a + 17, 2 * a + 2 * d + 17, 2 * a - 2 * d + 17
    k = (8 + 6 * pi) / 45
    v = (2 * T / 3) / (P**2 + 4 * T**2) + (2 * T / 3) / (M**2 + 4 * T**2) - (4 * T / 3) / (A**2 + 4 * T**2)
    v += T / 2 * log(1 + A**2 / (4 * T**2)) - T / 4 * log(1 + P**2 / (4 * T**2)) - T / 4 * log(1 + M**2 / (4 * T**2))
    v += k / (P**2 + 4 * T**2) ** 1.5 + k / (M**2 + 4 * T**2) ** 1.5 + 2 * k / (A**2 + 4 * T**2) ** 1.5
    for b in (1, 5, 9, 13):
        v += 2 * atan((2 * a + b) / (2 * T)) - atan((2 * a + 2 * d + b) / (2 * T)) - atan((2 * a - 2 * d + b) / (2 * T))
    v += (2 * a + 2 * d + 15) / 4 * atan(P / (2 * T)) + (2 * a - 2 * d + 15) / 4 * atan(M / (2 * T))
    v -= (2 * a + 15) / 2 * atan(A / (2 * T))
    return v


def F(theta, c, r, T, ell, eta):
    s = c + r * cos(theta)
    t = abs(r * sin(theta))
    Lj = lambda j: log(((j + s) ** 2 + (t + T) ** 2) / (T + 2) ** 2)
    if s >= 1 + eta:
        return log(zeta(s))
    if s >= -eta:
        return log(zeta(1 + eta)) + (1 + eta - s) / 2 * ell + (1 + eta - s) / 4 * Lj(1)
    n = nearest(s)
    v = log(zeta(1 - s)) + (1 - 2 * s) / 2 * ell + (1 - 2 * s + 2 * n) / 4 * Lj(1 - n)
    v += sum(Lj(k - 1) for k in range(1, -n + 1)) / 2
    return v


def theta(sig, c, r):
    if sig >= c + r:
        return mpf(0)
    if sig <= c - r:
        return pi
    return acos((sig - c) / r)


def jensen(c, r, T, ell, eta):
    cuts = sorted({mpf(0), pi, theta(1 + eta, c, r), theta(-eta, c, r)} |
                  {theta(-j - mpf(1) / 2, c, r) for j in range(0, 8)})
    return quad(lambda th: F(th, c, r, T, ell, eta), cuts)


# Worked example: q = 25252, T = 1, a = 0, (c, r) = (2694, 4651)/2048.
q, T, a = 25252, mpf(1), 0
c, r = mpf(2694) / 2048, mpf(4651) / 2048
ell = log(q * (T + 2) / (2 * pi))
eta = 18 / (10 + 9 * ell)
s1 = mpf(1) / 2 + sqrt(2) * (c - mpf(1) / 2)
delta = 2 * c - s1 - mpf(1) / 2
print("ell", ell, "eta", eta)
print("first_two", T / pi * log(q / pi) + 2 / pi * im(loggamma(mpf(1) / 4 + mpf(a) / 2 + 1j * T / 2)))
print("two_over_pi_logzeta_s1", 2 / pi * log(zeta(s1)))
print("E_delta", E(a, delta, T))
print("E_s1_minus_E_delta", E(a, s1 - mpf(1) / 2, T) - E(a, delta, T))
print("log_zc_z2c", log(zeta(c) / zeta(2 * c)))
J = jensen(c, r, T, ell, eta)
print("jensen", J)
lg = log(r / (c - mpf(1) / 2))
const = (T / pi * log(q / pi) + 2 / pi * im(loggamma(mpf(1) / 4 + 1j * T / 2)) + 2 / pi * log(zeta(s1))
         + 2 / pi * (E(a, delta, T) / 2 + (E(a, s1 - mpf(1) / 2, T) - E(a, delta, T)) / 2 * (1 - log(1 + sqrt(2)) / lg)))
print("linear", const, 1 / lg)
print("total", const + (log(zeta(c) / zeta(2 * c)) + J / pi) / lg)

# Figure: c = 1.2, r = 1.9, T = 1, q = 1e6, eta = 0.141.
T2 = mpf(1)
ell2 = log(mpf(10) ** 6 * (T2 + 2) / (2 * pi))
print("figure_jensen", jensen(mpf("1.2"), mpf("1.9"), T2, ell2, mpf("0.141")))
