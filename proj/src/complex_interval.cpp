// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/complex_interval.hpp"

#include <array>
#include <mutex>
#include <vector>

#include "lzero/rational.hpp"

namespace lzero {

CInterval operator/(const CInterval& a, const CInterval& b) {
    const Interval d = norm(b);
    const CInterval n = a * conj(b);
    return {n.re / d, n.im / d};
}

CInterval expi(const Interval& theta) {
    if (theta.width() > 1e-6 || std::isinf(theta.mag()))
        return {cos(theta), sin(theta)};
    // One sincos at the midpoint; cos and sin are 1-Lipschitz and libm is
    // within one ulp (< 2^-52 on [-1, 1]).
    const double m = theta.mid();
    const double r = rnd::succ(std::max(rnd::add_up(m, -theta.lo()), rnd::add_up(theta.hi(), -m)) + 0x1p-51);
    double c = 0, sn = 0;
    ::sincos(m, &sn, &c);
    const Interval pad(-r, r);
    auto clamp = [](const Interval& v) { return Interval(std::max(-1.0, v.lo()), std::min(1.0, v.hi())); };
    return {clamp(Interval(c) + pad), clamp(Interval(sn) + pad)};
}

CInterval exp(const CInterval& z) { return exp(z.re) * expi(z.im); }

Interval arg(const CInterval& z) { return atan2(z.im, z.re); }

CInterval log(const CInterval& z) { return {log(norm(z)) / 2.0, arg(z)}; }

namespace {

// Exact B_{2k} for k = 1..10.
constexpr std::array<std::array<std::int64_t, 2>, 10> kBernoulli = {{{1, 6},
                                                                     {-1, 30},
                                                                     {1, 42},
                                                                     {-1, 30},
                                                                     {5, 66},
                                                                     {-691, 2730},
                                                                     {7, 6},
                                                                     {-3617, 510},
                                                                     {43867, 798},
                                                                     {-174611, 330}}};

Interval bernoulli(int k) { return Interval::ratio(kBernoulli[k - 1][0], kBernoulli[k - 1][1]); }

Interval compute_b_over_fact(int k) {
    if (k <= 3) {
        // Small factorials are exact in double.
        double f = 1;
        for (int i = 2; i <= 2 * k; ++i)
            f *= i;
        return bernoulli(k) / f;
    }
    // B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}, with zeta(2k) from
    // nine terms plus an integral-bracketed tail.
    Interval z = 0.0;
    for (int n = 1; n <= 9; ++n)
        z += pow_int(Interval(n), -2 * k);
    const Interval t0 = pow_int(Interval(10.0), 1 - 2 * k) / Interval(2 * k - 1);
    z += Interval(t0.lo(), (t0 + pow_int(Interval(10.0), -2 * k)).hi());
    Interval v = 2.0 * z / pow_int(Interval::two_pi(), 2 * k);
    return k % 2 == 1 ? v : -v;
}

} // namespace

Interval bernoulli_over_factorial(int k) {
    if (k < 1 || k > 150)
        throw DomainError("bernoulli index out of range");
    static std::vector<Interval> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) {
        for (int i = 1; i <= 150; ++i)
            cache.push_back(compute_b_over_fact(i));
    }
    return cache[k - 1];
}

namespace {

constexpr int kStirlingTerms = 10; // remainder uses B_20
constexpr double kShiftTarget = 10.0;

CInterval stirling(const CInterval& w) {
    // (w - 1/2) log w - w + log(2 pi)/2 + sum B_{2j} / (2j (2j-1) w^{2j-1}) + R
    const CInterval lw = log(w);
    CInterval s = (w - CInterval(0.5)) * lw - w + CInterval(log(Interval::two_pi()) / 2.0);
    const CInterval inv = CInterval(1.0) / w;
    const CInterval inv2 = inv * inv;
    CInterval p = inv;
    for (int j = 1; j < kStirlingTerms; ++j) {
        s += (bernoulli(j) / Interval((2 * j) * (2 * j - 1))) * p;
        p = p * inv2;
    }
    // |R| <= |B_{2K}| / (2K (2K-1) |w|^{2K-1}) sec^{2K}(arg(w)/2), and
    // sec^2(arg/2) = 2|w| / (|w| + Re w) for Re w > 0.
    const Interval aw = abs(w);
    const Interval sec2 = 2.0 * aw / (aw + w.re);
    const int K = kStirlingTerms;
    const Interval r = abs(bernoulli(K)) / Interval((2 * K) * (2 * K - 1)) * pow_int(sec2, K) / pow_int(aw, 2 * K - 1);
    const double rh = r.hi();
    s.re += Interval(-rh, rh);
    s.im += Interval(-rh, rh);
    return s;
}

} // namespace

CInterval lngamma(const CInterval& z) {
    // Off the real axis the shifted logs stay on the principal branch and
    // continuous along horizontal lines, so Re z <= 0 is fine there.
    if (!(z.re.lo() > 0) && z.im.contains(0.0))
        throw DomainError("lngamma requires Re z > 0 or Im z away from 0");
    const int shift = z.re.lo() >= kShiftTarget ? 0 : static_cast<int>(std::ceil(kShiftTarget - z.re.lo()));
    CInterval w = z + CInterval(Interval(shift));
    CInterval res = stirling(w);
    for (int j = 0; j < shift; ++j)
        res = res - log(z + CInterval(Interval(j)));
    return res;
}

Interval ln_abs_gamma(const CInterval& z) {
    if (z.re.lo() > 0 || !z.im.contains(0.0))
        return lngamma(z).re;
    // Gamma(z) = Gamma(z + k) / prod_{j<k} (z + j)
    const int shift = static_cast<int>(std::ceil(1.0 - z.re.lo()));
    const CInterval w = z + CInterval(Interval(shift));
    Interval res = lngamma(w).re;
    for (int j = 0; j < shift; ++j) {
        const Interval n = norm(z + CInterval(Interval(j)));
        if (n.lo() <= 0)
            throw DomainError("ln_abs_gamma at a pole");
        res -= log(n) / 2.0;
    }
    return res;
}

} // namespace lzero
