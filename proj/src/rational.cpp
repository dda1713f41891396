// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/rational.hpp"

#include <limits>

namespace lzero {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

Rational Rational::make(__int128 n, __int128 d) {
    if (d == 0)
        throw DomainError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
    if (n > lim || n < -lim || d > lim)
        throw DomainError("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational::make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                          static_cast<__int128>(a.den_) * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) {
    return Rational::make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
    return Rational::make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}
bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

Rational Rational::parse(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash != std::string::npos)
            return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
        const auto dot = text.find('.');
        if (dot == std::string::npos)
            return std::stoll(text);
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 17)
            throw DomainError("too many decimals in " + text);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            den *= 10;
        const bool neg = !text.empty() && text[0] == '-';
        const std::string ip = text.substr(0, dot);
        const std::int64_t whole = (ip.empty() || ip == "-" || ip == "+") ? 0 : std::llabs(std::stoll(ip));
        const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
        const Rational r = Rational(whole) + Rational(f, den);
        return neg ? -r : r;
    } catch (const std::logic_error&) {
        throw DomainError("cannot parse rational '" + text + "'");
    }
}

} // namespace lzero
