// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "lzero/interval.hpp"

namespace lzero {

// Small exact rational. Parameters such as 129/128 or 2694/2048 stay exact
// through +, -, * and / and are only converted to an enclosure at the end.
// Operations that would overflow 64 bits throw DomainError.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT
    Rational(std::int64_t n, std::int64_t d);

    [[nodiscard]] std::int64_t num() const { return num_; }
    [[nodiscard]] std::int64_t den() const { return den_; }
    [[nodiscard]] Interval to_interval() const { return Interval::ratio(num_, den_); }
    [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    [[nodiscard]] std::string str() const;
    // Accepts "p", "p/q" or a plain decimal such as "0.247".
    static Rational parse(const std::string& text);

    Rational operator-() const { return {-num_, den_}; }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

  private:
    static Rational make(__int128 n, __int128 d);
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace lzero
