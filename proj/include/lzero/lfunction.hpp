// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "lzero/characters.hpp"
#include "lzero/complex_interval.hpp"

namespace lzero {

// zeta(s, x) = sum_{k>=0} (k + x)^{-s} by Euler-Maclaurin with an explicit
// remainder. Throws PoleProximity if s may equal 1.
CInterval hurwitz_zeta(const CInterval& s, const Interval& x);

// L(s, chi) for a primitive character of modulus q > 1, evaluated as
// sum_{m < qN} chi(m) m^{-s} plus per-residue Euler-Maclaurin tails. The
// Dirichlet sums are expanded in a Taylor series around the box center, so
// boxes stay tight where naive interval evaluation blows up.
class LFunction {
  public:
    explicit LFunction(const DirichletCharacter& chi);

    [[nodiscard]] const DirichletCharacter& character() const { return chi_; }
    [[nodiscard]] const GaussRoot& root() const { return root_; }

    [[nodiscard]] CInterval value(const CInterval& s) const;

    struct Segment {
        CInterval box;   // L over the whole segment
        CInterval left;  // L(sigma_lo + i t)
        CInterval right; // L(sigma_hi + i t)
    };
    // L on the horizontal segment [sigma_lo, sigma_hi] + i t.
    [[nodiscard]] Segment segment(double sigma_lo, double sigma_hi, double t) const;

    // Phase that rotates L(1/2 + it) onto the real line.
    [[nodiscard]] Interval theta(const Interval& t) const;
    struct Rotated {
        Interval re;
        Interval im; // must contain 0
    };
    [[nodiscard]] Rotated hardy_full(const Interval& t) const;
    // Hardy Z; throws Error("ConsistencyFailure") if the imaginary part is
    // certainly nonzero.
    [[nodiscard]] Interval hardy_Z(const Interval& t) const;

    // Number of L-evaluations so far.
    [[nodiscard]] long evaluations() const { return evals_; }

  private:
    struct Expansion;
    [[nodiscard]] Expansion expand(double sc, double tc, double r) const;
    [[nodiscard]] CInterval eval(const Expansion& ex, const CInterval& delta) const;
    const Interval& log_of(std::uint64_t m) const;
    const Interval& half_power(std::uint64_t m) const; // m^{-1/2}

    DirichletCharacter chi_;
    GaussRoot root_;
    std::uint64_t q_;
    std::vector<Interval> angle_; // 2 pi e / L
    mutable std::vector<Interval> logs_;
    mutable std::vector<Interval> halfp_;
    mutable long evals_ = 0;
};

CInterval l_value(const CInterval& s, const DirichletCharacter& chi);
// Lambda(s) = (q/pi)^{s/2} Gamma((s+a)/2) L(s), Im s away from 0 or Re s > -a.
CInterval completed_l(const CInterval& s, const DirichletCharacter& chi);
Interval hardy_Z(const Interval& t, const DirichletCharacter& chi);

// Piecewise majorant of |L(s, chi)| over primitive characters of modulus q:
// zeta(sigma) right of 1+eta, the convexity bound in the strip, and the
// reflected product bound left of 0 (rounding [sigma] to nearest, ties to 0).
// Returns an enclosure of the majorant; its upper end is the bound.
Interval l_upper_bound(double sigma, double t, std::uint64_t q, double eta);
// Nearest integer to x, ties toward 0.
long nearest_int_toward_zero(double x);

} // namespace lzero
