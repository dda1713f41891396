// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lzero/prover.hpp"
#include "lzero/rational.hpp"

namespace lzero {

// Theorem error term: 0.22737 l + 2 log(1 + l) - 0.5.
Interval theorem_error(const Interval& ell);
// Largest l for which N(T, chi) = 0 is asserted.
inline Interval small_ell_limit() { return Interval::ratio(1567, 1000); }

// l = log(q (T+2) / 2 pi) and the main term (T/pi) log(qT / 2 pi e) - chi(-1)/4.
struct EllMain {
    Interval ell;
    Interval main;
};
EllMain ell_main_term(const Interval& q, const Interval& T, int a);
// (T/pi) log(q/pi) + (2/pi) Im lnGamma(1/4 + a/2 + iT/2): the exact
// non-argument part of the counting identity.
Interval counting_main_terms(const Interval& q, const Interval& T, int a);

enum class Regime { large, middle, table, custom };
// simple: sigma1 = c + (c-1/2)^2/r. inelegant: sigma1 = 1/2 + sqrt2 (c-1/2),
// which also credits paired zeros beyond 1/2 + delta.
enum class BacklundMode { simple, inelegant };
std::string to_string(Regime r);
std::string to_string(BacklundMode m);

struct BoundParams {
    Interval q; // conductor (possibly an enclosure of a huge one)
    Interval T;
    int a = 0;
    Regime regime = Regime::custom;
    BacklundMode mode = BacklundMode::simple;
    std::optional<Rational> c_exact, r_exact;
    Interval c, r, eta, sigma1, delta, ell;
    int J1 = 64;
    int J2 = 24;
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

// Parameters from an l enclosure alone (T only enters later). Throws
// RegimeMismatch if l is outside the regime's range.
BoundParams params_for_ell(const Interval& ell, Regime regime, BacklundMode mode, const Interval& c = {},
                           const Interval& r = {});
// The regime-specific choices for a concrete (q, T, a). For Regime::table,
// k selects the row of the stored (c*, r*) table; custom uses c and r.
BoundParams select_params(const Interval& q, const Interval& T, int a, Regime regime, int k = -1,
                          std::optional<Rational> c = {}, std::optional<Rational> r = {},
                          BacklundMode custom_mode = BacklundMode::simple);
// (c*, r*) for (a, T, k) with c = c*/2^11, r = r*/2^11, if stored.
std::optional<std::pair<int, int>> table_cr(int a, const Interval& T, int k);

// Inequalities that fail (empty if all hold) for the named consumer.
std::vector<std::string> check_jensen_chain(const BoundParams& p);
std::vector<std::string> check_mode(const BoundParams& p);

Interval theta_sigma(const Interval& sigma, const Interval& c, const Interval& r);

// The even majorant of (1/m) log |f_m(c + r e^{i theta})|. Inputs that straddle
// a branch boundary are evaluated on each branch and hulled.
Interval F_theta(const Interval& theta, const BoundParams& p);

struct Kappas {
    Interval k1, k2, k3, k4, k5;
    std::vector<Interval> k6; // k6[j-1] = kappa_{6,j}; trailing zeros omitted
    [[nodiscard]] Interval k6_sum() const;
};
Kappas kappas(const BoundParams& p);

struct JensenResult {
    Interval value;       // upper end bounds the integral of F over [0, pi]
    std::string path;     // "quadrature" or "lemmas"
    std::optional<Interval> quadrature;
    std::optional<Interval> lemmas;
    std::string lemma_failure; // why the lemma path was unavailable
    long pieces = 0;
};
// Integral of F over [0, pi] by adaptive interval quadrature until the
// enclosure is narrower than tol. Needs a point T.
Interval jensen_quadrature(const BoundParams& p, double tol, long max_pieces = 2'000'000, long* pieces = nullptr);
// Upper bound from the kappa decomposition and the trapezoid lemmas.
Interval jensen_lemmas(const BoundParams& p, const Kappas& k);
// Both paths where valid; the one with the smaller upper end is returned.
JensenResult jensen_integral(const BoundParams& p, double tol = 1e-4, bool try_quadrature = true);

// log(zeta(c)/zeta(2c)) + integral / pi.
Interval S_limit_bound(const BoundParams& p, const Interval& jensen);

// Bound on |arg L(sigma + iT)| change over [1/2, sigma1] given an S bound.
struct ArgBound {
    Interval value;
    Interval E_delta;
    Interval E_sigma1_minus_E_delta; // zero in simple mode
    Interval log_ratio;             // log(r / (c - 1/2))
};
ArgBound arg_segment_bound(const BoundParams& p, const Interval& S);

struct BoundReport {
    BoundParams params;
    Kappas kappa;
    JensenResult jensen;
    Interval log_zeta_ratio; // log zeta(c)/zeta(2c)
    Interval S_bound;
    ArgBound arg;
    Interval first_two;         // counting_main_terms
    Interval two_over_pi_log_zeta_sigma1;
    Interval linear_const, linear_coef; // N <= const + coef * S
    Interval main_term;         // (T/pi) log(qT/2 pi e) - chi(-1)/4
    Interval g_abs;             // |g(a,T)|
    Interval two_sided;         // |N - main| <= this
    Interval total;             // N <= total
    std::optional<long> floor_k;
    std::string floor_note;
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};
BoundReport assemble_N_bound(const BoundParams& p, double quad_tol = 1e-4);

struct TheoremBound {
    Interval ell;
    Interval main;
    Interval lower, upper;
    long N_min = 0; // N is an integer >= lower, so N >= ceil(lower)
    bool N_zero = false;
};
TheoremBound theorem_bound(const Interval& q, const Interval& T, int a = 0);

// Smallest certified C2 with |N - (T/pi) log(qT/2 pi e)| <= C1 log qT + C2 for
// every conductor q > 1 and T >= T_min (at least 5/7), given the theorem. The
// returned value is an upper bound proved by branch and bound.
struct C2Result {
    double C2 = 0;
    double estimate = 0; // numerical supremum
    double ell_star = 0; // maximizing l in the theorem regime
    ProofOutcome small_proof, large_proof;
};
C2Result derive_C2(double C1, std::size_t budget = 200000, const Rational& T_min = Rational(5, 7));

// Branch-and-bound proof over l in [ell_lo, ell_hi] and T >= 5/7 (both signs a)
// that the assembled bound with the large- and middle-l parameter maps is at
// most the theorem error term. Middle covers [5.98, 28], large [27.02, ...).
struct AssemblyOutcome {
    ProofOutcome middle, large;
    std::optional<Box> middle_domain, large_domain; // unset when the regime is not used
    bool proved = false;
    Interval covered;
    std::string note;
};
// The quantity proved <= theorem_error(l): assembled bound at l with
// u = 1/T in [0, 7/5], maximized over a.
Interval assembled_bound(const Interval& ell, const Interval& u, Regime regime);
AssemblyOutcome verify_assembly(double ell_lo, double ell_hi, std::size_t budget = 400000);
// Re-evaluates both certificates; empty on success.
std::string check_assembly_certificate(const AssemblyOutcome& out);

} // namespace lzero
