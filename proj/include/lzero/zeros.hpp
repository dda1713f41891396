// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lzero/lfunction.hpp"

namespace lzero {

// Number of zeros with 0 < beta < 1, |gamma| <= T, with the terms of the
// counting identity kept for audit.
struct CountResult {
    long N = 0;
    double T = 0;            // height actually used (after nudges)
    double T_requested = 0;
    int nudges = 0;
    std::string character_label;
    Interval main_term;  // (T/pi) log(q/pi)
    Interval gamma_term; // (2/pi) Im lnGamma(1/4 + a/2 + iT/2)
    Interval arg_chi;    // arg L(1/2 + iT, chi), continuous from sigma = 3
    Interval arg_conj;   // same for the conjugate character
    Interval total;      // contains exactly one integer, N
    long evaluations = 0;
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

struct CountOptions {
    bool auto_nudge = true;
    int max_nudges = 64;
    long budget = 20000; // segment evaluations per argument track
};

// Continuous argument of L(sigma + iT) from sigma = 3 (principal there,
// since |log L(3+iT)| <= log zeta(3)) down to sigma = 1/2. Each step
// certifies that L has no zero on a box around the step, so the change is
// the principal argument of the endpoint ratio. Throws NudgeNeeded if a zero
// sits too close to the path.
Interval arg_on_critical_line(const LFunction& F, double T, long budget = 20000);

CountResult arg_principal_count(double T, const DirichletCharacter& chi, const CountOptions& opt = {});
CountResult arg_principal_count(double T, const LFunction& F, const LFunction& Fconj, const CountOptions& opt = {});

struct ZeroRecord {
    std::string character_label;
    std::uint64_t q = 0;
    int parity = 0;
    Interval ordinate; // gamma of rho = 1/2 + i gamma
    std::string method = "Z-sign-change";
    double tol = 0;
    [[nodiscard]] double isolation_width() const { return ordinate.hi() - ordinate.lo(); }
};

struct ScanOptions {
    // grid step as a fraction of the mean zero spacing
    double step_fraction = 0.25;
    int max_refinements = 3;
    CountOptions count;
};

struct ScanResult {
    std::vector<ZeroRecord> zeros; // real characters: gamma > 0 only
    CountResult count;
    long sign_changes = 0; // over the whole scanned range, both signs for real chi
    long grid_points = 0;
    int refinements = 0;
    long evaluations = 0;
};

// Locates all zeros on the critical line with |gamma| <= t_max and isolates
// each to width <= tol (pass tol = infinity to keep grid brackets). The
// sign-change count must match the argument-principle count, otherwise
// CompletenessFailure.
ScanResult scan_zeros(const DirichletCharacter& chi, double t_max, double tol, const ScanOptions& opt = {});

// Zero dataset: JSON lines with fields exactly character_label, q, parity,
// ordinate_lo, ordinate_hi, method, tol; sorted by (q, character index,
// ordinate_lo). The sidecar "<path>.meta.json" holds scan parameters and
// completeness certificates.
void sort_records(std::vector<ZeroRecord>& recs);
void write_zero_dataset(const std::string& path, const std::vector<ZeroRecord>& recs,
                        const nlohmann::ordered_json& meta);
// Throws SchemaMismatch on a malformed line and UnsortedInput on order
// violations.
std::vector<ZeroRecord> read_zero_dataset(const std::string& path);
nlohmann::ordered_json record_to_json(const ZeroRecord& r);

// Largest conductor Q (up to q_limit) such that every primitive character of
// conductor <= Q and sign a has N(T, chi) <= k, established with the scanner.
struct ThresholdResult {
    std::uint64_t threshold = 0;
    bool witnessed = false; // a character of conductor threshold+1 exceeds k
    std::string witness_label;
    long witness_N = 0;
    long characters_checked = 0;
};
ThresholdResult scanner_threshold(int a, double T, long k, std::uint64_t q_limit);

// Scan of every primitive character (one per conjugate pair) with q <= q_max
// up to T_q = 2 pi e^{ell_max} / q - 2.
struct SweepEntry {
    std::string label;
    std::uint64_t q = 0;
    int parity = 0;
    double T = 0;
    long N = 0;
    long sign_changes = 0;
};
struct SweepReport {
    std::vector<SweepEntry> entries;
    std::vector<ZeroRecord> zeros;
    long evaluations = 0;
};
SweepReport desk_sweep(std::uint64_t q_max, double ell_max, double tol,
                       const std::function<void(const SweepEntry&)>& progress = {});

} // namespace lzero
