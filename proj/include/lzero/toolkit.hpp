// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Pieces of the command-line surface that are worth testing on their own:
// CSV quoting, the published threshold table, threshold searches and the
// empirical check of the conjectured error term.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lzero/bound.hpp"
#include "lzero/zeros.hpp"

namespace lzero {

// RFC 4180: quote fields containing a comma, quote, CR or LF; double quotes.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

// "123", "1.3e47" or "25252": exact when the value is an integer below 2^53,
// otherwise an outward enclosure of the decimal.
Interval parse_conductor(const std::string& text);
// "even"/"odd"/"0"/"1".
int parse_parity(const std::string& text);

// Published q_a(T, k) for T in {5/7, 1, 2}, k in 0..9, and whether the entry
// came from a zero search rather than the analytic bound.
struct PublishedEntry {
    long q = 0;
    bool best_possible = false; // a character of conductor q + 1 has N > k
    bool from_search = false;
};
std::optional<PublishedEntry> published_threshold(int a, const Rational& T, int k);

// Largest q such that the assembled bound with the stored (c, r) for
// (a, T, k), evaluated at conductor q, is certainly below k + 1. The search
// starts from hint and gallops. Each probe is a full assemble_N_bound.
struct BoundThreshold {
    long q = 0;
    int probes = 0;
};
BoundThreshold bound_threshold(int a, const Rational& T, int k, long hint, double quad_tol = 1e-4);

struct TableCell {
    int k = 0;
    Rational T;
    int a = 0;
    std::optional<long> q;       // unset when nothing could be computed
    std::string method;          // "bound", "scan" or "none"
    std::optional<PublishedEntry> published;
    std::string status;          // match, weaker, exceeds, partial, unavailable
    std::string note;
};
// Bound entries use bound_threshold; the rest use the scanner up to q_limit.
TableCell table_cell(int a, const Rational& T, int k, std::uint64_t q_limit, double quad_tol = 1e-4);

// |N(T) - main(T)| <= l / log(2 + l) over T in [5/7, T_q] for every swept
// character, certified segment by segment between zero brackets.
struct ConjectureReport {
    long characters = 0;
    long segments = 0;
    long certified = 0;
    long violations = 0;
    long inconclusive = 0;
    double worst_ratio = 0; // max of |N - main| / (l / log(2 + l)) at midpoints of segments with known N
    std::string worst_label;
    double worst_T = 0;
    std::vector<std::string> violation_notes; // first few only
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};
ConjectureReport conjecture_check(const std::vector<SweepEntry>& entries, const std::vector<ZeroRecord>& zeros);

nlohmann::ordered_json sweep_entry_to_json(const SweepEntry& e);
SweepEntry sweep_entry_from_json(const nlohmann::json& j);

} // namespace lzero
