// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

namespace lzero {

using nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i)
        out += (i ? "," : "") + csv_field(fields[i]);
    return out + "\r\n";
}

Interval parse_conductor(const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || !std::isfinite(v) || !(v > 1))
        throw DomainError("conductor must be a number greater than 1, got '" + text + "'");
    const bool plain_int = text.find_first_not_of("0123456789") == std::string::npos;
    if (plain_int && v < 0x1p53)
        return Interval(v);
    return Interval(rnd::pred(v), rnd::succ(v));
}

int parse_parity(const std::string& text) {
    if (text == "even" || text == "0")
        return 0;
    if (text == "odd" || text == "1")
        return 1;
    throw DomainError("parity must be even, odd, 0 or 1, got '" + text + "'");
}

std::optional<PublishedEntry> published_threshold(int a, const Rational& T, int k) {
    // Columns (T, a) for T = 5/7, 1, 2.
    struct E {
        long q;
        char kind; // 'b' best possible, 's' search, ' ' analytic bound
    };
    static const E kTable[10][6] = {
        {{42, 'b'}, {16, 'b'}, {36, 'b'}, {12, 'b'}, {16, 'b'}, {10, 'b'}},
        {{172, 'b'}, {66, 'b'}, {148, 'b'}, {42, 'b'}, {28, 'b'}, {18, 'b'}},
        {{934, 's'}, {934, 's'}, {844, 's'}, {408, 'b'}, {120, 'b'}, {64, 'b'}},
        {{934, 's'}, {934, 's'}, {844, 's'}, {844, 's'}, {330, 'b'}, {210, 'b'}},
        {{934, 's'}, {934, 's'}, {844, 's'}, {844, 's'}, {634, 's'}, {630, 'b'}},
        {{3289, ' '}, {1909, ' '}, {1616, ' '}, {905, ' '}, {634, 's'}, {634, 's'}},
        {{15991, ' '}, {9007, ' '}, {6256, ' '}, {3425, ' '}, {660, ' '}, {634, 's'}},
        {{82233, ' '}, {45137, ' '}, {25252, ' '}, {13554, ' '}, {1669, ' '}, {1050, ' '}},
        {{443412, ' '}, {238003, ' '}, {105597, ' '}, {55727, ' '}, {4289, ' '}, {2677, ' '}},
        {{2489523, ' '}, {1310445, ' '}, {455195, ' '}, {236710, ' '}, {11185, ' '}, {6932, ' '}},
    };
    int col = -1;
    if (T == Rational(5, 7))
        col = 0;
    else if (T == Rational(1))
        col = 1;
    else if (T == Rational(2))
        col = 2;
    if (col < 0 || k < 0 || k > 9 || (a != 0 && a != 1))
        return std::nullopt;
    const E& e = kTable[k][2 * col + a];
    PublishedEntry p;
    p.q = e.q;
    p.best_possible = e.kind == 'b';
    p.from_search = e.kind != ' ';
    return p;
}

BoundThreshold bound_threshold(int a, const Rational& T, int k, long hint, double quad_tol) {
    if (!table_cr(a, T.to_interval(), k))
        throw RegimeMismatch("no stored (c, r) for this (a, T, k)");
    BoundThreshold res;
    auto passes = [&](long q) {
        ++res.probes;
        const BoundParams p = select_params(Interval(static_cast<double>(q)), T.to_interval(), a, Regime::table, k);
        return assemble_N_bound(p, quad_tol).total.hi() < static_cast<double>(k + 1);
    };
    long lo = std::max(2L, hint), hi = 0;
    if (passes(lo)) {
        long step = 1;
        hi = lo + step;
        while (passes(hi)) {
            lo = hi;
            step *= 2;
            hi = lo + step;
        }
    } else {
        hi = lo;
        long step = 1;
        lo = hi - step;
        while (lo >= 2 && !passes(lo)) {
            hi = lo;
            step *= 2;
            lo = std::max(1L, hi - step);
        }
        if (lo < 2)
            throw PreconditionFailure("bound exceeds k + 1 already at q = 2");
    }
    // passes(lo), !passes(hi)
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (passes(mid) ? lo : hi) = mid;
    }
    res.q = lo;
    return res;
}

TableCell table_cell(int a, const Rational& T, int k, std::uint64_t q_limit, double quad_tol) {
    TableCell cell;
    cell.k = k;
    cell.T = T;
    cell.a = a;
    cell.published = published_threshold(a, T, k);
    if (table_cr(a, T.to_interval(), k)) {
        cell.method = "bound";
        const long hint = cell.published ? cell.published->q : 1000;
        const BoundThreshold b = bound_threshold(a, T, k, hint, quad_tol);
        cell.q = b.q;
        cell.note = std::to_string(b.probes) + " probes";
    } else {
        cell.method = "scan";
        const ThresholdResult r = scanner_threshold(a, T.to_double(), k, q_limit);
        cell.q = static_cast<long>(r.threshold);
        if (r.witnessed) {
            cell.note = "witness " + r.witness_label + " with N = " + std::to_string(r.witness_N);
        } else {
            cell.status = "partial";
            cell.note = "no witness up to conductor " + std::to_string(q_limit) + "; value is a lower bound";
        }
    }
    if (cell.status.empty()) {
        if (!cell.published)
            cell.status = "unavailable";
        else if (*cell.q == cell.published->q)
            cell.status = "match";
        else if (*cell.q < cell.published->q)
            cell.status = "weaker";
        else
            cell.status = "exceeds";
    }
    return cell;
}

ordered_json ConjectureReport::to_json() const {
    ordered_json j;
    j["characters"] = characters;
    j["segments"] = segments;
    j["certified"] = certified;
    j["violations"] = violations;
    j["inconclusive"] = inconclusive;
    j["worst_ratio"] = worst_ratio;
    j["worst_label"] = worst_label;
    j["worst_T"] = worst_T;
    j["violation_notes"] = violation_notes;
    return j;
}

namespace {

enum class SegmentVerdict { certified, violated, inconclusive };

struct ZeroSteps {
    std::vector<double> lo, hi; // sorted endpoints of |gamma| brackets
    long weight = 1;            // 2 for real characters (gamma and -gamma)
    // Possible N(T) for T in [A, B].
    [[nodiscard]] long n_min(double A) const {
        return weight * static_cast<long>(std::upper_bound(hi.begin(), hi.end(), A) - hi.begin());
    }
    [[nodiscard]] long n_max(double B) const {
        return weight * static_cast<long>(std::upper_bound(lo.begin(), lo.end(), B) - lo.begin());
    }
};

SegmentVerdict check_segment(const ZeroSteps& z, const Interval& q, int a, double A, double B, int depth) {
    const Interval T(A, B);
    const EllMain em = ell_main_term(q, T, a);
    const Interval bound = em.ell / log(2.0 + em.ell);
    // N is one of n0, n1 on the segment; the zero inside a bracket could be
    // anywhere, so bisection only sharpens the main term, never the count.
    int ok = 0, bad = 0;
    const long n0 = z.n_min(A), n1 = z.n_max(B);
    for (long n : {n0, n1}) {
        const Interval dev = abs(Interval(static_cast<double>(n)) - em.main);
        ok += dev.hi() <= bound.lo();
        bad += dev.lo() > bound.hi();
    }
    if (ok == 2)
        return SegmentVerdict::certified;
    if (bad == 2 || (n0 == n1 && bad > 0))
        return SegmentVerdict::violated;
    if (ok + bad == 2) // one candidate fits, one does not
        return SegmentVerdict::inconclusive;
    const double m = A + (B - A) / 2;
    if (depth >= 48 || !(A < m && m < B))
        return SegmentVerdict::inconclusive;
    const auto l = check_segment(z, q, a, A, m, depth + 1);
    const auto r = check_segment(z, q, a, m, B, depth + 1);
    if (l == SegmentVerdict::violated || r == SegmentVerdict::violated)
        return SegmentVerdict::violated;
    if (l == SegmentVerdict::inconclusive || r == SegmentVerdict::inconclusive)
        return SegmentVerdict::inconclusive;
    return SegmentVerdict::certified;
}

} // namespace

ConjectureReport conjecture_check(const std::vector<SweepEntry>& entries, const std::vector<ZeroRecord>& zeros) {
    std::map<std::string, std::vector<const ZeroRecord*>> by_label;
    for (const auto& z : zeros)
        by_label[z.character_label].push_back(&z);
    const double t0 = Interval::ratio(5, 7).hi();
    ConjectureReport rep;
    for (const auto& e : entries) {
        if (!(e.T > t0))
            continue;
        ++rep.characters;
        ZeroSteps z;
        z.weight = character_from_label(e.label).is_real() ? 2 : 1;
        for (const ZeroRecord* r : by_label[e.label]) {
            const Interval g = abs(r->ordinate);
            z.lo.push_back(g.lo());
            z.hi.push_back(g.hi());
        }
        std::sort(z.lo.begin(), z.lo.end());
        std::sort(z.hi.begin(), z.hi.end());
        std::vector<double> cuts{t0, e.T};
        for (double x : z.lo)
            if (x > t0 && x < e.T)
                cuts.push_back(x);
        for (double x : z.hi)
            if (x > t0 && x < e.T)
                cuts.push_back(x);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        const Interval q(static_cast<double>(e.q));
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double A = cuts[i], B = cuts[i + 1];
            ++rep.segments;
            switch (check_segment(z, q, e.parity, A, B, 0)) {
            case SegmentVerdict::certified:
                ++rep.certified;
                break;
            case SegmentVerdict::inconclusive:
                ++rep.inconclusive;
                break;
            case SegmentVerdict::violated:
                ++rep.violations;
                if (rep.violation_notes.size() < 20) {
                    std::ostringstream os;
                    os << e.label << " on T in [" << A << ", " << B << "]";
                    rep.violation_notes.push_back(os.str());
                }
                break;
            }
            const long n = z.n_min(A);
            if (n != z.n_max(B))
                continue; // inside a zero bracket
            const double m = A + (B - A) / 2;
            const EllMain em = ell_main_term(q, Interval(m), e.parity);
            const double ratio =
                std::abs(static_cast<double>(n) - em.main.mid()) / (em.ell / log(2.0 + em.ell)).mid();
            if (ratio > rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.worst_label = e.label;
                rep.worst_T = m;
            }
        }
    }
    return rep;
}

ordered_json sweep_entry_to_json(const SweepEntry& e) {
    ordered_json j;
    j["label"] = e.label;
    j["q"] = e.q;
    j["parity"] = e.parity;
    j["T"] = e.T;
    j["N"] = e.N;
    j["sign_changes"] = e.sign_changes;
    return j;
}

SweepEntry sweep_entry_from_json(const nlohmann::json& j) {
    try {
        SweepEntry e;
        e.label = j.at("label").get<std::string>();
        e.q = j.at("q").get<std::uint64_t>();
        e.parity = j.at("parity").get<int>();
        e.T = j.at("T").get<double>();
        e.N = j.at("N").get<long>();
        e.sign_changes = j.at("sign_changes").get<long>();
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw SchemaMismatch(std::string("sweep entry: ") + ex.what());
    }
}

} // namespace lzero
