// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace lzero {

using nlohmann::ordered_json;

namespace {

constexpr double kNudgeFactor = 1.0 + 0x1p-20;
constexpr double kMinStep = 1e-9;

double mid_value(const Interval& x) { return x.lo() / 2 + x.hi() / 2; }

ordered_json interval_json(const Interval& x) { return ordered_json::array({x.lo(), x.hi()}); }

} // namespace

ordered_json CountResult::to_json() const {
    ordered_json j;
    j["character_label"] = character_label;
    j["N"] = N;
    j["T"] = T;
    j["T_requested"] = T_requested;
    j["nudges"] = nudges;
    j["main_term"] = interval_json(main_term);
    j["gamma_term"] = interval_json(gamma_term);
    j["arg_chi"] = interval_json(arg_chi);
    j["arg_conj"] = interval_json(arg_conj);
    j["total"] = interval_json(total);
    j["evaluations"] = evaluations;
    return j;
}

Interval arg_on_critical_line(const LFunction& F, double T, long budget) {
    Interval a = arg(F.value(CInterval(Interval(3.0), Interval(T))));
    double sigma = 3.0;
    double h = 0.25;
    long used = 0;
    while (sigma > 0.5) {
        if (++used > budget)
            throw BudgetExceeded("argument tracking for " + F.character().label() + " at T = " + std::to_string(T) +
                                 " exceeded " + std::to_string(budget) + " steps");
        const double lo = std::max(0.5, sigma - h);
        const auto seg = F.segment(lo, sigma, T);
        bool ok = false;
        if (!seg.box.contains_zero()) {
            try {
                a += arg(seg.left * conj(seg.right));
                ok = true;
            } catch (const DomainError&) {
            }
        }
        if (ok) {
            sigma = lo;
            h = std::min(1.0, 2 * h);
            continue;
        }
        h /= 2;
        if (h < kMinStep)
            throw NudgeNeeded("zero within " + std::to_string(kMinStep) + " of the path at height " +
                              std::to_string(T) + " for " + F.character().label());
    }
    return a;
}

namespace {

CountResult count_once(double T, const LFunction& F, const LFunction* Fconj, long budget) {
    const auto& chi = F.character();
    const long ev0 = F.evaluations() + (Fconj ? Fconj->evaluations() : 0);
    CountResult r;
    r.T = T;
    r.character_label = chi.label();
    const Interval Ti(T);
    const Interval q(static_cast<double>(chi.modulus()));
    const Interval pi = Interval::pi();
    r.main_term = Ti / pi * log(q / pi);
    const Interval x = Interval(2 * chi.parity() + 1) / 4.0;
    r.gamma_term = 2.0 / pi * lngamma(CInterval(x, Ti / 2.0)).im;
    r.arg_chi = arg_on_critical_line(F, T, budget);
    r.arg_conj = Fconj ? arg_on_critical_line(*Fconj, T, budget) : r.arg_chi;
    r.total = r.main_term + r.gamma_term + (r.arg_chi + r.arg_conj) / pi;
    const double lo = std::ceil(r.total.lo()), hi = std::floor(r.total.hi());
    if (lo > hi)
        throw CompletenessFailure("count enclosure " + to_string(r.total) + " holds no integer for " + chi.label());
    if (lo < hi)
        throw BudgetExceeded("count enclosure " + to_string(r.total) + " too wide for " + chi.label());
    r.N = static_cast<long>(lo);
    r.evaluations = F.evaluations() + (Fconj ? Fconj->evaluations() : 0) - ev0;
    return r;
}

} // namespace

CountResult arg_principal_count(double T, const LFunction& F, const LFunction& Fconj, const CountOptions& opt) {
    if (!(T > 0))
        throw DomainError("count height must be positive");
    const bool real = F.character().is_real();
    double t = T;
    for (int n = 0;; ++n) {
        try {
            CountResult r = count_once(t, F, real ? nullptr : &Fconj, opt.budget);
            r.T_requested = T;
            r.nudges = n;
            return r;
        } catch (const NudgeNeeded&) {
            if (!opt.auto_nudge || n >= opt.max_nudges)
                throw;
            t *= kNudgeFactor;
        }
    }
}

CountResult arg_principal_count(double T, const DirichletCharacter& chi, const CountOptions& opt) {
    const LFunction F(chi);
    if (chi.is_real())
        return arg_principal_count(T, F, F, opt);
    const LFunction G(chi.conj());
    return arg_principal_count(T, F, G, opt);
}

namespace {

struct GridPoint {
    double t;
    int sign; // +1, -1, or 0 when uncertain
    double z; // midpoint of the Z enclosure
};

class Scanner {
  public:
    Scanner(const LFunction& F, double step_fraction) : F_(F), frac_(step_fraction) {}

    GridPoint probe(double t, double spread) const {
        for (int k = 0; k < 6; ++k) {
            const double tt = k == 0 ? t : t + (k % 2 ? 1 : -1) * spread * ((k + 1) / 2) / 64;
            const Interval z = F_.hardy_Z(Interval(tt));
            ++evals_;
            if (z.lo() > 0)
                return {tt, 1, mid_value(z)};
            if (z.hi() < 0)
                return {tt, -1, mid_value(z)};
        }
        return {t, 0, 0.0};
    }

    double step(double t) const {
        const double q = static_cast<double>(F_.character().modulus());
        const double lg = std::log(q * (std::fabs(t) + 2) / (2 * M_PI));
        return frac_ * 2 * M_PI / std::max(1.0, lg);
    }

    mutable long evals_ = 0;

  private:
    const LFunction& F_;
    double frac_;
};

std::vector<std::pair<GridPoint, GridPoint>> brackets(const std::vector<GridPoint>& g) {
    std::vector<std::pair<GridPoint, GridPoint>> out;
    const GridPoint* prev = nullptr;
    for (const auto& p : g) {
        if (p.sign == 0)
            continue;
        if (prev && prev->sign != p.sign)
            out.emplace_back(*prev, p);
        prev = &p;
    }
    return out;
}

// Illinois iteration with rigorous sign checks.
Interval isolate(const Scanner& sc, GridPoint a, GridPoint b, double tol) {
    int side = 0;
    int stalls = 0;
    while (b.t - a.t > tol) {
        double x = (a.t * b.z - b.t * a.z) / (b.z - a.z);
        const double w = b.t - a.t;
        if (!(x > a.t + w / 64 && x < b.t - w / 64) || stalls >= 2)
            x = a.t + w / 2;
        const GridPoint p = sc.probe(x, std::min(w / 4, 1e-3));
        if (p.sign == 0 || !(p.t > a.t && p.t < b.t)) {
            if (w < 1e-13)
                break;
            ++stalls;
            if (stalls > 8)
                break;
            continue;
        }
        const double before = w;
        if (p.sign == a.sign) {
            a = p;
            if (side == -1)
                b.z /= 2;
            side = -1;
        } else {
            b = p;
            if (side == 1)
                a.z /= 2;
            side = 1;
        }
        stalls = (b.t - a.t) > before / 2 ? stalls + 1 : 0;
    }
    return {a.t, b.t};
}

} // namespace

ScanResult scan_zeros(const DirichletCharacter& chi, double t_max, double tol, const ScanOptions& opt) {
    if (!(t_max > 0))
        throw DomainError("scan height must be positive");
    if (!(tol > 0))
        throw DomainError("isolation tolerance must be positive");
    const LFunction F(chi);
    const bool real = chi.is_real();
    std::unique_ptr<LFunction> G;
    if (!real)
        G = std::make_unique<LFunction>(chi.conj());
    const LFunction& Fc = real ? F : *G;
    Scanner sc(F, opt.step_fraction);

    ScanResult res;
    double T = t_max;
    GridPoint top{}, bottom{};
    for (int n = 0;; ++n) {
        res.count = arg_principal_count(T, F, Fc, opt.count);
        res.count.T_requested = t_max;
        T = res.count.T;
        top = sc.probe(T, 0.0);
        bottom = real ? sc.probe(0.0, 0.0) : sc.probe(-T, 0.0);
        if (real && bottom.sign == 0)
            throw CompletenessFailure("cannot certify the sign of Z(0) for real character " + chi.label());
        if (top.sign != 0 && bottom.sign != 0)
            break;
        if (n >= opt.count.max_nudges)
            throw NudgeNeeded("Z vanishes too close to the scan end at " + std::to_string(T));
        T *= kNudgeFactor;
    }
    const long N = res.count.N;
    if (real && N % 2 != 0)
        throw CompletenessFailure("odd zero count " + std::to_string(N) + " for real character " + chi.label() +
                                  " (zero at the real point?)");
    const long expected = real ? N / 2 : N;

    std::vector<GridPoint> grid{bottom};
    const double t0 = bottom.t;
    for (double t = t0 + sc.step(t0); t < T - 1e-12; t += sc.step(t))
        grid.push_back(sc.probe(t, sc.step(t)));
    grid.push_back(top);

    auto br = brackets(grid);
    while (static_cast<long>(br.size()) < expected && res.refinements < opt.max_refinements) {
        ++res.refinements;
        std::vector<GridPoint> finer;
        finer.reserve(2 * grid.size());
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            finer.push_back(grid[i]);
            const double m = grid[i].t + (grid[i + 1].t - grid[i].t) / 2;
            finer.push_back(sc.probe(m, grid[i + 1].t - grid[i].t));
        }
        finer.push_back(grid.back());
        grid = std::move(finer);
        br = brackets(grid);
    }
    res.grid_points = static_cast<long>(grid.size());
    if (static_cast<long>(br.size()) != expected) {
        // Report where |Z| is smallest as candidates for missed zeros.
        std::vector<GridPoint> cand(grid.begin(), grid.end());
        std::sort(cand.begin(), cand.end(),
                  [](const GridPoint& x, const GridPoint& y) { return std::fabs(x.z) < std::fabs(y.z); });
        std::ostringstream os;
        os << "character " << chi.label() << ": " << br.size() << " sign changes, argument principle gives "
           << expected << " up to T = " << T << "; smallest |Z| near t =";
        for (std::size_t i = 0; i < std::min<std::size_t>(3, cand.size()); ++i)
            os << " " << cand[i].t;
        throw CompletenessFailure(os.str());
    }
    res.sign_changes = real ? 2 * expected : expected;
    for (const auto& [a, b] : br) {
        ZeroRecord r;
        r.character_label = chi.label();
        r.q = chi.modulus();
        r.parity = chi.parity();
        r.tol = tol;
        r.ordinate = isolate(sc, a, b, tol);
        if (r.isolation_width() > tol && std::isfinite(tol))
            throw BudgetExceeded("could not isolate zero of " + chi.label() + " near " + std::to_string(a.t) +
                                 " to width " + std::to_string(tol));
        res.zeros.push_back(std::move(r));
    }
    res.evaluations = F.evaluations() + (real ? 0 : Fc.evaluations());
    return res;
}

ordered_json record_to_json(const ZeroRecord& r) {
    ordered_json j;
    j["character_label"] = r.character_label;
    j["q"] = r.q;
    j["parity"] = r.parity;
    j["ordinate_lo"] = r.ordinate.lo();
    j["ordinate_hi"] = r.ordinate.hi();
    j["method"] = r.method;
    j["tol"] = r.tol;
    return j;
}

namespace {

std::uint64_t label_index(const std::string& label) {
    const auto dot = label.find('.');
    if (dot == std::string::npos)
        throw SchemaMismatch("bad character label '" + label + "'");
    try {
        return std::stoull(label.substr(dot + 1));
    } catch (const std::logic_error&) {
        throw SchemaMismatch("bad character label '" + label + "'");
    }
}

bool record_less(const ZeroRecord& a, const ZeroRecord& b) {
    if (a.q != b.q)
        return a.q < b.q;
    const auto ia = label_index(a.character_label), ib = label_index(b.character_label);
    if (ia != ib)
        return ia < ib;
    return a.ordinate.lo() < b.ordinate.lo();
}

} // namespace

void sort_records(std::vector<ZeroRecord>& recs) { std::stable_sort(recs.begin(), recs.end(), record_less); }

void write_zero_dataset(const std::string& path, const std::vector<ZeroRecord>& recs, const ordered_json& meta) {
    std::vector<ZeroRecord> sorted = recs;
    sort_records(sorted);
    std::ofstream out(path);
    if (!out)
        throw DomainError("cannot write " + path);
    for (const auto& r : sorted)
        out << record_to_json(r).dump() << "\n";
    std::ofstream m(path + ".meta.json");
    if (!m)
        throw DomainError("cannot write " + path + ".meta.json");
    m << meta.dump(2) << "\n";
}

std::vector<ZeroRecord> read_zero_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot read " + path);
    static const std::set<std::string> kFields = {"character_label", "q",   "parity", "ordinate_lo",
                                                  "ordinate_hi",     "method", "tol"};
    std::vector<ZeroRecord> out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const std::string where = path + ":" + std::to_string(lineno);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw SchemaMismatch(where + ": " + e.what());
        }
        if (!j.is_object())
            throw SchemaMismatch(where + ": not an object");
        std::set<std::string> keys;
        for (auto it = j.begin(); it != j.end(); ++it)
            keys.insert(it.key());
        if (keys != kFields)
            throw SchemaMismatch(where + ": fields must be exactly character_label, q, parity, ordinate_lo, "
                                         "ordinate_hi, method, tol");
        ZeroRecord r;
        try {
            r.character_label = j.at("character_label").get<std::string>();
            r.q = j.at("q").get<std::uint64_t>();
            r.parity = j.at("parity").get<int>();
            r.ordinate = Interval(j.at("ordinate_lo").get<double>(), j.at("ordinate_hi").get<double>());
            r.method = j.at("method").get<std::string>();
            r.tol = j.at("tol").is_null() ? std::numeric_limits<double>::infinity() : j.at("tol").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw SchemaMismatch(where + ": " + e.what());
        } catch (const DomainError& e) {
            throw SchemaMismatch(where + ": " + e.what());
        }
        if (r.parity != 0 && r.parity != 1)
            throw SchemaMismatch(where + ": parity must be 0 or 1");
        label_index(r.character_label);
        if (!out.empty() && record_less(r, out.back()))
            throw UnsortedInput(where + ": records must be sorted by (q, label, ordinate_lo)");
        out.push_back(std::move(r));
    }
    return out;
}

ThresholdResult scanner_threshold(int a, double T, long k, std::uint64_t q_limit) {
    ThresholdResult res;
    for (std::uint64_t q = 3; q <= q_limit; ++q) {
        for (const auto& chi : enumerate_primitive(q, true)) {
            if (chi.parity() != a)
                continue;
            ++res.characters_checked;
            const ScanResult s = scan_zeros(chi, T, std::numeric_limits<double>::infinity());
            if (s.count.N > k) {
                res.threshold = q - 1;
                res.witnessed = true;
                res.witness_label = chi.label();
                res.witness_N = s.count.N;
                return res;
            }
        }
    }
    res.threshold = q_limit;
    return res;
}

SweepReport desk_sweep(std::uint64_t q_max, double ell_max, double tol,
                       const std::function<void(const SweepEntry&)>& progress) {
    SweepReport rep;
    for (std::uint64_t q = 3; q <= q_max; ++q) {
        const double T = 2 * M_PI * std::exp(ell_max) / static_cast<double>(q) - 2;
        if (!(T > 0))
            continue;
        for (const auto& chi : enumerate_primitive(q, true)) {
            ScanResult s = scan_zeros(chi, T, tol);
            SweepEntry e{chi.label(), q, chi.parity(), s.count.T, s.count.N, s.sign_changes};
            rep.evaluations += s.evaluations;
            rep.entries.push_back(e);
            for (auto& z : s.zeros)
                rep.zeros.push_back(std::move(z));
            if (progress)
                progress(e);
        }
    }
    return rep;
}

} // namespace lzero
