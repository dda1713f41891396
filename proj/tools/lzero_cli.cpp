// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
//
// lzero: zero-counting bounds for Dirichlet L-functions.
// Exit codes: 0 success, 2 bad input or failed precondition, 3 budget or
// incomplete computation (including a failed proof or reproduction).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lzero/bound.hpp"
#include "lzero/special.hpp"
#include "lzero/toolkit.hpp"
#include "lzero/zeros.hpp"

#ifndef LZERO_VERSION
#define LZERO_VERSION "dev"
#endif

using namespace lzero;
using nlohmann::ordered_json;

namespace {

struct Global {
    std::string out = "-";
    std::size_t budget = 10'000'000;
    int threads = 1;
    std::vector<std::string> argv;
};

// Raised when a run finishes but its claim did not hold; maps to exit 3.
class Unmet : public Error {
  public:
    explicit Unmet(const std::string& what) : Error("Unmet", what) {}
};

ordered_json ij(const Interval& x) { return ordered_json::array({x.lo(), x.hi()}); }

ordered_json manifest(const Global& g, const std::string& command, ordered_json options) {
    ordered_json m;
    m["tool"] = "lzero";
    m["version"] = LZERO_VERSION;
    m["command"] = command;
    m["argv"] = g.argv;
    m["options"] = std::move(options);
    m["budget"] = g.budget;
    m["threads_requested"] = g.threads;
    m["threads_used"] = 1;
    m["libraries"] = {{"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                      {"CLI11", CLI11_VERSION}};
    return m;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DomainError("cannot open " + path + " for writing");
    f << text;
}

void emit_json(const Global& g, const ordered_json& man, ordered_json result) {
    ordered_json j;
    j["manifest"] = man;
    j["result"] = std::move(result);
    write_text(g.out, j.dump(2) + "\n");
}

// Manifest next to a non-JSON artifact: "<path>.manifest.json", or one line on
// stderr when writing to stdout.
void emit_side_manifest(const std::string& path, const ordered_json& man) {
    if (path == "-")
        std::cerr << man.dump() << "\n";
    else
        write_text(path + ".manifest.json", man.dump(2) + "\n");
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

Interval parse_T(const std::string& s) { return Rational::parse(s).to_interval(); }

// ---------------------------------------------------------------- bound

void cmd_bound(const Global& g, const std::string& q_text, const std::string& T_text, const std::string& parity) {
    const Interval q = parse_conductor(q_text);
    const int a = parse_parity(parity);
    const TheoremBound tb = theorem_bound(q, parse_T(T_text), a);
    ordered_json r;
    r["ell"] = ij(tb.ell);
    r["main_term"] = ij(tb.main);
    r["N_zero"] = tb.N_zero;
    r["lower"] = ij(tb.lower);
    r["upper"] = ij(tb.upper);
    r["N_min"] = tb.N_min;
    r["N_max"] = static_cast<long>(std::floor(tb.upper.hi()));
    if (!tb.N_zero)
        r["error_term"] = ij(theorem_error(tb.ell));
    emit_json(g, manifest(g, "bound", {{"q", q_text}, {"T", T_text}, {"parity", a}}), r);
}

// ---------------------------------------------------------------- nmax

struct NmaxOpts {
    std::string q, T, parity = "even", regime = "auto", mode = "simple", c, r;
    int k = -1;
    int J1 = 64, J2 = 24;
    double quad_tol = 1e-4;
};

BoundReport run_nmax(const NmaxOpts& o) {
    const Interval q = parse_conductor(o.q);
    const Interval T = parse_T(o.T);
    const int a = parse_parity(o.parity);
    BoundParams p;
    if (o.k >= 0) {
        p = select_params(q, T, a, Regime::table, o.k);
    } else if (!o.c.empty() || !o.r.empty()) {
        if (o.c.empty() || o.r.empty())
            throw DomainError("--c and --r go together");
        if (o.mode != "simple" && o.mode != "inelegant")
            throw DomainError("--mode must be simple or inelegant");
        p = select_params(q, T, a, Regime::custom, -1, Rational::parse(o.c), Rational::parse(o.r),
                          o.mode == "simple" ? BacklundMode::simple : BacklundMode::inelegant);
    } else {
        Regime reg = Regime::middle;
        if (o.regime == "large")
            reg = Regime::large;
        else if (o.regime == "auto")
            reg = ell_main_term(q, T, a).ell.hi() <= 28 ? Regime::middle : Regime::large;
        else if (o.regime != "middle")
            throw DomainError("--regime must be auto, middle or large");
        p = select_params(q, T, a, reg);
    }
    p.J1 = o.J1;
    p.J2 = o.J2;
    return assemble_N_bound(p, o.quad_tol);
}

ordered_json nmax_options(const NmaxOpts& o) {
    ordered_json j{{"q", o.q}, {"T", o.T}, {"parity", o.parity}, {"J1", o.J1}, {"J2", o.J2}, {"quad_tol", o.quad_tol}};
    if (o.k >= 0)
        j["k"] = o.k;
    else if (!o.c.empty())
        j.update({{"c", o.c}, {"r", o.r}, {"mode", o.mode}});
    else
        j["regime"] = o.regime;
    return j;
}

void cmd_nmax(const Global& g, const NmaxOpts& o) {
    emit_json(g, manifest(g, "nmax", nmax_options(o)), run_nmax(o).to_json());
}

// ---------------------------------------------------------------- verify-example

void cmd_verify_example(const Global& g) {
    NmaxOpts o;
    o.q = "25252";
    o.T = "1";
    o.parity = "even";
    o.k = 7;
    const BoundReport rep = run_nmax(o);
    struct Check {
        const char* name;
        Interval value;
        double published;
    };
    const Check checks[] = {{"first_two_terms", rep.first_two, 2.1013434},
                            {"two_over_pi_log_zeta_sigma1", rep.two_over_pi_log_zeta_sigma1, 0.4883702},
                            {"E_delta", rep.arg.E_delta, 0.1616976},
                            {"E_sigma1_minus_E_delta", rep.arg.E_sigma1_minus_E_delta, 0.5119502},
                            {"log_zeta_ratio", rep.log_zeta_ratio, 1.0682664},
                            {"jensen_integral", rep.jensen.value, 13.8132592}};
    ordered_json list = ordered_json::array();
    bool all = true;
    for (const auto& c : checks) {
        const bool ok = c.value.hi() <= c.published + 1e-3;
        all = all && ok;
        list.push_back({{"name", c.name}, {"upper", c.value.hi()}, {"published", c.published}, {"ok", ok}});
    }
    const bool total_ok = rep.total.hi() <= 7.9997;
    const bool floor_ok = rep.floor_k && *rep.floor_k == 7;
    list.push_back({{"name", "total"}, {"upper", rep.total.hi()}, {"published", 7.9997}, {"ok", total_ok}});
    list.push_back({{"name", "floor_k"}, {"value", rep.floor_k ? ordered_json(*rep.floor_k) : ordered_json()},
                    {"published", 7}, {"ok", floor_ok}});
    all = all && total_ok && floor_ok;
    ordered_json r;
    r["checks"] = list;
    r["all_ok"] = all;
    r["report"] = rep.to_json();
    emit_json(g, manifest(g, "verify-example", nmax_options(o)), r);
    if (!all)
        throw Unmet("worked example not reproduced");
}

// ---------------------------------------------------------------- scan

struct ScanOpts {
    std::uint64_t q_max = 100;
    double ell_max = 6;
    double tol = 1e-9;
    std::string dataset = "zeros.jsonl";
    bool quiet = false;
};

void cmd_scan(const Global& g, const ScanOpts& o) {
    const ordered_json man = manifest(
        g, "scan", {{"q_max", o.q_max}, {"ell_max", o.ell_max}, {"tol", o.tol}, {"dataset", o.dataset}});
    const SweepReport rep = desk_sweep(o.q_max, o.ell_max, o.tol, [&](const SweepEntry& e) {
        if (!o.quiet)
            std::cerr << e.label << " T=" << e.T << " N=" << e.N << "\n";
    });
    ordered_json meta;
    meta["manifest"] = man;
    meta["t_rule"] = "T_q = 2 pi exp(ell_max) / q - 2";
    meta["evaluations"] = rep.evaluations;
    meta["characters"] = ordered_json::array();
    for (const auto& e : rep.entries)
        meta["characters"].push_back(sweep_entry_to_json(e));
    write_zero_dataset(o.dataset, rep.zeros, meta);
    ordered_json r;
    r["dataset"] = o.dataset;
    r["characters"] = rep.entries.size();
    r["records"] = rep.zeros.size();
    r["evaluations"] = rep.evaluations;
    emit_json(g, man, r);
}

// ---------------------------------------------------------------- table

struct TableOpts {
    std::string T = "all";
    int k_min = 0, k_max = 9;
    std::uint64_t q_limit = 100;
    double quad_tol = 1e-4;
};

void cmd_table(const Global& g, const TableOpts& o) {
    std::vector<Rational> Ts;
    if (o.T == "all")
        Ts = {Rational(5, 7), Rational(1), Rational(2)};
    else
        Ts = {Rational::parse(o.T)};
    if (o.k_min < 0 || o.k_max > 9 || o.k_min > o.k_max)
        throw DomainError("need 0 <= k-min <= k-max <= 9");
    std::vector<std::string> header{"k"};
    for (const auto& T : Ts)
        for (int a : {0, 1}) {
            const std::string col = "T=" + T.str() + ", a=" + std::to_string(a);
            header.insert(header.end(), {col, "status (" + col + ")", "published (" + col + ")", "note (" + col + ")"});
        }
    std::string csv = csv_row(header);
    for (int k = o.k_min; k <= o.k_max; ++k) {
        std::vector<std::string> row{std::to_string(k)};
        for (const auto& T : Ts)
            for (int a : {0, 1}) {
                const TableCell c = table_cell(a, T, k, o.q_limit, o.quad_tol);
                std::string pub;
                if (c.published)
                    pub = std::to_string(c.published->q) +
                          (c.published->best_possible ? " best" : c.published->from_search ? " search" : "");
                row.insert(row.end(), {c.q ? std::to_string(*c.q) : "", c.status, pub, c.method + ": " + c.note});
            }
        csv += csv_row(row);
    }
    write_text(g.out, csv);
    emit_side_manifest(g.out, manifest(g, "table",
                                       {{"T", o.T}, {"k_min", o.k_min}, {"k_max", o.k_max}, {"q_limit", o.q_limit},
                                        {"quad_tol", o.quad_tol}}));
}

// ---------------------------------------------------------------- derive-c2

void cmd_derive_c2(const Global& g, const std::vector<double>& c1s, const std::string& t_min) {
    ordered_json list = ordered_json::array();
    const Rational tm = Rational::parse(t_min);
    for (double c1 : c1s) {
        const C2Result r = derive_C2(c1, std::min<std::size_t>(g.budget, 2'000'000), tm);
        list.push_back({{"C1", c1},
                        {"C2", r.C2},
                        {"estimate", r.estimate},
                        {"ell_star", r.ell_star},
                        {"large_proof", to_string(r.large_proof.status)},
                        {"large_leaves", r.large_proof.leaves.size()},
                        {"small_proof", to_string(r.small_proof.status)},
                        {"small_leaves", r.small_proof.leaves.size()}});
    }
    emit_json(g, manifest(g, "derive-c2", {{"c1", c1s}, {"T_min", t_min}}), list);
}

// ---------------------------------------------------------------- verify-assembly

ordered_json proof_json(const ProofOutcome& p) {
    ordered_json j{{"status", to_string(p.status)}, {"leaves", p.leaves.size()}, {"work", p.work}};
    if (!p.reason.empty())
        j["reason"] = p.reason;
    if (p.witness)
        j["witness"] = {{"box", ordered_json::array({ij(p.witness->box[0]), ij(p.witness->box[1])})},
                        {"f", ij(p.witness->f)},
                        {"g", ij(p.witness->g)}};
    return j;
}

void cmd_verify_assembly(const Global& g, double lo, double hi, const std::string& cert) {
    const AssemblyOutcome out = verify_assembly(lo, hi, g.budget);
    ordered_json r;
    r["proved"] = out.proved;
    r["covered_ell"] = ij(out.covered);
    r["note"] = out.note;
    r["middle"] = proof_json(out.middle);
    r["large"] = proof_json(out.large);
    if (out.proved) {
        const std::string err = check_assembly_certificate(out);
        r["certificate_check"] = err.empty() ? "ok" : err;
        if (!cert.empty()) {
            if (out.middle_domain) {
                std::ofstream f(cert + ".middle.jsonl");
                out.middle.write_jsonl(f);
            }
            if (out.large_domain) {
                std::ofstream f(cert + ".large.jsonl");
                out.large.write_jsonl(f);
            }
            r["certificate_files"] = cert + ".{middle,large}.jsonl";
        }
    }
    emit_json(g, manifest(g, "verify-assembly", {{"ell_lo", lo}, {"ell_hi", hi}, {"certificate", cert}}), r);
    if (!out.proved)
        throw Unmet("assembly not proved on the requested range");
}

// ---------------------------------------------------------------- figures

void cmd_figures(const Global& g, const std::string& dir, int c1_points) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const std::string d = dir + "/";
    {
        std::string csv = csv_row({"C1", "C2 (T >= 5/7)", "C2 (T >= 1)"});
        for (int i = 0; i < c1_points; ++i) {
            const double c1 = 0.235 + (0.6 - 0.235) * i / std::max(1, c1_points - 1);
            csv += csv_row({fmt(c1), fmt(derive_C2(c1).C2), fmt(derive_C2(c1, 200000, Rational(1)).C2)});
        }
        write_text(d + "figure1_c1_c2.csv", csv);
    }
    {
        std::string e2 = csv_row({"a", "T", "d", "E_lo", "E_hi"});
        std::string e3 = csv_row({"a", "T", "d", "exact_lo", "exact_hi", "E_hi"});
        for (int a : {0, 1})
            for (const char* Ts : {"5/7", "2"}) {
                const Interval T = parse_T(Ts);
                for (int i = 0; i <= 88; ++i) {
                    const Interval dd = Interval(i) / 20.0;
                    const Interval e = E_of(a, dd, T), x = calE_exact(a, dd, T);
                    e2 += csv_row({std::to_string(a), Ts, fmt(dd.mid()), fmt(e.lo()), fmt(e.hi())});
                    e3 += csv_row({std::to_string(a), Ts, fmt(dd.mid()), fmt(x.lo()), fmt(x.hi()), fmt(e.hi())});
                }
            }
        write_text(d + "figure2_E.csv", e2);
        write_text(d + "figure3_exact_variation.csv", e3);
    }
    ordered_json extra;
    {
        BoundParams p = select_params(Interval(1e6), Interval(1.0), 0, Regime::custom, -1, Rational::parse("6/5"),
                                      Rational::parse("19/10"));
        p.eta = Interval(0.141);
        std::string csv = csv_row({"theta", "F_lo", "F_hi"});
        for (int i = 0; i <= 512; ++i) {
            const Interval th = Interval::pi() * static_cast<double>(i) / 512.0;
            const Interval f = F_theta(th, p);
            csv += csv_row({fmt(th.mid()), fmt(f.lo()), fmt(f.hi())});
        }
        write_text(d + "figure4_F.csv", csv);
        extra["figure4_integral"] = ij(jensen_quadrature(p, 1e-3));
    }
    ordered_json man = manifest(g, "figures", {{"out_dir", dir}, {"c1_points", c1_points}});
    man["results"] = extra;
    write_text(d + "figures.manifest.json", man.dump(2) + "\n");
}

// ---------------------------------------------------------------- conjecture-check

void cmd_conjecture(const Global& g, const std::string& dataset, const ScanOpts& o) {
    std::vector<SweepEntry> entries;
    std::vector<ZeroRecord> zeros;
    ordered_json opts;
    if (!dataset.empty()) {
        zeros = read_zero_dataset(dataset);
        std::ifstream m(dataset + ".meta.json");
        if (!m)
            throw SchemaMismatch("missing " + dataset + ".meta.json");
        const nlohmann::json meta = nlohmann::json::parse(m, nullptr, false);
        if (meta.is_discarded() || !meta.contains("characters"))
            throw SchemaMismatch(dataset + ".meta.json has no character list");
        for (const auto& e : meta["characters"])
            entries.push_back(sweep_entry_from_json(e));
        opts["dataset"] = dataset;
    } else {
        SweepReport rep = desk_sweep(o.q_max, o.ell_max, o.tol);
        entries = std::move(rep.entries);
        zeros = std::move(rep.zeros);
        opts = {{"q_max", o.q_max}, {"ell_max", o.ell_max}, {"tol", o.tol}};
    }
    const ConjectureReport rep = conjecture_check(entries, zeros);
    ordered_json r = rep.to_json();
    r["inequality"] = "|N(T) - (T/pi) log(qT/2 pi e) + chi(-1)/4| <= l / log(2 + l), 5/7 <= T <= T_q";
    r["status"] = rep.violations ? "violated" : rep.inconclusive ? "inconclusive" : "holds on the scanned set";
    emit_json(g, manifest(g, "conjecture-check", opts), r);
}

int exit_code_for(const std::string& kind) {
    if (kind == "BudgetExceeded" || kind == "NudgeNeeded" || kind == "CompletenessFailure" || kind == "Unmet")
        return 3;
    return 2;
}

void error_record(const std::string& command, const std::string& kind, const std::string& msg) {
    ordered_json e;
    e["error"] = {{"kind", kind}, {"message", msg}, {"command", command}};
    std::cout << e.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    Global g;
    g.argv.assign(argv, argv + argc);
    CLI::App app{"Explicit bounds and certified counts for zeros of Dirichlet L-functions"};
    app.set_version_flag("--version", std::string(LZERO_VERSION));
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand
    app.add_option("--out", g.out, "Output path, - for stdout")->capture_default_str();
    app.add_option("--budget", g.budget, "Work budget in boxes")->capture_default_str();
    app.add_option("--threads", g.threads, "Requested threads (runs are single-threaded)")->capture_default_str();

    std::string q, T, parity = "even";
    auto* bound = app.add_subcommand("bound", "Theorem bounds on N(T, chi)");
    bound->add_option("--q", q, "Conductor")->required();
    bound->add_option("--T", T, "Height, e.g. 1 or 5/7")->required();
    bound->add_option("--parity", parity, "even or odd")->capture_default_str();

    NmaxOpts no;
    auto* nmax = app.add_subcommand("nmax", "Assembled upper bound on N(T, chi)");
    nmax->add_option("--q", no.q)->required();
    nmax->add_option("--T", no.T)->required();
    nmax->add_option("--parity", no.parity)->capture_default_str();
    nmax->add_option("--k", no.k, "Row of the stored (c, r) table");
    nmax->add_option("--c", no.c, "Circle center, rational");
    nmax->add_option("--r", no.r, "Circle radius, rational");
    nmax->add_option("--mode", no.mode, "simple or inelegant (with --c/--r)")->capture_default_str();
    nmax->add_option("--regime", no.regime, "auto, middle or large (without --k or --c/--r)")->capture_default_str();
    nmax->add_option("--J1", no.J1)->capture_default_str();
    nmax->add_option("--J2", no.J2)->capture_default_str();
    nmax->add_option("--quad-tol", no.quad_tol)->capture_default_str();

    auto* example = app.add_subcommand("verify-example", "Reproduce the q = 25252, T = 1 example");

    ScanOpts so;
    auto* scan = app.add_subcommand("scan", "Build the zero dataset");
    scan->add_option("--q-max", so.q_max)->capture_default_str();
    scan->add_option("--ell-max", so.ell_max)->capture_default_str();
    scan->add_option("--tol", so.tol, "Isolation width")->capture_default_str();
    scan->add_option("--dataset", so.dataset, "JSONL output")->capture_default_str();
    scan->add_flag("--quiet", so.quiet);

    TableOpts to;
    auto* table = app.add_subcommand("table", "Regenerate threshold table entries as CSV");
    table->add_option("--T", to.T, "5/7, 1, 2 or all")->capture_default_str();
    table->add_option("--k-min", to.k_min)->capture_default_str();
    table->add_option("--k-max", to.k_max)->capture_default_str();
    table->add_option("--q-limit", to.q_limit, "Scanner conductor limit")->capture_default_str();
    table->add_option("--quad-tol", to.quad_tol)->capture_default_str();

    std::vector<double> c1s;
    std::string t_min = "5/7";
    auto* c2 = app.add_subcommand("derive-c2", "Certified C2 for given C1");
    c2->add_option("--c1", c1s)->required();
    c2->add_option("--t-min", t_min)->capture_default_str();

    double ell_lo = 5.98, ell_hi = 200;
    std::string cert;
    auto* assembly = app.add_subcommand("verify-assembly", "Prove the assembled bound over a range of l");
    assembly->add_option("--ell-lo", ell_lo)->capture_default_str();
    assembly->add_option("--ell-hi", ell_hi)->capture_default_str();
    assembly->add_option("--certificate", cert, "Write leaf certificates to <path>.{middle,large}.jsonl");

    std::string fig_dir = "figures";
    int c1_points = 60;
    auto* figures = app.add_subcommand("figures", "CSV data for the figures");
    figures->add_option("--out-dir", fig_dir)->capture_default_str();
    figures->add_option("--c1-points", c1_points)->capture_default_str();

    std::string dataset;
    ScanOpts co;
    auto* conj = app.add_subcommand("conjecture-check", "Check |N - main| <= l/log(2+l) on scanned data");
    conj->add_option("--dataset", dataset, "Dataset written by scan; otherwise a fresh sweep runs");
    conj->add_option("--q-max", co.q_max)->capture_default_str();
    conj->add_option("--ell-max", co.ell_max)->capture_default_str();
    conj->add_option("--tol", co.tol)->capture_default_str();

    std::string command = "lzero";
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_record(command, "UsageError", e.what());
        return 2;
    }
    try {
        if (bound->parsed()) {
            command = "bound";
            cmd_bound(g, q, T, parity);
        } else if (nmax->parsed()) {
            command = "nmax";
            cmd_nmax(g, no);
        } else if (example->parsed()) {
            command = "verify-example";
            cmd_verify_example(g);
        } else if (scan->parsed()) {
            command = "scan";
            cmd_scan(g, so);
        } else if (table->parsed()) {
            command = "table";
            cmd_table(g, to);
        } else if (c2->parsed()) {
            command = "derive-c2";
            cmd_derive_c2(g, c1s, t_min);
        } else if (assembly->parsed()) {
            command = "verify-assembly";
            cmd_verify_assembly(g, ell_lo, ell_hi, cert);
        } else if (figures->parsed()) {
            command = "figures";
            cmd_figures(g, fig_dir, c1_points);
        } else if (conj->parsed()) {
            command = "conjecture-check";
            cmd_conjecture(g, dataset, co);
        }
    } catch (const Error& e) {
        error_record(command, e.kind(), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        error_record(command, "InternalError", e.what());
        return 2;
    }
    return 0;
}
