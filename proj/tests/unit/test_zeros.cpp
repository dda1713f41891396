// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "lzero/zeros.hpp"

using namespace lzero;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
// Lowest zero of L(s, chi_3), from tests/oracles/lfunction_values.py.
constexpr double kChi3Zero = 8.0397371556814667;

std::string tmp_path(const char* name) { return std::string("/tmp/lzero_test_") + name; }

} // namespace

TEST_CASE("argument at sigma = 3 stays near the principal value") {
    for (std::uint64_t q : {3u, 5u, 7u, 13u, 40u}) {
        for (const auto& chi : enumerate_primitive(q)) {
            const LFunction F(chi);
            for (double T : {0.5, 7.0, 33.0}) {
                const Interval a = arg(F.value(CInterval(Interval(3.0), Interval(T))));
                CHECK(a.hi() < 0.176);
                CHECK(a.lo() > -0.176);
            }
        }
    }
}

TEST_CASE("count agrees with the scan for small characters") {
    const auto chi5 = character_from_label("5.2");
    REQUIRE(chi5.is_real());
    REQUIRE(chi5.parity() == 0);
    const ScanResult s = scan_zeros(chi5, 10.0, 1e-6);
    CHECK(s.count.N == s.sign_changes);
    CHECK(static_cast<long>(s.zeros.size()) * 2 == s.count.N);
    CHECK(s.count.total.width() < 1e-6);
    for (const auto& z : s.zeros) {
        CHECK(z.ordinate.lo() > 0);
        CHECK(z.isolation_width() <= 1e-6);
    }
    // complex characters are scanned over [-T, T]
    for (const auto& chi : enumerate_primitive(13, true)) {
        if (chi.is_real())
            continue;
        const ScanResult c = scan_zeros(chi, 12.0, kInf);
        CHECK(c.count.N == c.sign_changes);
        CHECK(static_cast<long>(c.zeros.size()) == c.count.N);
    }
}

TEST_CASE("lowest zero of the character mod 3") {
    const auto chi = enumerate_primitive(3)[0];
    const ScanResult s = scan_zeros(chi, 10.0, 1e-9);
    REQUIRE(s.zeros.size() == 1);
    CHECK(s.count.N == 2);
    const Interval g = s.zeros[0].ordinate;
    CHECK(g.width() <= 1e-9);
    CHECK(g.contains(kChi3Zero));
    // Independent check: plain bisection on certified signs.
    const LFunction F(chi);
    double a = 8.0, b = 8.1;
    const bool sa = certainly_gt(F.hardy_Z(Interval(a)), Interval(0.0));
    for (int i = 0; i < 30; ++i) {
        const double m = (a + b) / 2;
        const Interval z = F.hardy_Z(Interval(m));
        REQUIRE(!z.contains(0.0));
        (certainly_gt(z, Interval(0.0)) == sa ? a : b) = m;
    }
    CHECK(Interval(a, b).intersects(g));
}

TEST_CASE("conjugate characters have mirrored zeros") {
    const auto prim = enumerate_primitive(7);
    for (const auto& chi : prim) {
        if (chi.is_real())
            continue;
        const ScanResult s = scan_zeros(chi, 15.0, 1e-8);
        const ScanResult c = scan_zeros(chi.conj(), 15.0, 1e-8);
        CHECK(s.count.N == c.count.N);
        REQUIRE(s.zeros.size() == c.zeros.size());
        const std::size_t n = s.zeros.size();
        for (std::size_t i = 0; i < n; ++i)
            CHECK(s.zeros[i].ordinate.intersects(-c.zeros[n - 1 - i].ordinate));
    }
}

TEST_CASE("nudging when the path meets a zero") {
    const auto chi = enumerate_primitive(3)[0];
    const LFunction F(chi);
    CHECK_THROWS_AS(arg_on_critical_line(F, kChi3Zero), NudgeNeeded);
    CountOptions strict;
    strict.auto_nudge = false;
    CHECK_THROWS_AS(arg_principal_count(kChi3Zero, chi, strict), NudgeNeeded);
    const CountResult r = arg_principal_count(kChi3Zero, chi);
    CHECK(r.nudges >= 1);
    CHECK(r.T > kChi3Zero);
    CHECK(r.T_requested == kChi3Zero);
    CHECK(r.N == 2);
    CHECK_THROWS_AS(arg_principal_count(-1.0, chi), DomainError);
}

TEST_CASE("small conductors have no low zeros") {
    // q <= 15 and log(q (T + 2) / 2 pi) <= 1.567 leave no zero.
    for (std::uint64_t q = 3; q <= 15; ++q) {
        const double T = 2 * M_PI * std::exp(1.567) / static_cast<double>(q) - 2;
        if (T <= 0)
            continue;
        for (const auto& chi : enumerate_primitive(q, true)) {
            INFO(chi.label());
            CHECK(arg_principal_count(T, chi).N == 0);
        }
    }
}

TEST_CASE("zero dataset round trip") {
    std::vector<ZeroRecord> recs;
    for (std::uint64_t q : {4u, 3u}) {
        for (const auto& chi : enumerate_primitive(q, true)) {
            auto s = scan_zeros(chi, 12.0, 1e-8);
            for (auto& z : s.zeros)
                recs.push_back(z);
        }
    }
    const std::string path = tmp_path("zeros.jsonl");
    nlohmann::ordered_json meta;
    meta["t_max"] = 12.0;
    write_zero_dataset(path, recs, meta);
    const auto back = read_zero_dataset(path);
    REQUIRE(back.size() == recs.size());
    CHECK(back.front().q == 3);
    for (std::size_t i = 1; i < back.size(); ++i)
        CHECK((back[i - 1].q < back[i].q || back[i - 1].ordinate.lo() < back[i].ordinate.lo()));
    CHECK(back.front().method == "Z-sign-change");
    std::ifstream m(path + ".meta.json");
    CHECK(nlohmann::json::parse(m)["t_max"] == 12.0);

    {
        std::ofstream bad(tmp_path("bad.jsonl"));
        bad << R"({"character_label":"3.1","q":3,"parity":1,"ordinate_lo":8.0,"ordinate_hi":8.1,"method":"x"})"
            << "\n";
    }
    CHECK_THROWS_AS(read_zero_dataset(tmp_path("bad.jsonl")), SchemaMismatch);
    {
        std::ofstream bad(tmp_path("unsorted.jsonl"));
        bad << record_to_json(back[1]).dump() << "\n" << record_to_json(back[0]).dump() << "\n";
    }
    CHECK_THROWS_AS(read_zero_dataset(tmp_path("unsorted.jsonl")), UnsortedInput);
    std::remove(path.c_str());
    std::remove((path + ".meta.json").c_str());
    std::remove(tmp_path("bad.jsonl").c_str());
    std::remove(tmp_path("unsorted.jsonl").c_str());
}
