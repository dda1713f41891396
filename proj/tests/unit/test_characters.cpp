// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "lzero/characters.hpp"

using namespace lzero;

TEST_CASE("arithmetic helpers") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(36) == 12);
    CHECK(euler_phi(97) == 96);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(1) == 1);
    CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    const auto f = factorize(25252);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::make_pair<std::uint64_t, int>(2, 2));
    CHECK(f[1] == std::make_pair<std::uint64_t, int>(59, 1));
    CHECK(f[2] == std::make_pair<std::uint64_t, int>(107, 1));
}

TEST_CASE("primitive character counts for small moduli") {
    CHECK(enumerate_primitive(2).empty());
    const auto p3 = enumerate_primitive(3);
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].parity() == 1);
    CHECK(enumerate_primitive(4).size() == 1);
    CHECK(enumerate_primitive(4)[0].parity() == 1);
    CHECK(enumerate_primitive(8).size() == 2);
    CHECK(enumerate_primitive(1).size() == 1);
}

TEST_CASE("count formula matches enumeration") {
    for (std::uint64_t q = 1; q <= 120; ++q) {
        INFO(q);
        CHECK(enumerate_primitive(q).size() == primitive_count(q));
        CHECK(CharacterGroup(q).size() == euler_phi(q));
    }
}

TEST_CASE("conductors") {
    for (const auto& chi : enumerate_characters(6)) {
        if (chi.index() == 0)
            CHECK(chi.meta().conductor == 1);
        else
            CHECK(chi.meta().conductor == 3);
    }
    // Mod 5: the generator is 2; index 1 sends 2 to i, so chi(-1) = chi(2^2) = -1.
    const auto chi5 = CharacterGroup(5).character(1);
    CHECK(chi5.meta().conductor == 5);
    CHECK(chi5.parity() == 1);
    CHECK(chi5.exponent_base() == 4);
    CHECK(*chi5.exponent(2) == 1);
    CHECK(CharacterGroup(5).character(2).is_real());
    CHECK(CharacterGroup(5).character(2).parity() == 0);
    CHECK(CharacterGroup(97).character(0).meta().conductor == 1);
    CHECK(!CharacterGroup(97).character(0).is_primitive());
}

TEST_CASE("generators lift through CRT") {
    for (std::uint64_t q : {12u, 40u, 63u, 100u, 360u}) {
        const CharacterGroup G(q);
        const auto gens = G.generators();
        const auto ords = G.orders();
        std::uint64_t prod = 1;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            CHECK(std::gcd(gens[i], q) == 1);
            std::uint64_t x = 1;
            std::uint64_t k = 0;
            do {
                x = x * gens[i] % q;
                ++k;
            } while (x != 1);
            CHECK(k == ords[i]);
            prod *= ords[i];
        }
        CHECK(prod == euler_phi(q));
    }
}

TEST_CASE("characters are multiplicative and orthogonal") {
    for (std::uint64_t q : {7u, 8u, 15u, 16u, 24u, 45u}) {
        const auto chars = enumerate_characters(q);
        for (const auto& chi : chars) {
            for (std::uint64_t m = 1; m < q; ++m) {
                for (std::uint64_t n = 1; n < q; ++n) {
                    const auto em = chi.exponent(m), en = chi.exponent(n), emn = chi.exponent(m * n);
                    if (em && en)
                        CHECK(*emn == (*em + *en) % chi.exponent_base());
                    else
                        CHECK(!emn);
                }
            }
        }
        for (const auto& a : chars) {
            for (const auto& b : chars) {
                CInterval s(Interval(0.0));
                for (std::uint64_t n = 1; n < q; ++n)
                    s += a.value(n) * conj(b.value(n));
                const double expect = a.index() == b.index() ? static_cast<double>(euler_phi(q)) : 0.0;
                CHECK(s.re.contains(expect));
                CHECK(s.im.contains(0.0));
                CHECK(s.re.width() < 1e-10);
            }
        }
    }
}

TEST_CASE("conjugates") {
    for (std::uint64_t q : {5u, 13u, 20u, 21u}) {
        for (const auto& chi : enumerate_characters(q)) {
            const auto c = chi.conj();
            CHECK(c.conj().index() == chi.index());
            CHECK(c.parity() == chi.parity());
            CHECK(c.meta().conductor == chi.meta().conductor);
            CHECK(chi.is_real() == (c.index() == chi.index()));
            for (std::uint64_t n = 1; n < q; ++n) {
                const auto e = chi.exponent(n);
                if (e)
                    CHECK((*e + *c.exponent(n)) % chi.exponent_base() == 0);
            }
        }
        const auto all = enumerate_primitive(q);
        const auto reps = enumerate_primitive(q, true);
        std::size_t real = 0;
        for (const auto& chi : all)
            real += chi.is_real() ? 1 : 0;
        CHECK(reps.size() == real + (all.size() - real) / 2);
    }
}

TEST_CASE("labels") {
    const auto chi = character_from_label("15.5");
    CHECK(chi.modulus() == 15);
    CHECK(chi.index() == 5);
    CHECK(chi.label() == "15.5");
    CHECK_THROWS_AS(character_from_label("15"), DomainError);
    CHECK_THROWS_AS(character_from_label("15.99"), DomainError);
    CHECK_THROWS_AS(character_from_label("x.1"), DomainError);
}

TEST_CASE("Gauss sums") {
    const auto t3 = gauss_root(enumerate_primitive(3)[0]);
    CHECK(t3.tau.re.contains(0.0));
    CHECK(t3.tau.im.contains(std::sqrt(3.0)));
    CHECK(t3.tau.im.width() < 1e-12);
    const auto t4 = gauss_root(enumerate_primitive(4)[0]);
    CHECK(t4.tau.re.contains(0.0));
    CHECK(t4.tau.im.contains(2.0));
    CHECK(t3.epsilon.re.contains(1.0));
    CHECK(t3.epsilon_arg.contains(0.0));
    CHECK_THROWS_AS(gauss_root(CharacterGroup(6).character(0)), NotPrimitive);
    CHECK_THROWS_AS(gauss_root(CharacterGroup(9).character(3)), NotPrimitive);
    for (std::uint64_t q = 3; q <= 60; ++q) {
        for (const auto& chi : enumerate_primitive(q)) {
            INFO(chi.label());
            const auto g = gauss_root(chi);
            CHECK(norm(g.tau).contains(static_cast<double>(q)));
            CHECK(abs(g.epsilon).contains(1.0));
            // Real characters have root number 1.
            if (chi.is_real())
                CHECK(g.epsilon.re.contains(1.0));
            // tau(conj chi) = chi(-1) conj(tau(chi))
            const auto h = gauss_root(chi.conj());
            const double s = chi.parity() == 1 ? -1.0 : 1.0;
            CHECK(h.tau.re.intersects(s * g.tau.re));
            CHECK(h.tau.im.intersects(-s * g.tau.im));
        }
    }
}
