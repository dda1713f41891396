// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lzero/complex_interval.hpp"
#include "lzero/rational.hpp"

namespace lzero {

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
// Number of primitive characters modulo q, via sum_{d|q} mu(q/d) phi(d).
std::uint64_t primitive_count(std::uint64_t q);

struct CharacterMeta {
    std::uint64_t conductor = 1;
    int parity = 0; // a = 0 if chi(-1) = 1, a = 1 if chi(-1) = -1
    bool primitive = false;
    bool real = false;
};

// Dirichlet character with exact values: chi(n) = exp(2 pi i e(n) / L) where
// L is the exponent of (Z/qZ)^* and e(n) is an integer in [0, L).
//
// Characters mod q are indexed by exponent vectors on a fixed generating set
// of (Z/qZ)^*: prime-power components in increasing order of p, with the
// smallest primitive root (lifted to p^2 when needed) for odd p, and -1 then 5
// for 2^k, k >= 3 (only -1 for k = 2). The index is the position of the vector
// in lexicographic order, and the label is "q.index".
class DirichletCharacter {
  public:
    [[nodiscard]] std::uint64_t modulus() const { return q_; }
    [[nodiscard]] std::uint64_t exponent_base() const { return L_; }
    [[nodiscard]] std::uint64_t index() const { return index_; }
    [[nodiscard]] std::string label() const { return std::to_string(q_) + "." + std::to_string(index_); }
    [[nodiscard]] const CharacterMeta& meta() const { return meta_; }
    [[nodiscard]] int parity() const { return meta_.parity; }
    [[nodiscard]] bool is_real() const { return meta_.real; }
    [[nodiscard]] bool is_primitive() const { return meta_.primitive; }
    [[nodiscard]] const std::vector<std::uint64_t>& generator_exponents() const { return gen_exp_; }

    // e(n) for gcd(n, q) = 1, nullopt otherwise.
    [[nodiscard]] std::optional<std::uint64_t> exponent(std::uint64_t n) const;
    // chi(n) as an exact rational in units of 2 pi (0 for non-units is not
    // representable, so nullopt).
    [[nodiscard]] std::optional<Rational> value_turns(std::uint64_t n) const;
    [[nodiscard]] CInterval value(std::uint64_t n) const;
    [[nodiscard]] DirichletCharacter conj() const;
    [[nodiscard]] bool is_conjugate_representative() const { return index_ <= conj_index_; }

  private:
    friend class CharacterGroup;
    std::uint64_t q_ = 1;
    std::uint64_t L_ = 1;
    std::uint64_t index_ = 0;
    std::uint64_t conj_index_ = 0;
    std::vector<std::uint64_t> gen_exp_;
    std::vector<std::int64_t> table_; // e(n) or -1
    CharacterMeta meta_;
};

// The group of characters modulo q with its canonical generators.
class CharacterGroup {
  public:
    explicit CharacterGroup(std::uint64_t q);
    [[nodiscard]] std::uint64_t modulus() const { return q_; }
    [[nodiscard]] std::uint64_t size() const;
    [[nodiscard]] std::uint64_t exponent_base() const { return L_; }
    // Generators as residues mod q (CRT lifts) and their orders.
    [[nodiscard]] std::vector<std::uint64_t> generators() const;
    [[nodiscard]] std::vector<std::uint64_t> orders() const;
    [[nodiscard]] DirichletCharacter character(std::uint64_t index) const;
    [[nodiscard]] std::uint64_t index_of(const std::vector<std::uint64_t>& exps) const;

  private:
    struct Component {
        std::uint64_t pk;     // prime power modulus of the component
        std::uint64_t order;  // order of the generator
        std::uint64_t gen;    // generator residue mod pk
        bool minus_one;       // the -1 generator of 2^k
        bool five;            // the 5 generator of 2^k (k >= 3)
        std::vector<std::int64_t> dlog; // dlog of residues mod pk, -1 if not in the cyclic part
    };
    [[nodiscard]] std::uint64_t component_log(const Component& c, std::uint64_t n) const;
    std::uint64_t q_;
    std::uint64_t L_ = 1;
    std::vector<Component> comps_;
};

std::vector<DirichletCharacter> enumerate_characters(std::uint64_t q);
// Primitive characters mod q in index order; with one_per_pair only the
// member of each conjugate pair with the smaller index is kept (real
// characters are always kept).
std::vector<DirichletCharacter> enumerate_primitive(std::uint64_t q, bool one_per_pair = false);
// Parses "q.index".
DirichletCharacter character_from_label(const std::string& label);

CharacterMeta conductor_parity(const DirichletCharacter& chi);

struct GaussRoot {
    CInterval tau;     // sum_a chi(a) e^{2 pi i a / q}
    CInterval epsilon; // tau / (i^a sqrt q)
    Interval epsilon_arg;
};

// Throws NotPrimitive for imprimitive characters.
GaussRoot gauss_root(const DirichletCharacter& chi);

} // namespace lzero
