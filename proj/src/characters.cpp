// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/characters.hpp"

#include <algorithm>
#include <numeric>

namespace lzero {

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> f;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        f.emplace_back(p, k);
    }
    if (n > 1)
        f.emplace_back(n, 1);
    return f;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, k] : factorize(n))
        r = r / p * (p - 1);
    return r;
}

int mobius(std::uint64_t n) {
    int m = 1;
    for (auto [p, k] : factorize(n)) {
        if (k > 1)
            return 0;
        m = -m;
    }
    return m;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> d;
    for (std::uint64_t i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i * i != n)
                d.push_back(n / i);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::uint64_t primitive_count(std::uint64_t q) {
    std::int64_t s = 0;
    for (auto d : divisors(q))
        s += mobius(q / d) * static_cast<std::int64_t>(euler_phi(d));
    return static_cast<std::uint64_t>(s);
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1)
            r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        const std::int64_t qq = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
        std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
    }
    if (r != 1)
        throw DomainError("no modular inverse");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

std::uint64_t primitive_root_mod_prime(std::uint64_t p) {
    if (p == 2)
        return 1;
    const auto f = factorize(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [r, k] : f) {
            if (powmod(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            return g;
    }
    throw DomainError("no primitive root");
}

} // namespace

CharacterGroup::CharacterGroup(std::uint64_t q) : q_(q) {
    if (q == 0)
        throw DomainError("modulus must be positive");
    for (auto [p, k] : factorize(q)) {
        std::uint64_t pk = 1;
        for (int i = 0; i < k; ++i)
            pk *= p;
        if (p == 2) {
            if (k == 1)
                continue;
            comps_.push_back({pk, 2, pk - 1, true, false, {}});
            if (k >= 3) {
                Component c{pk, pk / 4, 5, false, true, std::vector<std::int64_t>(pk, -1)};
                std::uint64_t x = 1;
                for (std::uint64_t e = 0; e < c.order; ++e) {
                    c.dlog[x] = static_cast<std::int64_t>(e);
                    x = x * 5 % pk;
                }
                comps_.push_back(std::move(c));
            }
            continue;
        }
        std::uint64_t g = primitive_root_mod_prime(p);
        if (k >= 2 && powmod(g, p - 1, p * p) == 1)
            g += p;
        Component c{pk, pk / p * (p - 1), g, false, false, std::vector<std::int64_t>(pk, -1)};
        std::uint64_t x = 1;
        for (std::uint64_t e = 0; e < c.order; ++e) {
            c.dlog[x] = static_cast<std::int64_t>(e);
            x = x * g % pk;
        }
        comps_.push_back(std::move(c));
    }
    for (const auto& c : comps_)
        L_ = std::lcm(L_, c.order);
}

std::uint64_t CharacterGroup::size() const {
    std::uint64_t s = 1;
    for (const auto& c : comps_)
        s *= c.order;
    return s;
}

std::vector<std::uint64_t> CharacterGroup::orders() const {
    std::vector<std::uint64_t> o;
    for (const auto& c : comps_)
        o.push_back(c.order);
    return o;
}

std::vector<std::uint64_t> CharacterGroup::generators() const {
    std::vector<std::uint64_t> g;
    for (const auto& c : comps_) {
        const std::uint64_t m = q_ / c.pk;
        if (m == 1) {
            g.push_back(c.gen);
            continue;
        }
        // G = 1 + m t with G = gen mod pk
        const std::uint64_t t = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>((c.gen + c.pk - 1) % c.pk) * inverse_mod(m % c.pk, c.pk) % c.pk);
        g.push_back((1 + m * t) % q_);
    }
    return g;
}

std::uint64_t CharacterGroup::component_log(const Component& c, std::uint64_t n) const {
    std::uint64_t r = n % c.pk;
    if (c.minus_one)
        return r % 4 == 3 ? 1 : 0;
    if (c.five && r % 4 == 3)
        r = c.pk - r;
    return static_cast<std::uint64_t>(c.dlog[r]);
}

std::uint64_t CharacterGroup::index_of(const std::vector<std::uint64_t>& exps) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i)
        idx = idx * comps_[i].order + exps[i] % comps_[i].order;
    return idx;
}

DirichletCharacter CharacterGroup::character(std::uint64_t index) const {
    if (index >= size())
        throw DomainError("character index " + std::to_string(index) + " out of range for modulus " +
                          std::to_string(q_));
    DirichletCharacter chi;
    chi.q_ = q_;
    chi.L_ = L_;
    chi.index_ = index;
    chi.gen_exp_.assign(comps_.size(), 0);
    std::uint64_t rest = index;
    for (std::size_t i = comps_.size(); i-- > 0;) {
        chi.gen_exp_[i] = rest % comps_[i].order;
        rest /= comps_[i].order;
    }
    std::vector<std::uint64_t> neg(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i)
        neg[i] = (comps_[i].order - chi.gen_exp_[i]) % comps_[i].order;
    chi.conj_index_ = index_of(neg);
    chi.table_.assign(q_, -1);
    for (std::uint64_t n = 0; n < q_; ++n) {
        if (std::gcd(n, q_) != 1)
            continue;
        unsigned __int128 e = 0;
        for (std::size_t i = 0; i < comps_.size(); ++i)
            e += static_cast<unsigned __int128>(chi.gen_exp_[i]) * component_log(comps_[i], n) * (L_ / comps_[i].order);
        chi.table_[n] = static_cast<std::int64_t>(e % L_);
    }
    chi.meta_ = conductor_parity(chi);
    return chi;
}

std::optional<std::uint64_t> DirichletCharacter::exponent(std::uint64_t n) const {
    const std::int64_t e = table_[n % q_];
    if (e < 0)
        return std::nullopt;
    return static_cast<std::uint64_t>(e);
}

std::optional<Rational> DirichletCharacter::value_turns(std::uint64_t n) const {
    const auto e = exponent(n);
    if (!e)
        return std::nullopt;
    return Rational(static_cast<std::int64_t>(*e), static_cast<std::int64_t>(L_));
}

CInterval DirichletCharacter::value(std::uint64_t n) const {
    const auto e = exponent(n);
    if (!e)
        return CInterval(Interval(0.0));
    if (*e == 0)
        return CInterval(Interval(1.0));
    if (2 * *e == L_)
        return CInterval(Interval(-1.0));
    return expi(Interval::two_pi() * Interval::ratio(static_cast<std::int64_t>(*e), static_cast<std::int64_t>(L_)));
}

DirichletCharacter DirichletCharacter::conj() const { return CharacterGroup(q_).character(conj_index_); }

CharacterMeta conductor_parity(const DirichletCharacter& chi) {
    CharacterMeta m;
    const std::uint64_t q = chi.modulus();
    m.parity = q <= 2 ? 0 : (*chi.exponent(q - 1) == 0 ? 0 : 1);
    m.real = true;
    for (std::uint64_t n = 1; n < q; ++n) {
        const auto e = chi.exponent(n);
        if (e && (2 * *e) % chi.exponent_base() != 0) {
            m.real = false;
            break;
        }
    }
    m.conductor = q;
    for (auto d : divisors(q)) {
        bool trivial = true;
        for (std::uint64_t n = 1; n < q && trivial; n += d) {
            const auto e = chi.exponent(n);
            if (e && *e != 0)
                trivial = false;
        }
        if (trivial) {
            m.conductor = d;
            break;
        }
    }
    m.primitive = m.conductor == q;
    return m;
}

std::vector<DirichletCharacter> enumerate_characters(std::uint64_t q) {
    const CharacterGroup G(q);
    std::vector<DirichletCharacter> out;
    for (std::uint64_t i = 0; i < G.size(); ++i)
        out.push_back(G.character(i));
    return out;
}

std::vector<DirichletCharacter> enumerate_primitive(std::uint64_t q, bool one_per_pair) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : enumerate_characters(q)) {
        if (!chi.is_primitive())
            continue;
        if (one_per_pair && !chi.is_conjugate_representative())
            continue;
        out.push_back(std::move(chi));
    }
    return out;
}

DirichletCharacter character_from_label(const std::string& label) {
    const auto dot = label.find('.');
    try {
        if (dot == std::string::npos)
            throw std::invalid_argument(label);
        const std::uint64_t q = std::stoull(label.substr(0, dot));
        const std::uint64_t idx = std::stoull(label.substr(dot + 1));
        return CharacterGroup(q).character(idx);
    } catch (const std::logic_error&) {
        throw DomainError("malformed character label '" + label + "'");
    }
}

GaussRoot gauss_root(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw NotPrimitive("character " + chi.label() + " has conductor " + std::to_string(chi.meta().conductor));
    const std::uint64_t q = chi.modulus();
    const std::uint64_t L = chi.exponent_base();
    const std::uint64_t M = L * q;
    CInterval tau(Interval(0.0), Interval(0.0));
    for (std::uint64_t n = 1; n < q; ++n) {
        const auto e = chi.exponent(n);
        if (!e)
            continue;
        // chi(n) e^{2 pi i n / q} = e^{2 pi i (e q + n L) / (L q)}
        const std::uint64_t num = (*e * q + n * L) % M;
        tau += expi(Interval::two_pi() * Interval::ratio(static_cast<std::int64_t>(num), static_cast<std::int64_t>(M)));
    }
    if (q == 1)
        tau = CInterval(Interval(1.0));
    GaussRoot g;
    g.tau = tau;
    CInterval t = chi.parity() == 1 ? CInterval(tau.im, -tau.re) : tau; // divide by i^a
    const Interval sq = sqrt(Interval(static_cast<double>(q)));
    g.epsilon = CInterval(t.re / sq, t.im / sq);
    if (g.epsilon.re.hi() < 0 && g.epsilon.im.contains(0.0))
        g.epsilon_arg = Interval::pi() + atan(g.epsilon.im / g.epsilon.re);
    else
        g.epsilon_arg = arg(g.epsilon);
    return g;
}

} // namespace lzero
