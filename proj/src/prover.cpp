// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#include "lzero/prover.hpp"

#include <algorithm>
#include <ostream>
#include <queue>

#include <json.hpp>

namespace lzero {

std::size_t Box::widest_dim() const {
    std::size_t best = 0;
    double w = -1;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i].width() > w) {
            w = dims_[i].width();
            best = i;
        }
    }
    return best;
}

double Box::max_width() const { return dims_.empty() ? 0.0 : dims_[widest_dim()].width(); }

std::optional<std::pair<Box, Box>> Box::bisect() const {
    const std::size_t d = widest_dim();
    const Interval& x = dims_[d];
    const double m = x.mid();
    if (!(x.lo() < m && m < x.hi()))
        return std::nullopt;
    Box left = *this;
    Box right = *this;
    left.dims_[d] = Interval(x.lo(), m);
    right.dims_[d] = Interval(m, x.hi());
    return std::make_pair(std::move(left), std::move(right));
}

Box Box::midpoint() const {
    Box b = *this;
    for (auto& x : b.dims_)
        x = Interval(x.mid());
    return b;
}

std::string to_string(ProofStatus s) {
    switch (s) {
    case ProofStatus::proved: return "proved";
    case ProofStatus::disproved: return "disproved";
    case ProofStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

nlohmann::json leaf_json(const CertificateLeaf& leaf) {
    nlohmann::json lo = nlohmann::json::array();
    nlohmann::json hi = nlohmann::json::array();
    for (const auto& x : leaf.box.dims()) {
        lo.push_back(x.lo());
        hi.push_back(x.hi());
    }
    return {{"path", leaf.path},
            {"lo", lo},
            {"hi", hi},
            {"f", {leaf.f.lo(), leaf.f.hi()}},
            {"g", {leaf.g.lo(), leaf.g.hi()}}};
}

struct Pending {
    double key; // f.hi - g.lo, larger is worse
    std::size_t seq;
    CertificateLeaf leaf;
    bool failed;
};

struct PendingOrder {
    bool operator()(const Pending& a, const Pending& b) const {
        if (a.key != b.key)
            return a.key < b.key;
        return a.seq > b.seq;
    }
};

} // namespace

void ProofOutcome::write_jsonl(std::ostream& os) const {
    for (const auto& leaf : leaves)
        os << leaf_json(leaf).dump() << '\n';
}

ProofOutcome prove_upper_bound(const PairFunction& fg, const Box& domain, std::size_t budget) {
    ProofOutcome out;
    std::priority_queue<Pending, std::vector<Pending>, PendingOrder> queue;
    std::size_t seq = 0;

    auto push = [&](Box box, std::string path) {
        Pending p{0.0, seq++, {std::move(path), std::move(box), 0.0, 0.0}, false};
        ++out.work;
        try {
            auto [f, g] = fg(p.leaf.box);
            p.leaf.f = f;
            p.leaf.g = g;
            p.key = f.hi() - g.lo();
            if (std::isnan(p.key))
                p.key = rnd::inf;
        } catch (const Error&) {
            p.failed = true;
            p.key = rnd::inf;
        }
        queue.push(std::move(p));
    };

    push(domain, "");
    while (!queue.empty()) {
        Pending p = queue.top();
        queue.pop();
        if (!p.failed && p.leaf.f.hi() <= p.leaf.g.lo()) {
            out.leaves.push_back(std::move(p.leaf));
            continue;
        }
        if (!p.failed && p.leaf.f.lo() > p.leaf.g.hi()) {
            out.status = ProofStatus::disproved;
            out.witness = std::move(p.leaf);
            out.reason = "f exceeds g on the whole witness box";
            return out;
        }
        if (out.work + 2 > budget) {
            out.status = ProofStatus::inconclusive;
            out.reason = "budget exhausted with " + std::to_string(queue.size() + 1) + " open boxes";
            return out;
        }
        auto halves = p.leaf.box.bisect();
        if (!halves) {
            out.status = ProofStatus::inconclusive;
            out.reason = "box at floating-point resolution cannot be decided";
            out.witness = std::move(p.leaf);
            return out;
        }
        push(std::move(halves->first), p.leaf.path + "L");
        push(std::move(halves->second), p.leaf.path + "R");
    }
    out.status = ProofStatus::proved;
    return out;
}

ProofOutcome prove_upper_bound(const BoxFunction& f, const BoxFunction& g, const Box& domain, std::size_t budget) {
    return prove_upper_bound([&](const Box& b) { return std::make_pair(f(b), g(b)); }, domain, budget);
}

namespace {

// True when the sorted paths in [first, last) are exactly the leaves of a
// full binary tree rooted at prefix.
bool tiles(const std::vector<std::string>& paths, std::size_t first, std::size_t last, const std::string& prefix) {
    if (first == last)
        return false;
    if (last - first == 1 && paths[first] == prefix)
        return true;
    if (paths[first] == prefix)
        return false; // a leaf with descendants
    std::size_t split = first;
    while (split < last && paths[split][prefix.size()] == 'L')
        ++split;
    return tiles(paths, first, split, prefix + "L") && tiles(paths, split, last, prefix + "R");
}

} // namespace

std::string check_certificate(const ProofOutcome& proof, const PairFunction& fg, const Box& domain) {
    if (proof.status != ProofStatus::proved)
        return "outcome is not a proof";
    std::vector<std::string> paths;
    for (const auto& leaf : proof.leaves) {
        Box b = domain;
        for (char c : leaf.path) {
            auto halves = b.bisect();
            if (!halves)
                return "path " + leaf.path + " descends below resolution";
            b = c == 'L' ? halves->first : halves->second;
        }
        if (b.dims() != leaf.box.dims())
            return "leaf " + leaf.path + " does not match its path";
        auto [f, g] = fg(b);
        if (!(f.hi() <= g.lo()))
            return "leaf " + leaf.path + " fails on re-evaluation";
        paths.push_back(leaf.path);
    }
    std::sort(paths.begin(), paths.end());
    if (!tiles(paths, 0, paths.size(), ""))
        return "leaves do not tile the domain";
    return {};
}

RangeResult enclose_range(const BoxFunction& f, const Box& domain, double tol, std::size_t budget) {
    struct Node {
        Box box;
        Interval value;
        bool alive;
    };
    std::vector<Node> nodes;
    RangeResult res;
    double max_lower = -rnd::inf; // a value certainly attained lies above this
    double min_upper = rnd::inf;

    auto eval = [&](const Box& b) -> Interval {
        ++res.work;
        try {
            return f(b);
        } catch (const Error&) {
            return Interval::entire();
        }
    };
    auto sample = [&](const Box& b) {
        try {
            const Interval v = f(b.midpoint());
            max_lower = std::max(max_lower, v.lo());
            min_upper = std::min(min_upper, v.hi());
        } catch (const Error&) {
        }
    };

    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry> by_hi;                                          // largest upper end first
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> by_lo;      // smallest lower end first
    auto add = [&](Box b) {
        const Interval v = eval(b);
        sample(b);
        nodes.push_back({std::move(b), v, true});
        by_hi.emplace(v.hi(), nodes.size() - 1);
        by_lo.emplace(v.lo(), nodes.size() - 1);
    };

    add(domain);
    while (true) {
        while (!nodes[by_hi.top().second].alive)
            by_hi.pop();
        while (!nodes[by_lo.top().second].alive)
            by_lo.pop();
        const std::size_t top = by_hi.top().second;
        const std::size_t bottom = by_lo.top().second;
        const double upper = nodes[top].value.hi();
        const double lower = nodes[bottom].value.lo();
        res.enclosure = Interval(lower, upper);
        const double gap_hi = upper - max_lower;
        const double gap_lo = min_upper - lower;
        if (gap_hi <= tol && gap_lo <= tol) {
            res.converged = true;
            return res;
        }
        if (res.work + 2 > budget)
            return res;
        const std::size_t pick = gap_hi >= gap_lo ? top : bottom;
        auto halves = nodes[pick].box.bisect();
        if (!halves)
            return res;
        nodes[pick].alive = false;
        add(std::move(halves->first));
        add(std::move(halves->second));
    }
}

} // namespace lzero
