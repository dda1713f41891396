// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lzero/interval.hpp"

namespace lzero {

class Box {
  public:
    Box() = default;
    Box(std::initializer_list<Interval> dims) : dims_(dims) {}
    explicit Box(std::vector<Interval> dims) : dims_(std::move(dims)) {}

    [[nodiscard]] std::size_t size() const { return dims_.size(); }
    const Interval& operator[](std::size_t i) const { return dims_[i]; }
    Interval& operator[](std::size_t i) { return dims_[i]; }
    [[nodiscard]] std::size_t widest_dim() const;
    [[nodiscard]] double max_width() const;
    // Splits the widest dimension at its midpoint. Returns nullopt when the
    // box can no longer be split in floating point.
    [[nodiscard]] std::optional<std::pair<Box, Box>> bisect() const;
    [[nodiscard]] Box midpoint() const;
    [[nodiscard]] const std::vector<Interval>& dims() const { return dims_; }

  private:
    std::vector<Interval> dims_;
};

using BoxFunction = std::function<Interval(const Box&)>;
// Evaluates f and g together so shared subexpressions are computed once.
using PairFunction = std::function<std::pair<Interval, Interval>(const Box&)>;

enum class ProofStatus { proved, disproved, inconclusive };
std::string to_string(ProofStatus s);

struct CertificateLeaf {
    std::string path; // sequence of L/R choices from the root box
    Box box;
    Interval f;
    Interval g;
};

struct ProofOutcome {
    ProofStatus status = ProofStatus::inconclusive;
    std::vector<CertificateLeaf> leaves;   // proved leaves; a full tiling when status is proved
    std::optional<CertificateLeaf> witness; // set when disproved
    std::size_t work = 0;                  // number of box evaluations
    std::string reason;

    void write_jsonl(std::ostream& os) const;
};

// Moore-Skelboe style proof of f <= g on the domain. Boxes are bisected along
// their widest dimension and processed in order of worst margin. A box counts
// as proved only when f.hi <= g.lo; a false statement is never reported as
// proved. Evaluation errors (e.g. DomainError) force a split.
ProofOutcome prove_upper_bound(const PairFunction& fg, const Box& domain, std::size_t budget);
ProofOutcome prove_upper_bound(const BoxFunction& f, const BoxFunction& g, const Box& domain, std::size_t budget);

// Re-evaluates every leaf, checks that each box is the one reached by its path
// and that the paths tile the domain. Returns an empty string on success.
std::string check_certificate(const ProofOutcome& proof, const PairFunction& fg, const Box& domain);

struct RangeResult {
    Interval enclosure;
    bool converged = false; // false means the budget ran out; enclosure is still valid
    std::size_t work = 0;
};

// Adaptive bisection until the enclosure of the range overestimates by at
// most tol on each side.
RangeResult enclose_range(const BoxFunction& f, const Box& domain, double tol, std::size_t budget);

} // namespace lzero
