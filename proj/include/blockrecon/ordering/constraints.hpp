#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blockrecon/common/error.hpp"
#include "blockrecon/iblt/iblt.hpp"
#include "blockrecon/ordering/buckets.hpp"

namespace blockrecon::ordering {

class InconsistentSystem : public Error {
public:
    using Error::Error;
};

struct Equation {
    std::vector<std::uint32_t> vars; // sorted, distinct
    std::int64_t rhs = 0;

    bool operator==(const Equation&) const = default;
};

/// Linear equations over the unknown block positions I(v) in 1..n of n variables. Variable v is
/// the v-th transaction in whatever order the caller chose (the receiver uses sorted ShortIds).
struct ConstraintSystem {
    std::uint32_t n = 0;
    std::vector<Equation> equations;
};

/// One equation per non-empty (cell, bucket) pair of `t` over the transactions `ids`, plus the
/// global sum n(n+1)/2. Equations over identical variable sets are merged (their right-hand
/// sides must agree, otherwise InconsistentSystem).
ConstraintSystem build_constraints(const iblt::Iblt& t, std::span<const ShortId> ids, const BucketEncoding& enc);

struct SolveOutcome {
    /// assignment[v] is the resolved 1-based index, 0 if unresolved.
    std::vector<std::uint32_t> assignment;
    std::vector<std::uint32_t> unresolved;
    bool complete() const { return unresolved.empty(); }
};

/// Repeatedly fixes variables of single-unknown equations and substitutes them everywhere.
/// Never guesses. A value outside 1..n, a value taken twice, or a fully substituted equation
/// with a non-zero residual throws InconsistentSystem.
SolveOutcome propagate_solve(const ConstraintSystem& cs);

/// Same, starting from already known values (`known[v]` non-zero).
SolveOutcome propagate_solve(const ConstraintSystem& cs, const std::vector<std::uint32_t>& known);

struct ResidualRank {
    std::uint32_t unknowns = 0;
    std::uint32_t rank = 0;
    /// Unknowns with no pivot: revealing these makes the residual system square and solvable.
    std::vector<std::uint32_t> free_vars;

    std::uint32_t deficit() const { return unknowns - rank; }
};

/// Rank of the equations left after propagation, restricted to the unresolved variables,
/// computed by Gaussian elimination modulo the prime 2^31 - 1.
ResidualRank residual_rank(const ConstraintSystem& cs, const SolveOutcome& partial);

/// Completes `partial` by solving the residual system. Returns false when it is singular or its
/// solution is not a permutation of 1..n.
bool linear_solve(const ConstraintSystem& cs, SolveOutcome& partial);

struct FallbackResult {
    /// Indices that had to be sent unencoded: max(0, unknowns - independent equations).
    std::uint32_t unencoded = 0;
    std::vector<std::uint32_t> revealed_vars;
    bool recovered = false;
    bool singular = false;
    std::vector<std::uint32_t> assignment;
};

/// Reveals the true index of every free variable of the residual system, re-propagates and
/// finishes with a linear solve. `truth[v]` is the 1-based index of variable v. Recovery is
/// checked against `truth`.
FallbackResult square_system_fallback(const ConstraintSystem& cs, std::span<const std::uint32_t> truth);

/// Receiver side of the same: `revealed` holds (variable, index) pairs sent by the encoder.
/// Returns the full assignment or throws InconsistentSystem when recovery is impossible.
std::vector<std::uint32_t> recover_order(const ConstraintSystem& cs,
                                         std::span<const std::pair<std::uint32_t, std::uint32_t>> revealed);

} // namespace blockrecon::ordering
