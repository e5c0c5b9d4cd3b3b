#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "blockrecon/common/bytes.hpp"
#include "blockrecon/common/short_id.hpp"
#include "blockrecon/iblt/iblt.hpp"

namespace blockrecon::frontier {

struct FrontierEntry {
    Hash32 head_hash{};
    Hash32 account{};

    auto operator<=>(const FrontierEntry&) const = default;
};

struct FrontierSnapshot {
    std::vector<FrontierEntry> entries;
    std::uint64_t timestamp = 0;

    /// Throws InvalidArgument if an account or a head hash appears twice.
    void validate() const;
};

constexpr std::size_t kCellBytes = iblt::cell_bytes(32, 32);
constexpr std::size_t kFullDumpEntryBytes = 64;

/// IBLT keyed by head hash with the account as value, holding every entry of `snap`.
iblt::Iblt frontier_table(const FrontierSnapshot& snap, std::uint32_t cells, std::uint64_t seed, std::uint8_t k = 3);

/// Serialized table with iblt_sizing(2 * expected_delta) cells: a changed account contributes
/// its old and its new head.
Bytes frontier_delta_encode(const FrontierSnapshot& snap, std::uint64_t expected_delta, std::uint64_t seed,
                            double multiplier = 1.5, std::uint8_t k = 3);

struct ReconcileOutcome {
    std::vector<FrontierEntry> changed_heads; // entries only the peer has: pull these
    std::vector<FrontierEntry> my_stale;      // entries only we have: superseded or unknown to the peer
    bool complete = false;
};

/// Subtracts a local table over `mine` from the peer's and peels. Throws ParameterMismatch if the
/// peer's table is not a 32-byte key / 32-byte value table.
ReconcileOutcome frontier_reconcile(const FrontierSnapshot& mine, ByteView theirs);

/// Brute-force difference, sorted: (entries only in theirs, entries only in mine).
ReconcileOutcome snapshot_difference(const FrontierSnapshot& mine, const FrontierSnapshot& theirs);

/// 64-byte records, head hash then account.
void write_snapshot(std::ostream& out, const FrontierSnapshot& snap);
FrontierSnapshot read_snapshot(std::istream& in);

enum class DeltaSizing {
    Exact,   // the responder sizes for the delta it actually saw since the last request
    Previous // twice the previous interval's delta
};

struct FrontierSimConfig {
    std::uint64_t accounts = 100000;
    double mean_changes = 50.0; // Poisson mean of accounts advanced per interval
    std::uint32_t intervals = 60;
    std::uint64_t seed = 1;
    DeltaSizing sizing = DeltaSizing::Exact;
    /// After a failed decode, try once more with twice the cells before a full dump.
    bool retry = true;
    std::uint32_t interval_seconds = 300;
};

struct FrontierInterval {
    std::uint32_t interval = 0;
    std::uint64_t changes = 0;
    std::uint64_t expected_delta = 0;
    std::uint32_t cells = 0;
    std::uint64_t full_bytes = 0;
    std::uint64_t iblt_bytes = 0; // every table sent, retry included
    double build_ms = 0.0;
    bool retried = false;
    bool recovered = false; // IBLT path produced exactly the true difference
};

std::vector<FrontierInterval> frontier_sim(const FrontierSimConfig& cfg);

} // namespace blockrecon::frontier
