#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "blockrecon/common/bytes.hpp"
#include "blockrecon/common/random.hpp"

namespace blockrecon::filters {

struct CuckooParams {
    std::uint32_t bucket_count = 1024;  // must be a power of two
    std::uint32_t bucket_capacity = 4;
    std::uint32_t fingerprint_bits = 12; // 1..16
    std::uint32_t max_kicks = 500;
    std::uint64_t seed = 0;
};

/// Fingerprint width for a target false-positive rate: ceil(log2(2 * capacity / fpr)).
std::uint32_t cuckoo_fingerprint_bits(double target_fpr, std::uint32_t bucket_capacity = 4);

/// Partial-key cuckoo filter. The alternate bucket of a fingerprint is i XOR hash(fp), so
/// either bucket can be recovered from the other without the original element.
class CuckooFilter {
public:
    explicit CuckooFilter(const CuckooParams& params);

    /// Smallest power-of-two table holding `items` at no more than `max_load`.
    static CuckooFilter for_capacity(std::size_t items, std::uint32_t fingerprint_bits, std::uint64_t seed,
                                     double max_load = 0.95);

    /// False when the relocation budget is exhausted; the table is then restored to its
    /// state before the call.
    bool insert(ByteView element);
    bool contains(ByteView element) const;
    /// Removes one matching fingerprint. Only elements previously inserted may be erased.
    bool erase(ByteView element);

    std::size_t size() const { return occupied_; }
    std::size_t slot_count() const { return slots_.size(); }
    double load_factor() const { return static_cast<double>(occupied_) / static_cast<double>(slots_.size()); }
    const CuckooParams& params() const { return params_; }

    /// Fingerprints held in one bucket, sorted, empties omitted.
    std::vector<std::uint16_t> bucket(std::uint32_t index) const;
    /// (lower candidate bucket, fingerprint) for every resident fingerprint, sorted. Invariant
    /// under relocations, so it identifies the logical contents of the filter.
    std::vector<std::pair<std::uint32_t, std::uint16_t>> canonical_contents() const;

    /// Canonical entry `element` would occupy; two elements with equal keys are indistinguishable.
    std::pair<std::uint32_t, std::uint16_t> canonical_key(ByteView element) const;

    bool operator==(const CuckooFilter& other) const { return slots_ == other.slots_; }

private:
    struct Probe {
        std::uint32_t primary;
        std::uint16_t fingerprint;
    };
    Probe probe(ByteView element) const;
    std::uint32_t alternate(std::uint32_t index, std::uint16_t fp) const;
    bool place(std::uint32_t index, std::uint16_t fp);
    bool holds(std::uint32_t index, std::uint16_t fp) const;

    CuckooParams params_;
    std::uint32_t mask_;
    std::vector<std::uint16_t> slots_;
    std::size_t occupied_ = 0;
    Rng kick_rng_;
};

} // namespace blockrecon::filters
