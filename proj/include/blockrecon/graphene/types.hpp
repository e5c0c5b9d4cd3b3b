#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "blockrecon/common/bytes.hpp"
#include "blockrecon/common/short_id.hpp"

namespace blockrecon::graphene {

struct Transaction {
    Hash32 hash{};
    Bytes payload;

    bool operator==(const Transaction&) const = default;
};

struct Block {
    std::vector<Hash32> tx_hashes;
    std::vector<Bytes> tx_payloads;
    Bytes aux_header;

    std::size_t size() const { return tx_hashes.size(); }
    std::vector<ShortId> short_ids() const;
    /// Throws InvalidArgument if the hash and payload lists differ in length.
    void validate() const;

    bool operator==(const Block&) const = default;
};

/// Full serialization used as the no-reconciliation baseline: aux header (u32 length + bytes),
/// tx count u32, then each transaction as hash32, u32 length, payload.
Bytes serialize_full_block(const Block& block);
std::size_t full_block_size(const Block& block);
/// hash256 of the full serialization.
Hash32 block_hash(const Block& block);

class Mempool {
public:
    /// False if the hash is already present.
    bool add(const Hash32& hash, Bytes payload = {});
    bool contains(const Hash32& hash) const;

    std::size_t size() const { return entries_.size(); }
    const std::vector<Transaction>& entries() const { return entries_; }

    /// Every entry whose ShortId equals `id`.
    std::vector<const Transaction*> by_short_id(const ShortId& id) const;

private:
    std::vector<Transaction> entries_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_sid_;
};

} // namespace blockrecon::graphene
