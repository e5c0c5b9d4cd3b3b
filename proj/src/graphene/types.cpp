#include "blockrecon/graphene/types.hpp"

namespace blockrecon::graphene {

std::vector<ShortId> Block::short_ids() const
{
    std::vector<ShortId> out;
    out.reserve(tx_hashes.size());
    for (const auto& h : tx_hashes) out.push_back(short_id_of(h));
    return out;
}

void Block::validate() const
{
    if (tx_hashes.size() != tx_payloads.size()) throw InvalidArgument("block has mismatched hash and payload lists");
}

Bytes serialize_full_block(const Block& block)
{
    block.validate();
    Bytes out;
    out.reserve(full_block_size(block));
    ByteWriter w(out);
    w.blob(block.aux_header);
    w.u32(static_cast<std::uint32_t>(block.size()));
    for (std::size_t i = 0; i < block.size(); ++i) {
        w.raw(block.tx_hashes[i]);
        w.blob(block.tx_payloads[i]);
    }
    return out;
}

std::size_t full_block_size(const Block& block)
{
    std::size_t bytes = 4 + block.aux_header.size() + 4;
    for (const auto& p : block.tx_payloads) bytes += 32 + 4 + p.size();
    return bytes;
}

Hash32 block_hash(const Block& block) { return hash256(serialize_full_block(block)); }

bool Mempool::add(const Hash32& hash, Bytes payload)
{
    auto& slot = by_sid_[short_id_key(short_id_of(hash))];
    for (std::uint32_t i : slot)
        if (entries_[i].hash == hash) return false;
    slot.push_back(static_cast<std::uint32_t>(entries_.size()));
    entries_.push_back(Transaction{hash, std::move(payload)});
    return true;
}

bool Mempool::contains(const Hash32& hash) const
{
    for (const auto* tx : by_short_id(short_id_of(hash)))
        if (tx->hash == hash) return true;
    return false;
}

std::vector<const Transaction*> Mempool::by_short_id(const ShortId& id) const
{
    std::vector<const Transaction*> out;
    auto it = by_sid_.find(short_id_key(id));
    if (it == by_sid_.end()) return out;
    for (std::uint32_t i : it->second) out.push_back(&entries_[i]);
    return out;
}

} // namespace blockrecon::graphene
