#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blockrecon/common/bytes.hpp"
#include "blockrecon/common/short_id.hpp"

namespace blockrecon::ordering {

/// ceil(log2 n); zero for n <= 1.
std::uint32_t index_bits(std::uint64_t n);

/// Bytes of a lexicographic payload for n transactions.
std::size_t lex_payload_bytes(std::uint64_t n);

/// `canonical` lists the block's ShortIds in block order. The payload walks the ids in
/// lexicographic order and records each one's block position (0-based) in index_bits(n) bits,
/// packed MSB-first. Duplicate ids throw InvalidArgument.
Bytes lex_order_encode(std::span<const ShortId> canonical);

/// Inverse of lex_order_encode; `ids` may be in any order. Throws MalformedMessage on a size
/// mismatch, an out-of-range or repeated position, or non-zero padding.
std::vector<ShortId> lex_order_decode(std::span<const ShortId> ids, ByteView payload);

} // namespace blockrecon::ordering
