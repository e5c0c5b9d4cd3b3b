#pragma once

#include <cstdint>
#include <span>

#include "blockrecon/common/short_id.hpp"
#include "blockrecon/iblt/iblt.hpp"

namespace blockrecon::ordering {

/// Layout of transaction indices inside IBLT valueSum fields: each value is split into
/// `bucket_count` little-endian accumulators of `bucket_width` bytes.
struct BucketEncoding {
    std::uint32_t n = 0;
    std::uint32_t bucket_count = 1;
    std::uint32_t bucket_width = 1;

    std::uint32_t value_width() const { return bucket_count * bucket_width; }
    bool operator==(const BucketEncoding&) const = default;
};

/// Whole bytes needed for one index: max(1, ceil(ceil(log2 n) / 8)).
std::uint32_t index_bucket_width(std::uint64_t n);

/// Bytes for a bucket that may accumulate `max_addends` indices of a block of n transactions:
/// enough whole bytes for the largest possible sum, max_addends * n, and never less than
/// index_bucket_width(n).
std::uint32_t bucket_width_for(std::uint64_t n, std::uint64_t max_addends);

/// Encoding with b buckets carved from a v-byte value: b = floor(v / bucket_width).
BucketEncoding make_bucket_encoding(std::uint32_t n, std::uint32_t value_width, std::uint32_t bucket_width);

/// Bucket of `tx` in the i-th of its cells: byte i of the ShortId, mod b.
inline std::uint32_t bucket_of(const ShortId& tx, std::size_t i, const BucketEncoding& enc)
{
    return tx[i % kShortIdBytes] % enc.bucket_count;
}

/// Adds the 1-based `index` into the selected bucket of each of the tx's cells (wrapping).
void bucket_index_encode(iblt::Iblt& t, const ShortId& tx, std::uint32_t index, const BucketEncoding& enc);

/// Current value of one bucket.
std::uint64_t read_bucket(const iblt::Iblt& t, std::uint32_t cell, std::uint32_t bucket, const BucketEncoding& enc);

/// Inserts every transaction (in block order, index = position + 1) and encodes its index.
/// The bucket width is checked against the actual worst bucket load; an encoding too narrow to
/// hold some bucket's sum throws InvalidArgument.
void encode_block_indices(iblt::Iblt& t, std::span<const ShortId> canonical, const BucketEncoding& enc);

/// Largest number of transactions landing in one (cell, bucket) pair.
std::uint32_t max_bucket_addends(const iblt::Iblt& t, std::span<const ShortId> ids, const BucketEncoding& enc);

} // namespace blockrecon::ordering
