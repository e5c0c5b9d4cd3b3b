#include "blockrecon/ordering/buckets.hpp"

#include <algorithm>
#include <unordered_map>

#include "blockrecon/ordering/lex.hpp"

namespace blockrecon::ordering {

namespace {

std::uint32_t bit_length(std::uint64_t v)
{
    std::uint32_t bits = 0;
    while (v != 0) {
        ++bits;
        v >>= 1;
    }
    return bits;
}

} // namespace

std::uint32_t index_bucket_width(std::uint64_t n)
{
    return std::max<std::uint32_t>(1, (index_bits(n) + 7) / 8);
}

std::uint32_t bucket_width_for(std::uint64_t n, std::uint64_t max_addends)
{
    // Largest possible bucket sum is max_addends * n.
    const std::uint32_t bits = bit_length(std::max<std::uint64_t>(1, max_addends) * n);
    return std::max(index_bucket_width(n), (bits + 7) / 8);
}

BucketEncoding make_bucket_encoding(std::uint32_t n, std::uint32_t value_width, std::uint32_t bucket_width)
{
    if (bucket_width == 0 || bucket_width > 8) throw InvalidArgument("bucket width must be 1..8 bytes");
    const std::uint32_t b = value_width / bucket_width;
    if (b < 1) throw InvalidArgument("value field too narrow for a single bucket");
    return BucketEncoding{n, b, bucket_width};
}

void bucket_index_encode(iblt::Iblt& t, const ShortId& tx, std::uint32_t index, const BucketEncoding& enc)
{
    if (t.params().value_width < enc.value_width()) throw InvalidArgument("IBLT value field smaller than the encoding");
    if (index < 1 || index > enc.n) throw InvalidArgument("transaction index outside 1..n");
    const auto cells = t.cell_indices(tx);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto value = t.mutable_value_sum(cells[i]);
        const std::size_t off = static_cast<std::size_t>(bucket_of(tx, i, enc)) * enc.bucket_width;
        std::uint64_t carry = index;
        for (std::uint32_t byte = 0; byte < enc.bucket_width && carry != 0; ++byte) {
            carry += value[off + byte];
            value[off + byte] = static_cast<std::uint8_t>(carry);
            carry >>= 8;
        }
    }
}

std::uint64_t read_bucket(const iblt::Iblt& t, std::uint32_t cell, std::uint32_t bucket, const BucketEncoding& enc)
{
    const auto value = t.value_sum(cell);
    const std::size_t off = static_cast<std::size_t>(bucket) * enc.bucket_width;
    std::uint64_t v = 0;
    for (std::uint32_t byte = 0; byte < enc.bucket_width; ++byte)
        v |= static_cast<std::uint64_t>(value[off + byte]) << (8 * byte);
    return v;
}

std::uint32_t max_bucket_addends(const iblt::Iblt& t, std::span<const ShortId> ids, const BucketEncoding& enc)
{
    std::unordered_map<std::uint64_t, std::uint32_t> load;
    std::uint32_t worst = 0;
    for (const auto& id : ids) {
        const auto cells = t.cell_indices(id);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::uint64_t slot = static_cast<std::uint64_t>(cells[i]) * enc.bucket_count + bucket_of(id, i, enc);
            worst = std::max(worst, ++load[slot]);
        }
    }
    return worst;
}

void encode_block_indices(iblt::Iblt& t, std::span<const ShortId> canonical, const BucketEncoding& enc)
{
    if (canonical.size() != enc.n) throw InvalidArgument("encoding sized for a different transaction count");
    if (bucket_width_for(enc.n, max_bucket_addends(t, canonical, enc)) > enc.bucket_width)
        throw InvalidArgument("bucket width too small for the bucket sums of this block");
    const Bytes zero(t.params().value_width, 0);
    for (std::size_t i = 0; i < canonical.size(); ++i) {
        t.insert(canonical[i], zero);
        bucket_index_encode(t, canonical[i], static_cast<std::uint32_t>(i + 1), enc);
    }
}

} // namespace blockrecon::ordering
