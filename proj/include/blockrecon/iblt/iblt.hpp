#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "blockrecon/common/bytes.hpp"

namespace blockrecon::iblt {

struct IbltParams {
    std::uint32_t cell_count = 0;
    std::uint8_t k = 3;
    std::uint8_t key_width = 0;
    std::uint8_t value_width = 0;
    std::uint64_t seed = 0;

    bool operator==(const IbltParams&) const = default;
};

struct KeyValue {
    Bytes key;
    Bytes value;

    auto operator<=>(const KeyValue&) const = default;
};

/// Result of peeling a (usually subtracted) table. `only_in_a` holds entries peeled with count
/// +1 (present in the minuend only), `only_in_b` those peeled with count -1.
struct DecodeResult {
    std::vector<KeyValue> only_in_a;
    std::vector<KeyValue> only_in_b;
    bool complete = false;
};

/// Serialized cell width: count (4) + keySum + hashKeySum (4) + valueSum.
constexpr std::size_t cell_bytes(std::size_t key_width, std::size_t value_width)
{
    return 4 + key_width + 4 + value_width;
}

/// Cells for an expected symmetric difference `d`: max(k, ceil(multiplier * d)), rounded up to a
/// multiple of k.
std::uint32_t iblt_sizing(std::uint64_t d, std::uint32_t k = 3, double multiplier = 1.5);

/// Invertible Bloom lookup table over fixed-width keys and values. Each key occupies k distinct
/// cells; cells accumulate count, XOR of keys, XOR of a 32-bit key checksum and XOR of values.
class Iblt {
public:
    static constexpr std::size_t kHeaderBytes = 4 + 1 + 1 + 1 + 8;

    explicit Iblt(const IbltParams& params);

    void insert(ByteView key, ByteView value = {});
    void erase(ByteView key, ByteView value = {});

    /// Cell-wise difference this - other. Throws ParameterMismatch unless geometry and seed match.
    Iblt subtract(const Iblt& other) const;

    /// Peels pure cells in ascending index order until none remain.
    DecodeResult decode() const;

    /// The k distinct cells `key` maps to, in hash-function order.
    std::vector<std::uint32_t> cell_indices(ByteView key) const;
    std::uint32_t key_checksum(ByteView key) const;

    const IbltParams& params() const { return params_; }
    std::uint32_t cell_count() const { return params_.cell_count; }

    std::int32_t count(std::uint32_t cell) const { return counts_[cell]; }
    ByteView key_sum(std::uint32_t cell) const;
    std::uint32_t hash_sum(std::uint32_t cell) const { return hash_sums_[cell]; }
    ByteView value_sum(std::uint32_t cell) const;
    /// Direct access for encodings that overlay their own arithmetic on the value field.
    std::span<std::uint8_t> mutable_value_sum(std::uint32_t cell);

    bool cell_empty(std::uint32_t cell) const;
    /// count is +1 or -1 and the key checksum matches.
    bool is_pure(std::uint32_t cell) const;
    bool empty() const;

    /// Same keys and counts with the value field dropped.
    Iblt without_values() const;

    /// Header (cell_count u32, k u8, key_width u8, value_width u8, seed u64), then each cell as
    /// count i32, keySum, hashKeySum u32, valueSum. All integers little-endian.
    Bytes serialize() const;
    static Iblt deserialize(ByteView bytes);
    std::size_t serialized_size() const
    {
        return kHeaderBytes + static_cast<std::size_t>(params_.cell_count) *
                                  cell_bytes(params_.key_width, params_.value_width);
    }

    bool operator==(const Iblt&) const = default;

private:
    void apply(ByteView key, ByteView value, std::int32_t sign);
    void apply_at(std::uint32_t cell, ByteView key, std::uint32_t checksum, ByteView value, std::int32_t sign);
    void check_widths(ByteView key, ByteView value) const;

    IbltParams params_;
    std::vector<std::int32_t> counts_;
    Bytes key_sums_;
    std::vector<std::uint32_t> hash_sums_;
    Bytes value_sums_;
};

} // namespace blockrecon::iblt
